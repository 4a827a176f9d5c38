// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "tvcap/capacitance.hpp"
#include "tvcap/config.hpp"
#include "tvcap/energy.hpp"
#include "tvcap/errors.hpp"
#include "tvcap/extract.hpp"
#include "tvcap/models.hpp"
#include "tvcap/oneport.hpp"
#include "tvcap/paradox.hpp"
#include "tvcap/quadrature.hpp"
#include "tvcap/trajectory.hpp"
#include "tvcap/twoport.hpp"
#include "tvcap/waveform.hpp"
