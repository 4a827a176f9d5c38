// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace tvcap {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Evaluation outside the finite support of a waveform.
class DomainError : public Error {
public:
  using Error::Error;
};

/// Operation not defined for the given waveform variant(s).
class UnsupportedOperation : public Error {
public:
  using Error::Error;
};

/// Violated caller-side precondition (bad arguments, non-cyclic endpoints, ...).
class PreconditionError : public Error {
public:
  using Error::Error;
};

/// Physical model became invalid during a run (e.g. capacitance driven to zero).
class ModelError : public Error {
public:
  ModelError(const std::string& what, double when) : Error(what), time_(when) {}
  double time() const noexcept { return time_; }

private:
  double time_;
};

}  // namespace tvcap
