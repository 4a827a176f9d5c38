// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "tvcap/errors.hpp"

namespace tvcap {

/// Composite Simpson rule over uniformly spaced samples.
///
/// An odd interval count is closed with a Simpson 3/8 tail so the rule
/// stays fourth-order accurate for any sample count >= 3.
inline double simpson_samples(std::span<const double> y, double h) {
  const std::size_t n = y.empty() ? 0 : y.size() - 1;  // interval count
  if (n == 0) return 0.0;
  if (n == 1) return 0.5 * h * (y[0] + y[1]);

  double sum = 0.0;
  std::size_t m = n;  // intervals covered by the 1/3 rule
  if (n % 2 != 0) {
    m = n - 3;
    sum += 3.0 * h / 8.0 * (y[m] + 3.0 * y[m + 1] + 3.0 * y[m + 2] + y[m + 3]);
  }
  for (std::size_t i = 0; i + 2 <= m; i += 2) {
    sum += h / 3.0 * (y[i] + 4.0 * y[i + 1] + y[i + 2]);
  }
  return sum;
}

/// Composite Simpson rule for a callable integrand; `intervals` is rounded
/// up to the next even count.
template <typename F>
double simpson(F&& f, double t1, double t2, std::size_t intervals) {
  if (t2 < t1) throw PreconditionError("simpson: t2 < t1");
  if (t2 == t1) return 0.0;
  std::size_t n = intervals < 2 ? 2 : intervals;
  if (n % 2 != 0) ++n;
  const double h = (t2 - t1) / static_cast<double>(n);
  double sum = f(t1) + f(t2);
  for (std::size_t i = 1; i < n; ++i) {
    sum += (i % 2 != 0 ? 4.0 : 2.0) * f(t1 + static_cast<double>(i) * h);
  }
  return sum * h / 3.0;
}

/// Fourth-order cumulative integral of uniform samples.
///
/// Even prefixes use the composite Simpson recurrence; odd prefixes close
/// the half-open interval with the cubic-interpolant weights
/// (-1, 13, 13, -1)/24 (one-sided variants at the ends). Result has the
/// same length as `y`, with c[0] = 0.
inline std::vector<double> cumulative_integral(std::span<const double> y, double h) {
  const std::size_t count = y.size();
  std::vector<double> c(count, 0.0);
  if (count < 2) return c;
  const std::size_t n = count - 1;

  if (n == 1) {
    c[1] = 0.5 * h * (y[0] + y[1]);
    return c;
  }

  // c[1]: integrate [t0, t1] from a cubic (quadratic when only 3 samples).
  if (n >= 3) {
    c[1] = h / 24.0 * (9.0 * y[0] + 19.0 * y[1] - 5.0 * y[2] + y[3]);
  } else {
    c[1] = h / 12.0 * (5.0 * y[0] + 8.0 * y[1] - y[2]);
  }

  for (std::size_t k = 2; k <= n; ++k) {
    if (k % 2 == 0) {
      c[k] = c[k - 2] + h / 3.0 * (y[k - 2] + 4.0 * y[k - 1] + y[k]);
    } else if (k + 1 <= n) {
      c[k] = c[k - 1] + h / 24.0 * (-y[k - 2] + 13.0 * y[k - 1] + 13.0 * y[k] - y[k + 1]);
    } else {
      c[k] = c[k - 1] + h / 24.0 * (y[k - 3] - 5.0 * y[k - 2] + 19.0 * y[k - 1] + 9.0 * y[k]);
    }
  }
  return c;
}

}  // namespace tvcap
