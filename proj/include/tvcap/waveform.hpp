// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>
#include <variant>
#include <vector>

#include "tvcap/errors.hpp"
#include "tvcap/quadrature.hpp"

namespace tvcap {

struct Constant {
  double value = 0.0;
};

/// Coefficients in ascending powers of t.
struct Polynomial {
  std::vector<double> coeffs;
};

/// a0 + sum_k a_k cos(k w0 t) + b_k sin(k w0 t), k = 1..N.
struct Fourier {
  double base_frequency = 1.0;  // w0 [rad/s]
  double offset = 0.0;          // a0
  std::vector<double> cosine;   // a_k
  std::vector<double> sine;     // b_k
};

/// Linear interpolation between strictly increasing breakpoints.
struct PiecewiseLinear {
  std::vector<double> times;
  std::vector<double> values;
};

/// values[i] on [times[i], times[i+1]); times has one more entry than values.
/// Produced as the exact derivative of a PiecewiseLinear waveform.
struct PiecewiseConstant {
  std::vector<double> times;
  std::vector<double> values;
};

/// Uniform samples starting at `start` with spacing `step`; linear
/// interpolation between samples.
struct Sampled {
  double start = 0.0;
  double step = 1.0;
  std::vector<double> values;
};

/// Immutable scalar signal of time. Closed-form variants (constant,
/// polynomial, fourier) evaluate, differentiate and integrate exactly;
/// piecewise and sampled variants have finite support.
class Waveform {
public:
  using Node = std::variant<Constant, Polynomial, Fourier, PiecewiseLinear,
                            PiecewiseConstant, Sampled>;

  Waveform() : node_(Constant{}) {}

  explicit Waveform(Node node) : node_(std::move(node)) { validate(); }

  static Waveform constant(double c) { return Waveform(Constant{c}); }

  static Waveform polynomial(std::vector<double> coeffs) {
    return Waveform(Polynomial{std::move(coeffs)});
  }

  static Waveform fourier(double base_frequency, double offset,
                          std::vector<double> cosine = {},
                          std::vector<double> sine = {}) {
    return Waveform(Fourier{base_frequency, offset, std::move(cosine), std::move(sine)});
  }

  static Waveform piecewise_linear(std::vector<std::pair<double, double>> points) {
    PiecewiseLinear p;
    p.times.reserve(points.size());
    p.values.reserve(points.size());
    for (const auto& [t, v] : points) {
      p.times.push_back(t);
      p.values.push_back(v);
    }
    return Waveform(std::move(p));
  }

  static Waveform sampled(double start, double step, std::vector<double> values) {
    return Waveform(Sampled{start, step, std::move(values)});
  }

  const Node& node() const noexcept { return node_; }

  template <typename T>
  const T* as() const noexcept {
    return std::get_if<T>(&node_);
  }

  bool closed_form() const noexcept {
    return std::holds_alternative<Constant>(node_) ||
           std::holds_alternative<Polynomial>(node_) ||
           std::holds_alternative<Fourier>(node_);
  }

  double value(double t) const {
    return std::visit([t](const auto& n) { return eval_node(n, t); }, node_);
  }

  double operator()(double t) const { return value(t); }

  /// Exact analytic derivative. Sampled data has no derivative here; callers
  /// that want finite differences must take them explicitly.
  Waveform derivative() const {
    return std::visit([](const auto& n) { return derivative_node(n); }, node_);
  }

  /// Definite integral over [t1, t2]: exact antiderivative difference for
  /// closed forms and piecewise variants, composite Simpson on the sample
  /// grid for sampled data.
  double integral(double t1, double t2) const {
    if (t2 < t1) throw PreconditionError("Waveform::integral: t2 < t1");
    return std::visit([t1, t2](const auto& n) { return integral_node(n, t1, t2); }, node_);
  }

  Waveform scaled(double factor) const {
    Node n = node_;
    std::visit([factor](auto& node) { scale_node(node, factor); }, n);
    return Waveform(std::move(n));
  }

  /// Adds a constant offset; exact for every variant.
  Waveform shifted(double offset) const {
    Node n = node_;
    std::visit([offset](auto& node) { shift_node(node, offset); }, n);
    return Waveform(std::move(n));
  }

  friend Waveform operator+(const Waveform& a, const Waveform& b);
  friend Waveform operator-(const Waveform& a, const Waveform& b);
  friend Waveform operator*(const Waveform& a, const Waveform& b);

private:
  Node node_;

  void validate() const {
    if (const auto* p = std::get_if<PiecewiseLinear>(&node_)) {
      if (p->times.size() != p->values.size() || p->times.size() < 2)
        throw PreconditionError("piecewise_linear: need >= 2 (t, value) breakpoints");
      for (std::size_t i = 1; i < p->times.size(); ++i)
        if (!(p->times[i] > p->times[i - 1]))
          throw PreconditionError("piecewise_linear: breakpoints must be strictly increasing");
    } else if (const auto* p = std::get_if<PiecewiseConstant>(&node_)) {
      if (p->times.size() != p->values.size() + 1 || p->values.empty())
        throw PreconditionError("piecewise_constant: need n+1 times for n values");
      for (std::size_t i = 1; i < p->times.size(); ++i)
        if (!(p->times[i] > p->times[i - 1]))
          throw PreconditionError("piecewise_constant: breakpoints must be strictly increasing");
    } else if (const auto* s = std::get_if<Sampled>(&node_)) {
      if (!(s->step > 0.0)) throw PreconditionError("sampled: step must be > 0");
      if (s->values.size() < 2) throw PreconditionError("sampled: need >= 2 samples");
    } else if (const auto* f = std::get_if<Fourier>(&node_)) {
      if (!(f->base_frequency > 0.0))
        throw PreconditionError("fourier: base frequency must be > 0");
    }
  }

  // --- evaluation ---------------------------------------------------------

  static double eval_node(const Constant& n, double) { return n.value; }

  static double eval_node(const Polynomial& n, double t) {
    double v = 0.0;
    for (std::size_t i = n.coeffs.size(); i-- > 0;) v = v * t + n.coeffs[i];
    return v;
  }

  static double eval_node(const Fourier& n, double t) {
    double v = n.offset;
    const std::size_t kmax = std::max(n.cosine.size(), n.sine.size());
    for (std::size_t k = 1; k <= kmax; ++k) {
      const double p = static_cast<double>(k) * n.base_frequency * t;
      if (k <= n.cosine.size()) v += n.cosine[k - 1] * std::cos(p);
      if (k <= n.sine.size()) v += n.sine[k - 1] * std::sin(p);
    }
    return v;
  }

  static double eval_node(const PiecewiseLinear& n, double t) {
    const double lo = n.times.front();
    const double hi = n.times.back();
    const double eps = 1e-12 * std::max(1.0, hi - lo);
    if (t < lo - eps || t > hi + eps)
      throw DomainError("piecewise_linear: t outside breakpoint range");
    t = std::clamp(t, lo, hi);
    const auto it = std::upper_bound(n.times.begin(), n.times.end(), t);
    const std::size_t i = std::min<std::size_t>(
        n.times.size() - 2, static_cast<std::size_t>(std::max<std::ptrdiff_t>(
                                0, it - n.times.begin() - 1)));
    const double w = (t - n.times[i]) / (n.times[i + 1] - n.times[i]);
    return n.values[i] + w * (n.values[i + 1] - n.values[i]);
  }

  static double eval_node(const PiecewiseConstant& n, double t) {
    const double lo = n.times.front();
    const double hi = n.times.back();
    const double eps = 1e-12 * std::max(1.0, hi - lo);
    if (t < lo - eps || t > hi + eps)
      throw DomainError("piecewise_constant: t outside breakpoint range");
    t = std::clamp(t, lo, hi);
    const auto it = std::upper_bound(n.times.begin(), n.times.end(), t);
    const std::size_t i = std::min<std::size_t>(
        n.values.size() - 1, static_cast<std::size_t>(std::max<std::ptrdiff_t>(
                                 0, it - n.times.begin() - 1)));
    return n.values[i];
  }

  static double eval_node(const Sampled& n, double t) {
    const double hi = n.start + n.step * static_cast<double>(n.values.size() - 1);
    const double eps = 1e-9 * n.step;
    if (t < n.start - eps || t > hi + eps)
      throw DomainError("sampled: t outside sample range");
    const double x = std::clamp((t - n.start) / n.step, 0.0,
                                static_cast<double>(n.values.size() - 1));
    const std::size_t i =
        std::min<std::size_t>(n.values.size() - 2, static_cast<std::size_t>(x));
    const double w = x - static_cast<double>(i);
    return n.values[i] + w * (n.values[i + 1] - n.values[i]);
  }

  // --- derivative ---------------------------------------------------------

  static Waveform derivative_node(const Constant&) { return Waveform::constant(0.0); }

  static Waveform derivative_node(const Polynomial& n) {
    if (n.coeffs.size() <= 1) return Waveform::constant(0.0);
    std::vector<double> d(n.coeffs.size() - 1);
    for (std::size_t i = 1; i < n.coeffs.size(); ++i)
      d[i - 1] = n.coeffs[i] * static_cast<double>(i);
    return Waveform::polynomial(std::move(d));
  }

  static Waveform derivative_node(const Fourier& n) {
    const std::size_t kmax = std::max(n.cosine.size(), n.sine.size());
    std::vector<double> dcos(kmax, 0.0), dsin(kmax, 0.0);
    for (std::size_t k = 1; k <= kmax; ++k) {
      const double kw = static_cast<double>(k) * n.base_frequency;
      if (k <= n.sine.size()) dcos[k - 1] += kw * n.sine[k - 1];
      if (k <= n.cosine.size()) dsin[k - 1] -= kw * n.cosine[k - 1];
    }
    return Waveform::fourier(n.base_frequency, 0.0, std::move(dcos), std::move(dsin));
  }

  static Waveform derivative_node(const PiecewiseLinear& n) {
    PiecewiseConstant d;
    d.times = n.times;
    d.values.resize(n.values.size() - 1);
    for (std::size_t i = 0; i + 1 < n.values.size(); ++i)
      d.values[i] = (n.values[i + 1] - n.values[i]) / (n.times[i + 1] - n.times[i]);
    return Waveform(std::move(d));
  }

  static Waveform derivative_node(const PiecewiseConstant&) {
    return Waveform::constant(0.0);  // zero almost everywhere
  }

  static Waveform derivative_node(const Sampled&) {
    throw UnsupportedOperation(
        "derivative of sampled data: use finite differences explicitly");
  }

  // --- definite integral --------------------------------------------------

  static double integral_node(const Constant& n, double t1, double t2) {
    return n.value * (t2 - t1);
  }

  static double integral_node(const Polynomial& n, double t1, double t2) {
    auto antider = [&n](double t) {
      double v = 0.0;
      for (std::size_t i = n.coeffs.size(); i-- > 0;)
        v = v * t + n.coeffs[i] / static_cast<double>(i + 1);
      return v * t;
    };
    return antider(t2) - antider(t1);
  }

  static double integral_node(const Fourier& n, double t1, double t2) {
    auto antider = [&n](double t) {
      double v = n.offset * t;
      const std::size_t kmax = std::max(n.cosine.size(), n.sine.size());
      for (std::size_t k = 1; k <= kmax; ++k) {
        const double kw = static_cast<double>(k) * n.base_frequency;
        if (k <= n.cosine.size()) v += n.cosine[k - 1] * std::sin(kw * t) / kw;
        if (k <= n.sine.size()) v -= n.sine[k - 1] * std::cos(kw * t) / kw;
      }
      return v;
    };
    return antider(t2) - antider(t1);
  }

  static double integral_node(const PiecewiseLinear& n, double t1, double t2) {
    check_range(n.times.front(), n.times.back(), t1, t2, "piecewise_linear");
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < n.times.size(); ++i) {
      const double lo = std::max(t1, n.times[i]);
      const double hi = std::min(t2, n.times[i + 1]);
      if (hi <= lo) continue;
      sum += 0.5 * (eval_node(n, lo) + eval_node(n, hi)) * (hi - lo);
    }
    return sum;
  }

  static double integral_node(const PiecewiseConstant& n, double t1, double t2) {
    check_range(n.times.front(), n.times.back(), t1, t2, "piecewise_constant");
    double sum = 0.0;
    for (std::size_t i = 0; i < n.values.size(); ++i) {
      const double lo = std::max(t1, n.times[i]);
      const double hi = std::min(t2, n.times[i + 1]);
      if (hi <= lo) continue;
      sum += n.values[i] * (hi - lo);
    }
    return sum;
  }

  static double integral_node(const Sampled& n, double t1, double t2) {
    const double hi = n.start + n.step * static_cast<double>(n.values.size() - 1);
    check_range(n.start, hi, t1, t2, "sampled");
    const double eps = 1e-9 * n.step;
    auto index_above = [&](double t) {
      return static_cast<std::size_t>(std::ceil((t - n.start) / n.step - 1e-9));
    };
    auto index_below = [&](double t) {
      return static_cast<std::size_t>(std::floor((t - n.start) / n.step + 1e-9));
    };
    const std::size_t i1 = std::min(index_above(t1), n.values.size() - 1);
    const std::size_t i2 = std::min(index_below(t2), n.values.size() - 1);
    if (i2 < i1 || (i2 == i1 && t2 - t1 < n.step)) {
      // both endpoints inside one cell: trapezoid on the interpolant
      return 0.5 * (eval_node(n, t1) + eval_node(n, t2)) * (t2 - t1);
    }
    double sum = simpson_samples(
        std::span<const double>(n.values.data() + i1, i2 - i1 + 1), n.step);
    const double g1 = n.start + n.step * static_cast<double>(i1);
    const double g2 = n.start + n.step * static_cast<double>(i2);
    if (g1 - t1 > eps) sum += 0.5 * (eval_node(n, t1) + n.values[i1]) * (g1 - t1);
    if (t2 - g2 > eps) sum += 0.5 * (n.values[i2] + eval_node(n, t2)) * (t2 - g2);
    return sum;
  }

  static void check_range(double lo, double hi, double t1, double t2, const char* what) {
    const double eps = 1e-9 * std::max(1.0, hi - lo);
    if (t1 < lo - eps || t2 > hi + eps)
      throw DomainError(std::string(what) + ": integration bounds outside support");
  }

  // --- in-place scale / shift --------------------------------------------

  static void scale_node(Constant& n, double f) { n.value *= f; }
  static void scale_node(Polynomial& n, double f) {
    for (double& c : n.coeffs) c *= f;
  }
  static void scale_node(Fourier& n, double f) {
    n.offset *= f;
    for (double& c : n.cosine) c *= f;
    for (double& c : n.sine) c *= f;
  }
  static void scale_node(PiecewiseLinear& n, double f) {
    for (double& v : n.values) v *= f;
  }
  static void scale_node(PiecewiseConstant& n, double f) {
    for (double& v : n.values) v *= f;
  }
  static void scale_node(Sampled& n, double f) {
    for (double& v : n.values) v *= f;
  }

  static void shift_node(Constant& n, double c) { n.value += c; }
  static void shift_node(Polynomial& n, double c) {
    if (n.coeffs.empty()) n.coeffs.push_back(0.0);
    n.coeffs[0] += c;
  }
  static void shift_node(Fourier& n, double c) { n.offset += c; }
  static void shift_node(PiecewiseLinear& n, double c) {
    for (double& v : n.values) v += c;
  }
  static void shift_node(PiecewiseConstant& n, double c) {
    for (double& v : n.values) v += c;
  }
  static void shift_node(Sampled& n, double c) {
    for (double& v : n.values) v += c;
  }

  friend bool same_frequency(const Fourier& a, const Fourier& b);
};

inline bool same_frequency(const Fourier& a, const Fourier& b) {
  return std::abs(a.base_frequency - b.base_frequency) <=
         1e-12 * std::max(std::abs(a.base_frequency), std::abs(b.base_frequency));
}

inline Waveform operator+(const Waveform& a, const Waveform& b) {
  if (const auto* c = a.as<Constant>()) return b.shifted(c->value);
  if (const auto* c = b.as<Constant>()) return a.shifted(c->value);

  if (const auto* pa = a.as<Polynomial>()) {
    if (const auto* pb = b.as<Polynomial>()) {
      std::vector<double> sum(std::max(pa->coeffs.size(), pb->coeffs.size()), 0.0);
      for (std::size_t i = 0; i < pa->coeffs.size(); ++i) sum[i] += pa->coeffs[i];
      for (std::size_t i = 0; i < pb->coeffs.size(); ++i) sum[i] += pb->coeffs[i];
      return Waveform::polynomial(std::move(sum));
    }
  }
  if (const auto* fa = a.as<Fourier>()) {
    if (const auto* fb = b.as<Fourier>()) {
      if (!same_frequency(*fa, *fb))
        throw UnsupportedOperation("fourier sum: base frequencies differ");
      Fourier sum = *fa;
      sum.offset += fb->offset;
      sum.cosine.resize(std::max(fa->cosine.size(), fb->cosine.size()), 0.0);
      sum.sine.resize(std::max(fa->sine.size(), fb->sine.size()), 0.0);
      for (std::size_t i = 0; i < fb->cosine.size(); ++i) sum.cosine[i] += fb->cosine[i];
      for (std::size_t i = 0; i < fb->sine.size(); ++i) sum.sine[i] += fb->sine[i];
      return Waveform(std::move(sum));
    }
  }
  if (const auto* sa = a.as<Sampled>()) {
    if (const auto* sb = b.as<Sampled>()) {
      if (sa->values.size() == sb->values.size() &&
          std::abs(sa->start - sb->start) <= 1e-9 * sa->step &&
          std::abs(sa->step - sb->step) <= 1e-12 * sa->step) {
        Sampled sum = *sa;
        for (std::size_t i = 0; i < sum.values.size(); ++i)
          sum.values[i] += sb->values[i];
        return Waveform(std::move(sum));
      }
    }
  }
  throw UnsupportedOperation("waveform sum: incompatible variants");
}

inline Waveform operator-(const Waveform& a, const Waveform& b) {
  return a + b.scaled(-1.0);
}

namespace detail {

// Accumulates c*cos(k w0 t) / c*sin(k w0 t) terms into a harmonic table.
struct HarmonicTable {
  double offset = 0.0;
  std::vector<double> cosine, sine;

  void ensure(std::size_t k) {
    if (k > cosine.size()) {
      cosine.resize(k, 0.0);
      sine.resize(k, 0.0);
    }
  }
  void add_cos(long k, double c) {
    if (k < 0) k = -k;  // cos is even
    if (k == 0) {
      offset += c;
    } else {
      ensure(static_cast<std::size_t>(k));
      cosine[static_cast<std::size_t>(k) - 1] += c;
    }
  }
  void add_sin(long k, double c) {
    if (k < 0) {  // sin is odd
      k = -k;
      c = -c;
    }
    if (k == 0) return;
    ensure(static_cast<std::size_t>(k));
    sine[static_cast<std::size_t>(k) - 1] += c;
  }
};

}  // namespace detail

/// Closed-form product where the result is representable: constant scaling,
/// polynomial x polynomial, and fourier x fourier at a common base frequency
/// (via the product-to-sum identities).
inline Waveform operator*(const Waveform& a, const Waveform& b) {
  if (const auto* c = a.as<Constant>()) return b.scaled(c->value);
  if (const auto* c = b.as<Constant>()) return a.scaled(c->value);

  if (const auto* pa = a.as<Polynomial>()) {
    if (const auto* pb = b.as<Polynomial>()) {
      std::vector<double> prod(pa->coeffs.size() + pb->coeffs.size() - 1, 0.0);
      for (std::size_t i = 0; i < pa->coeffs.size(); ++i)
        for (std::size_t j = 0; j < pb->coeffs.size(); ++j)
          prod[i + j] += pa->coeffs[i] * pb->coeffs[j];
      return Waveform::polynomial(std::move(prod));
    }
  }
  if (const auto* fa = a.as<Fourier>()) {
    if (const auto* fb = b.as<Fourier>()) {
      if (!same_frequency(*fa, *fb))
        throw UnsupportedOperation("fourier product: base frequencies differ");
      auto coeff = [](const Fourier& f, std::size_t k, bool sine) {
        const auto& v = sine ? f.sine : f.cosine;
        if (k == 0) return sine ? 0.0 : f.offset;
        return k <= v.size() ? v[k - 1] : 0.0;
      };
      const long na = static_cast<long>(std::max(fa->cosine.size(), fa->sine.size()));
      const long nb = static_cast<long>(std::max(fb->cosine.size(), fb->sine.size()));
      detail::HarmonicTable out;
      for (long i = 0; i <= na; ++i) {
        const double ai = coeff(*fa, static_cast<std::size_t>(i), false);
        const double bi = coeff(*fa, static_cast<std::size_t>(i), true);
        for (long j = 0; j <= nb; ++j) {
          const double aj = coeff(*fb, static_cast<std::size_t>(j), false);
          const double bj = coeff(*fb, static_cast<std::size_t>(j), true);
          // cos(i)cos(j) = [cos(i-j) + cos(i+j)]/2
          if (ai != 0.0 && aj != 0.0) {
            out.add_cos(i - j, 0.5 * ai * aj);
            out.add_cos(i + j, 0.5 * ai * aj);
          }
          // sin(i)sin(j) = [cos(i-j) - cos(i+j)]/2
          if (bi != 0.0 && bj != 0.0) {
            out.add_cos(i - j, 0.5 * bi * bj);
            out.add_cos(i + j, -0.5 * bi * bj);
          }
          // sin(i)cos(j) = [sin(i+j) + sin(i-j)]/2
          if (bi != 0.0 && aj != 0.0) {
            out.add_sin(i + j, 0.5 * bi * aj);
            out.add_sin(i - j, 0.5 * bi * aj);
          }
          // cos(i)sin(j) = [sin(i+j) - sin(i-j)]/2
          if (ai != 0.0 && bj != 0.0) {
            out.add_sin(i + j, 0.5 * ai * bj);
            out.add_sin(i - j, -0.5 * ai * bj);
          }
        }
      }
      return Waveform::fourier(fa->base_frequency, out.offset,
                               std::move(out.cosine), std::move(out.sine));
    }
  }
  throw UnsupportedOperation("waveform product: not representable in closed form");
}

}  // namespace tvcap
