// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "tvcap/errors.hpp"
#include "tvcap/waveform.hpp"

namespace tvcap {

/// Config file problem, carrying the offending line number (0 = file level).
class ConfigError : public Error {
public:
  ConfigError(const std::string& what, int line)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const noexcept { return line_; }

private:
  int line_;
};

enum class ModelKind { one_port, two_port, mechanical, inductor_dual, paradox };

/// Parsed scenario file. Flat key-value text, `#`/`;` comments, optional
/// `[section]` headers (ignored). Keys: kind, C.kind, C.params, I.kind,
/// I.params, U.kind, U.params, Q0, C0, V0, t_end, dt, out, plus k (paradox)
/// and J, Theta0, P0 (mechanical, where U.* carries the torque).
struct ScenarioConfig {
  ModelKind kind = ModelKind::one_port;
  std::optional<Waveform> capacitance;  // C.* (profile, C(Theta), or L for the dual)
  std::optional<Waveform> current;      // I.* (applied voltage for the dual)
  std::optional<Waveform> modulation;   // U.* (torque for the mechanical kind)
  std::optional<double> initial_charge;       // Q0
  std::optional<double> initial_capacitance;  // C0
  std::optional<double> initial_voltage;      // V0
  std::optional<double> t_end;
  std::optional<double> dt;
  std::optional<double> factor;            // k
  std::optional<double> inertia;           // J
  std::optional<double> initial_angle;     // Theta0
  std::optional<double> initial_momentum;  // P0
  std::string out;
};

namespace detail {

inline std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline double parse_double(const std::string& s, int line) {
  const char* begin = s.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0')
    throw ConfigError("not a number: '" + s + "'", line);
  return v;
}

inline std::vector<double> parse_numbers(const std::string& s, int line) {
  std::string cleaned = s;
  for (char& c : cleaned)
    if (c == ',') c = ' ';
  std::istringstream in(cleaned);
  std::vector<double> out;
  std::string token;
  while (in >> token) out.push_back(parse_double(token, line));
  return out;
}

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace detail

/// Builds a waveform from its config representation: a kind name plus a flat
/// number list. Layouts:
///   constant:         value
///   polynomial:       c0 c1 c2 ...            (ascending powers)
///   fourier:          w0 a0 a1 b1 a2 b2 ...   (cos/sin pairs per harmonic)
///   piecewise_linear: t0 v0 t1 v1 ...
///   sampled:          t0 dt v0 v1 ...
inline Waveform parse_waveform(const std::string& kind, const std::string& params,
                               int line = 0) {
  const std::vector<double> p = detail::parse_numbers(params, line);
  try {
    if (kind == "constant") {
      if (p.size() != 1) throw PreconditionError("constant takes exactly one value");
      return Waveform::constant(p[0]);
    }
    if (kind == "polynomial") {
      if (p.empty()) throw PreconditionError("polynomial needs coefficients");
      return Waveform::polynomial(p);
    }
    if (kind == "fourier") {
      if (p.size() < 2 || p.size() % 2 != 0)
        throw PreconditionError("fourier needs w0, a0 and full (a_k, b_k) pairs");
      std::vector<double> cosine, sine;
      for (std::size_t i = 2; i < p.size(); i += 2) {
        cosine.push_back(p[i]);
        sine.push_back(p[i + 1]);
      }
      return Waveform::fourier(p[0], p[1], std::move(cosine), std::move(sine));
    }
    if (kind == "piecewise_linear") {
      if (p.size() < 4 || p.size() % 2 != 0)
        throw PreconditionError("piecewise_linear needs (t, value) pairs");
      std::vector<std::pair<double, double>> pts;
      for (std::size_t i = 0; i < p.size(); i += 2) pts.emplace_back(p[i], p[i + 1]);
      return Waveform::piecewise_linear(std::move(pts));
    }
    if (kind == "sampled") {
      if (p.size() < 4) throw PreconditionError("sampled needs t0, dt and >= 2 values");
      return Waveform::sampled(p[0], p[1], {p.begin() + 2, p.end()});
    }
  } catch (const PreconditionError& e) {
    throw ConfigError(e.what(), line);
  }
  throw ConfigError("unknown waveform kind '" + kind + "'", line);
}

/// Inverse of parse_waveform: (kind, params) strings that re-parse to a
/// bit-identical waveform.
inline std::pair<std::string, std::string> waveform_spec(const Waveform& w) {
  using detail::format_double;
  std::string kind, params;
  auto join = [&params](double v) {
    if (!params.empty()) params += ' ';
    params += format_double(v);
  };
  if (const auto* c = w.as<Constant>()) {
    kind = "constant";
    join(c->value);
  } else if (const auto* p = w.as<Polynomial>()) {
    kind = "polynomial";
    for (double v : p->coeffs) join(v);
  } else if (const auto* f = w.as<Fourier>()) {
    kind = "fourier";
    join(f->base_frequency);
    join(f->offset);
    const std::size_t kmax = std::max(f->cosine.size(), f->sine.size());
    for (std::size_t k = 0; k < kmax; ++k) {
      join(k < f->cosine.size() ? f->cosine[k] : 0.0);
      join(k < f->sine.size() ? f->sine[k] : 0.0);
    }
  } else if (const auto* p = w.as<PiecewiseLinear>()) {
    kind = "piecewise_linear";
    for (std::size_t i = 0; i < p->times.size(); ++i) {
      join(p->times[i]);
      join(p->values[i]);
    }
  } else if (const auto* s = w.as<Sampled>()) {
    kind = "sampled";
    join(s->start);
    join(s->step);
    for (double v : s->values) join(v);
  } else {
    throw UnsupportedOperation("waveform_spec: variant has no config representation");
  }
  return {kind, params};
}

inline ScenarioConfig parse_config(std::istream& in) {
  std::map<std::string, std::pair<std::string, int>> entries;  // key -> (value, line)
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = raw;
    if (const auto pos = s.find_first_of("#;"); pos != std::string::npos)
      s.erase(pos);
    s = detail::trim(s);
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') throw ConfigError("malformed section header", line);
      continue;  // sections are organizational only
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ConfigError("expected key = value", line);
    const std::string key = detail::trim(s.substr(0, eq));
    const std::string value = detail::trim(s.substr(eq + 1));
    if (key.empty()) throw ConfigError("empty key", line);
    if (!entries.emplace(key, std::make_pair(value, line)).second)
      throw ConfigError("duplicate key '" + key + "'", line);
  }

  static const std::vector<std::string> known = {
      "kind", "C.kind", "C.params", "I.kind", "I.params", "U.kind", "U.params",
      "Q0",   "C0",     "V0",       "t_end",  "dt",       "out",    "k",
      "J",    "Theta0", "P0"};
  for (const auto& [key, value] : entries) {
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw ConfigError("unknown key '" + key + "'", value.second);
  }

  auto get = [&entries](const std::string& key) -> const std::pair<std::string, int>* {
    const auto it = entries.find(key);
    return it == entries.end() ? nullptr : &it->second;
  };
  auto get_number = [&get](const std::string& key) -> std::optional<double> {
    const auto* e = get(key);
    if (e == nullptr) return std::nullopt;
    return detail::parse_double(e->first, e->second);
  };
  auto get_waveform = [&get](const std::string& prefix) -> std::optional<Waveform> {
    const auto* kind = get(prefix + ".kind");
    const auto* params = get(prefix + ".params");
    if (kind == nullptr && params == nullptr) return std::nullopt;
    if (kind == nullptr || params == nullptr)
      throw ConfigError(prefix + ".kind and " + prefix + ".params must appear together",
                        kind != nullptr ? kind->second : params->second);
    return parse_waveform(kind->first, params->first, params->second);
  };

  const auto* kind_entry = get("kind");
  if (kind_entry == nullptr) throw ConfigError("missing required key 'kind'", 0);

  ScenarioConfig config;
  const std::string& kind = kind_entry->first;
  if (kind == "oneport") config.kind = ModelKind::one_port;
  else if (kind == "twoport") config.kind = ModelKind::two_port;
  else if (kind == "mechanical") config.kind = ModelKind::mechanical;
  else if (kind == "inductor-dual") config.kind = ModelKind::inductor_dual;
  else if (kind == "paradox") config.kind = ModelKind::paradox;
  else throw ConfigError("unknown kind '" + kind + "'", kind_entry->second);

  config.capacitance = get_waveform("C");
  config.current = get_waveform("I");
  config.modulation = get_waveform("U");
  config.initial_charge = get_number("Q0");
  config.initial_capacitance = get_number("C0");
  config.initial_voltage = get_number("V0");
  config.t_end = get_number("t_end");
  config.dt = get_number("dt");
  config.factor = get_number("k");
  config.inertia = get_number("J");
  config.initial_angle = get_number("Theta0");
  config.initial_momentum = get_number("P0");
  if (const auto* out = get("out")) config.out = out->first;

  // kind-specific required fields
  auto require = [&](bool present, const char* what) {
    if (!present)
      throw ConfigError(std::string("missing required key for kind '") + kind + "': " + what,
                        0);
  };
  const bool timed = config.kind != ModelKind::paradox;
  if (timed) {
    require(config.t_end.has_value(), "t_end");
    require(config.dt.has_value(), "dt");
    if (!(config.dt.value() > 0.0)) throw ConfigError("dt must be > 0", 0);
  }
  switch (config.kind) {
    case ModelKind::one_port:
    case ModelKind::inductor_dual:
      require(config.capacitance.has_value(), "C.kind/C.params");
      require(config.current.has_value(), "I.kind/I.params");
      break;
    case ModelKind::two_port:
      require(config.initial_charge.has_value(), "Q0");
      require(config.initial_capacitance.has_value(), "C0");
      require(config.current.has_value(), "I.kind/I.params");
      require(config.modulation.has_value(), "U.kind/U.params");
      break;
    case ModelKind::mechanical:
      require(config.capacitance.has_value(), "C.kind/C.params (capacitance vs angle)");
      require(config.inertia.has_value(), "J");
      break;
    case ModelKind::paradox:
      require(config.initial_charge.has_value(), "Q0");
      require(config.initial_capacitance.has_value(), "C0");
      require(config.factor.has_value(), "k");
      break;
  }
  return config;
}

}  // namespace tvcap
