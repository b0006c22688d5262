#include "singtraj/trajectory/trajectory.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "singtraj/polycore/errors.hpp"

namespace singtraj {

bool TrigPoly::has_trig() const {
  for (const auto& h : harmonics) {
    if (h.cos_coeff != 0 || h.sin_coeff != 0) return true;
  }
  return false;
}

Interval TrigPoly::evaluate(const Interval& t, unsigned bits) const {
  Interval acc(constant);
  for (const auto& h : harmonics) {
    Interval kt = Interval(Rational(h.k)) * t;
    if (h.cos_coeff != 0) acc += Interval(h.cos_coeff) * cos(kt, bits);
    if (h.sin_coeff != 0) acc += Interval(h.sin_coeff) * sin(kt, bits);
  }
  if (linear != 0) acc += Interval(linear) * t;
  return round_outward(acc, bits);
}

double TrigPoly::evaluate_approx(double t) const {
  double acc = constant.get_d();
  for (const auto& h : harmonics) {
    acc += h.cos_coeff.get_d() * std::cos(h.k * t) + h.sin_coeff.get_d() * std::sin(h.k * t);
  }
  return acc + linear.get_d() * t;
}

DomainBound DomainBound::parse(std::string_view text) {
  std::string s;
  for (char ch : text) {
    if (ch != ' ') s += ch;
  }
  auto pos = s.find("pi");
  if (pos == std::string::npos) return DomainBound{0, parse_rational(s)};
  std::string before = s.substr(0, pos);
  std::string after = s.substr(pos + 2);
  Rational coeff = 1;
  if (before == "-") {
    coeff = -1;
  } else if (!before.empty() && before != "+") {
    if (before.back() != '*') throw std::invalid_argument("bad domain bound '" + std::string(text) + "'");
    coeff = parse_rational(before.substr(0, before.size() - 1));
  }
  if (!after.empty()) {
    if (after.front() != '/') throw std::invalid_argument("bad domain bound '" + std::string(text) + "'");
    Rational den = parse_rational(after.substr(1));
    if (den == 0) throw std::invalid_argument("bad domain bound '" + std::string(text) + "'");
    coeff /= den;
  }
  return DomainBound{coeff, 0};
}

Interval DomainBound::enclosure(unsigned bits) const {
  if (pi_coeff == 0) return Interval(offset);
  return Interval(pi_coeff) * pi_interval(bits) + Interval(offset);
}

double DomainBound::approx() const { return pi_coeff.get_d() * std::numbers::pi + offset.get_d(); }

std::string DomainBound::to_string() const {
  if (pi_coeff == 0) return singtraj::to_string(offset);
  std::string out;
  if (pi_coeff == -1) {
    out = "-pi";
  } else if (pi_coeff == 1) {
    out = "pi";
  } else {
    out = singtraj::to_string(pi_coeff) + "*pi";
  }
  if (offset != 0) out += (offset > 0 ? "+" : "") + singtraj::to_string(offset);
  return out;
}

Trajectory::Trajectory(std::string name, std::vector<TrigPoly> coords, DomainBound lo, DomainBound hi)
    : name_(std::move(name)), coords_(std::move(coords)), lo_(lo), hi_(hi) {
  if (coords_.empty()) throw std::invalid_argument("trajectory has no coordinates");
  if (!(lo_.approx() < hi_.approx())) throw std::invalid_argument("trajectory domain is empty");
  for (const auto& c : coords_) {
    std::set<unsigned> seen;
    for (const auto& h : c.harmonics) {
      if (h.k == 0) throw std::invalid_argument("harmonic index must be positive");
      if (!seen.insert(h.k).second) throw std::invalid_argument("repeated harmonic " + std::to_string(h.k));
    }
  }
}

std::optional<Trajectory> Trajectory::builtin(std::string_view name) {
  const DomainBound minus_pi{-1, 0};
  const DomainBound plus_pi{1, 0};
  auto q = [](long n, long d) { return Rational(n, d); };
  if (name == "heart1") {
    // x = 8/7 sin^3 t = 6/7 sin t - 2/7 sin 3t.
    TrigPoly x{0, {{1, 0, q(6, 7)}, {3, 0, q(-2, 7)}}, 0};
    TrigPoly y{0, {{1, q(13, 14), 0}, {2, q(-5, 14), 0}, {3, q(-1, 10), 0}, {4, q(-1, 14), 0}}, 0};
    TrigPoly z{1, {}, 0};
    return Trajectory("heart1", {x, y, z}, minus_pi, plus_pi);
  }
  if (name == "heart2") {
    // x = 4/5 sin^3 t = 3/5 sin t - 1/5 sin 3t.
    TrigPoly x{0, {{1, 0, q(3, 5)}, {3, 0, q(-1, 5)}}, 0};
    TrigPoly y{0, {{1, q(13, 20), 0}, {2, q(-1, 4), 0}, {3, q(-1, 20), 0}, {4, q(-1, 20), 0}}, 0};
    TrigPoly z{1, {}, 0};
    return Trajectory("heart2", {x, y, z}, minus_pi, plus_pi);
  }
  if (name == "helix") {
    TrigPoly x{0, {{1, 0, 1}}, 0};
    TrigPoly y{0, {{1, 1, 0}}, 0};
    TrigPoly z{0, {}, q(1, 20)};
    return Trajectory("helix", {x, y, z}, DomainBound{0, 0}, DomainBound{0, 20});
  }
  return std::nullopt;
}

namespace {

Rational json_rational(const nlohmann::json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(Integer(v.dump()));
  throw std::invalid_argument("expected a rational as integer or string, got " + v.dump());
}

TrigPoly json_trig(const nlohmann::json& v) {
  if (!v.is_object()) throw std::invalid_argument("coordinate must be an object");
  TrigPoly p;
  if (v.contains("constant")) p.constant = json_rational(v["constant"]);
  if (v.contains("linear")) p.linear = json_rational(v["linear"]);
  if (v.contains("harmonics")) {
    for (const auto& h : v["harmonics"]) {
      if (!h.contains("k") || !h["k"].is_number_unsigned()) throw std::invalid_argument("harmonic needs k");
      Harmonic term{h["k"].get<unsigned>(), 0, 0};
      if (h.contains("cos")) term.cos_coeff = json_rational(h["cos"]);
      if (h.contains("sin")) term.sin_coeff = json_rational(h["sin"]);
      p.harmonics.push_back(term);
    }
  }
  return p;
}

DomainBound json_bound(const nlohmann::json& v) {
  if (v.is_string()) return DomainBound::parse(v.get<std::string>());
  return DomainBound{0, json_rational(v)};
}

}  // namespace

Trajectory Trajectory::from_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("trajectory is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("coords") || !doc["coords"].is_array()) {
    throw std::invalid_argument("trajectory needs a 'coords' array");
  }
  if (!doc.contains("domain") || !doc["domain"].is_array() || doc["domain"].size() != 2) {
    throw std::invalid_argument("trajectory needs a 'domain' pair");
  }
  std::vector<TrigPoly> coords;
  for (const auto& c : doc["coords"]) coords.push_back(json_trig(c));
  return Trajectory(doc.value("name", "trajectory"), std::move(coords), json_bound(doc["domain"][0]),
                    json_bound(doc["domain"][1]));
}

Trajectory Trajectory::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open trajectory file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_json(buf.str());
}

Trajectory Trajectory::resolve(const std::string& name_or_path) {
  if (auto b = builtin(name_or_path)) return *b;
  return load(name_or_path);
}

Trajectory Trajectory::constant(std::string name, const std::vector<Rational>& point) {
  std::vector<TrigPoly> coords;
  for (const auto& v : point) coords.push_back(TrigPoly{v, {}, 0});
  return Trajectory(std::move(name), std::move(coords), DomainBound{-1, 0}, DomainBound{1, 0});
}

bool Trajectory::has_trig() const {
  for (const auto& c : coords_) {
    if (c.has_trig()) return true;
  }
  return false;
}

bool Trajectory::has_linear() const {
  for (const auto& c : coords_) {
    if (c.has_linear()) return true;
  }
  return false;
}

std::vector<Interval> Trajectory::evaluate(const Interval& t, unsigned bits) const {
  std::vector<Interval> out;
  out.reserve(coords_.size());
  for (const auto& c : coords_) out.push_back(c.evaluate(t, bits));
  return out;
}

std::vector<double> Trajectory::evaluate_approx(double t) const {
  std::vector<double> out;
  out.reserve(coords_.size());
  for (const auto& c : coords_) out.push_back(c.evaluate_approx(t));
  return out;
}

Poly cos_multiple(unsigned k, const VarSetPtr& vars) {
  // Chebyshev recurrence T_{n+1} = 2 c T_n - T_{n-1}.
  Poly c = Poly::variable(vars, kCosVar);
  Poly prev = Poly::constant(vars, 1);
  Poly cur = c;
  if (k == 0) return prev;
  for (unsigned n = 1; n < k; ++n) {
    Poly next = c * cur * Rational(2) - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

Poly sin_multiple(unsigned k, const VarSetPtr& vars) {
  if (k == 0) return Poly(vars);
  Poly s = Poly::variable(vars, kSinVar);
  if (k % 2 == 1) {
    // sin kt = (-1)^((k-1)/2) T_k(sin t) for odd k.
    Poly tk = compose(cos_multiple(k, vars), {{std::string(kCosVar), s}}, vars);
    return ((k - 1) / 2) % 2 == 0 ? tk : -tk;
  }
  // sin kt = sin t * U_{k-1}(cos t), U_{n+1} = 2 c U_n - U_{n-1}.
  Poly c = Poly::variable(vars, kCosVar);
  Poly prev = Poly::constant(vars, 1);
  Poly cur = c * Rational(2);
  for (unsigned n = 1; n < k - 1; ++n) {
    Poly next = c * cur * Rational(2) - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return s * cur;
}

Poly coordinate_poly(const TrigPoly& coord, const VarSetPtr& vars) {
  Poly out = Poly::constant(vars, coord.constant);
  for (const auto& h : coord.harmonics) {
    if (h.cos_coeff != 0) out += cos_multiple(h.k, vars) * h.cos_coeff;
    if (h.sin_coeff != 0) out += sin_multiple(h.k, vars) * h.sin_coeff;
  }
  if (coord.linear != 0) out += Poly::variable(vars, kTimeVar) * coord.linear;
  return out;
}

VarSetPtr trajectory_vars(const Trajectory& tr) {
  if (tr.has_linear()) {
    return VarSet::make({std::string(kSinVar), std::string(kCosVar), std::string(kTimeVar)}, {2, 1});
  }
  return VarSet::make({std::string(kSinVar), std::string(kCosVar)});
}

std::vector<Poly> algebraize(const Trajectory& tr, const std::vector<std::string>& pose_vars) {
  if (pose_vars.size() != tr.coords().size()) {
    throw StructuralError("trajectory dimension does not match the pose variables");
  }
  VarSetPtr tv = trajectory_vars(tr);
  std::vector<std::string> names = pose_vars;
  names.insert(names.end(), tv->names().begin(), tv->names().end());
  std::vector<std::size_t> blocks{pose_vars.size()};
  for (std::size_t b : tv->order().blocks()) blocks.push_back(b);
  VarSetPtr vars = VarSet::make(names, blocks);
  std::vector<Poly> out;
  for (std::size_t i = 0; i < pose_vars.size(); ++i) {
    Poly phi = embed(coordinate_poly(tr.coords()[i], tv), vars);
    out.push_back((Poly::variable(vars, pose_vars[i]) - phi).primitive());
  }
  Poly s = Poly::variable(vars, kSinVar);
  Poly c = Poly::variable(vars, kCosVar);
  out.push_back(s * s + c * c - Poly::constant(vars, 1));
  return out;
}

}  // namespace singtraj
