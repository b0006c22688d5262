#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "singtraj/polycore/poly.hpp"
#include "singtraj/realroots/interval.hpp"

namespace singtraj {

struct Harmonic {
  unsigned k;
  Rational cos_coeff;
  Rational sin_coeff;
};

/// constant + sum_k (a_k cos kt + b_k sin kt) + linear * t.
struct TrigPoly {
  Rational constant;
  std::vector<Harmonic> harmonics;
  Rational linear;

  bool has_trig() const;
  bool has_linear() const { return linear != 0; }

  Interval evaluate(const Interval& t, unsigned bits) const;
  double evaluate_approx(double t) const;
};

/// pi_coeff * pi + offset.
struct DomainBound {
  Rational pi_coeff;
  Rational offset;

  /// Accepts "20", "-3/2", "pi", "-pi", "2*pi", "pi/2", "-1/2*pi".
  static DomainBound parse(std::string_view text);
  Interval enclosure(unsigned bits) const;
  double approx() const;
  std::string to_string() const;
};

class Trajectory {
 public:
  Trajectory(std::string name, std::vector<TrigPoly> coords, DomainBound lo, DomainBound hi);

  /// "heart1", "heart2" and "helix".
  static std::optional<Trajectory> builtin(std::string_view name);
  static Trajectory from_json(std::string_view text);
  static Trajectory load(const std::string& path);
  /// Built-in name or path to a JSON file.
  static Trajectory resolve(const std::string& name_or_path);

  /// Constant trajectory at a point.
  static Trajectory constant(std::string name, const std::vector<Rational>& point);

  const std::string& name() const { return name_; }
  const std::vector<TrigPoly>& coords() const { return coords_; }
  const DomainBound& lo() const { return lo_; }
  const DomainBound& hi() const { return hi_; }

  bool has_trig() const;
  bool has_linear() const;

  std::vector<Interval> evaluate(const Interval& t, unsigned bits) const;
  std::vector<double> evaluate_approx(double t) const;

 private:
  std::string name_;
  std::vector<TrigPoly> coords_;
  DomainBound lo_;
  DomainBound hi_;
};

inline constexpr std::string_view kSinVar = "sin_t";
inline constexpr std::string_view kCosVar = "cos_t";
inline constexpr std::string_view kTimeVar = "t";

/// Exact multiple-angle expansions over a VarSet holding sin_t and cos_t.
Poly cos_multiple(unsigned k, const VarSetPtr& vars);
Poly sin_multiple(unsigned k, const VarSetPtr& vars);

/// The coordinate as a polynomial in sin_t, cos_t (and t when linear).
Poly coordinate_poly(const TrigPoly& coord, const VarSetPtr& vars);

/// Variables sin_t, cos_t, plus t when some coordinate has a linear term.
VarSetPtr trajectory_vars(const Trajectory& tr);

/// Primitive X_i - phi_i(sin_t, cos_t[, t]) for each coordinate, then the
/// circle relation, over pose variables followed by trajectory_vars.
std::vector<Poly> algebraize(const Trajectory& tr, const std::vector<std::string>& pose_vars);

}  // namespace singtraj
