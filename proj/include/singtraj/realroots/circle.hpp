#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "singtraj/polycore/poly.hpp"
#include "singtraj/realroots/interval.hpp"
#include "singtraj/realroots/isolate.hpp"

namespace singtraj {

/// A real point (cos t, sin t) of a system on the unit circle, with an
/// enclosure of its angle t in (-pi, pi].
struct CircleRoot {
  IsolatedRoot sin_val;
  IsolatedRoot cos_val;
  Rational t_lo;
  Rational t_hi;
  unsigned multiplicity = 1;

  Interval t_interval() const { return Interval(t_lo, t_hi); }
  /// Display only.
  double t_approx() const { return to_double((t_lo + t_hi) / 2); }
};

/// All real solutions of `sys` together with sin^2 + cos^2 = 1, sorted by t.
/// Polynomials may be declared over a larger VarSet but must involve only
/// the two named variables. Throws PositiveDimensionalError when the system
/// has infinitely many solutions on the circle.
std::vector<CircleRoot> solve_circle_system(std::span<const Poly> sys,
                                            std::string_view sin_var = "sin_t",
                                            std::string_view cos_var = "cos_t",
                                            const Rational& t_width = Rational(1, 1 << 20));

/// Angle of the circle point (c, s), enclosed to `width`.
Interval angle_enclosure(const IsolatedRoot& cos_val, const IsolatedRoot& sin_val,
                         const Rational& width);

/// Refines the coordinates and the angle to `width`.
CircleRoot refine(const CircleRoot& root, const Rational& width);

}  // namespace singtraj
