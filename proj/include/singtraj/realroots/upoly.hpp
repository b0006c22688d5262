#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "singtraj/polycore/poly.hpp"
#include "singtraj/polycore/rational.hpp"

namespace singtraj {

/// Dense univariate polynomial with integer coefficients; coeffs()[k]
/// multiplies t^k. The zero polynomial has no coefficients.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<Integer> coeffs);

  /// Clears denominators; the result is a positive multiple of the input.
  static UPoly from_rationals(const std::vector<Rational>& coeffs);
  /// Accepts a Poly using at most one variable. Throws StructuralError
  /// otherwise.
  static UPoly from_poly(const Poly& p);
  static UPoly monomial(unsigned degree, const Integer& coeff = 1);

  Poly to_poly(const VarSetPtr& vars, std::string_view var) const;

  bool is_zero() const { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Integer>& coeffs() const { return coeffs_; }
  const Integer& lead() const { return coeffs_.back(); }
  Integer coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : Integer(0); }

  Rational evaluate(const Rational& x) const;
  int sign_at(const Rational& x) const;

  UPoly derivative() const;
  Integer content() const;
  /// Content 1 and positive leading coefficient.
  UPoly primitive() const;

  UPoly operator-() const;
  friend UPoly operator+(const UPoly& a, const UPoly& b);
  friend UPoly operator-(const UPoly& a, const UPoly& b);
  friend UPoly operator*(const UPoly& a, const UPoly& b);
  friend UPoly operator*(const Integer& s, const UPoly& a);
  friend bool operator==(const UPoly& a, const UPoly& b) = default;

  UPoly pow(unsigned e) const;
  /// p(q(t)).
  UPoly compose(const UPoly& q) const;

  std::string to_string(std::string_view var = "t") const;

 private:
  void trim();

  std::vector<Integer> coeffs_;
};

/// lc(b)^(deg a - deg b + 1) * a mod b.
UPoly pseudo_remainder(const UPoly& a, const UPoly& b);

/// a / b over Q, scaled to a primitive polynomial. Throws std::domain_error
/// when b does not divide a.
UPoly exact_quotient(const UPoly& a, const UPoly& b);

/// Primitive greatest common divisor; gcd(0, 0) is 0.
UPoly gcd(const UPoly& a, const UPoly& b);

}  // namespace singtraj
