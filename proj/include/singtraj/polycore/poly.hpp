#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "singtraj/polycore/monomial.hpp"
#include "singtraj/polycore/rational.hpp"

namespace singtraj {

struct Term {
  Monomial mono;
  Rational coeff;
};

/// Sparse multivariate polynomial over Q.
///
/// Terms are kept sorted in descending order under the VarSet's block order
/// with no zero coefficients, so equal polynomials have identical term lists.
class Poly {
 public:
  explicit Poly(VarSetPtr vars);

  static Poly constant(VarSetPtr vars, const Rational& value);
  static Poly variable(VarSetPtr vars, std::string_view name);
  static Poly monomial(VarSetPtr vars, const Monomial& mono,
                       const Rational& coeff);
  /// Sorts and merges arbitrary terms into canonical form.
  static Poly from_terms(VarSetPtr vars, std::vector<Term> terms);

  const VarSetPtr& vars() const { return vars_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Constant term value (zero when absent).
  Rational constant_term() const;

  /// Largest term under the VarSet order. Requires !is_zero().
  const Term& leading_term() const { return terms_.front(); }
  const Rational& leading_coeff() const { return terms_.front().coeff; }

  unsigned total_degree() const;
  unsigned degree(std::size_t var) const;
  bool involves(std::size_t var) const;
  std::vector<std::size_t> variables_used() const;

  Poly operator-() const;
  Poly& operator+=(const Poly& other);
  Poly& operator-=(const Poly& other);
  Poly& operator*=(const Poly& other);
  Poly& operator*=(const Rational& scalar);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rational& s) { return a *= s; }
  friend Poly operator*(const Rational& s, Poly a) { return a *= s; }
  friend bool operator==(const Poly& a, const Poly& b);

  Poly pow(unsigned exponent) const;

  Poly diff(std::size_t var) const;
  Poly diff(std::string_view var) const;

  /// Full evaluation; `point` has one value per variable.
  Rational evaluate(std::span<const Rational> point) const;
  /// Floating-point evaluation for display and sampling only.
  double evaluate_approx(std::span<const double> point) const;
  /// Replaces one variable by a rational value.
  Poly substitute(std::size_t var, const Rational& value) const;

  /// Integer coefficients with content 1 and positive leading coefficient.
  Poly primitive() const;
  Poly monic() const;

  /// Coefficients of powers of `var`: result[k] multiplies var^k.
  std::vector<Poly> coefficients_in(std::size_t var) const;

  std::string to_string() const;

 private:
  void check_same(const Poly& other) const;

  VarSetPtr vars_;
  std::vector<Term> terms_;
};

/// Re-expresses `p` over `target`, matching variables by name.
Poly embed(const Poly& p, const VarSetPtr& target);

/// Substitutes variables of `p` by polynomials over `target`. Variables of
/// `p` absent from `images` map to the same-named variable of `target`.
Poly compose(const Poly& p, const std::map<std::string, Poly>& images,
             const VarSetPtr& target);

}  // namespace singtraj
