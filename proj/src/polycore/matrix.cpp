#include "singtraj/polycore/matrix.hpp"

#include <stdexcept>

#include "singtraj/polycore/errors.hpp"

namespace singtraj {

Poly divide_exact(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw std::domain_error("division by zero polynomial");
  if (!same_varset(a.vars(), b.vars())) {
    throw StructuralError("polynomials over different variable sets");
  }
  Poly rem = a;
  std::vector<Term> quotient;
  const Term& lb = b.leading_term();
  while (!rem.is_zero()) {
    const Term& lr = rem.leading_term();
    if (!lb.mono.divides(lr.mono)) throw std::domain_error("inexact polynomial division");
    Term q{lb.mono.quotient_of(lr.mono), lr.coeff / lb.coeff};
    rem -= Poly::monomial(a.vars(), q.mono, q.coeff) * b;
    quotient.push_back(std::move(q));
  }
  return Poly::from_terms(a.vars(), std::move(quotient));
}

Poly determinant(const PolyMatrix& m) {
  const std::size_t n = m.size();
  for (const auto& row : m) {
    if (row.size() != n) throw StructuralError("determinant of a non-square matrix");
  }
  if (n == 0) throw StructuralError("determinant of an empty matrix");
  const VarSetPtr& vars = m[0][0].vars();
  for (const auto& row : m) {
    for (const auto& e : row) {
      if (!same_varset(e.vars(), vars)) throw StructuralError("matrix entries over different variable sets");
    }
  }
  if (n == 1) return m[0][0];
  if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];

  // Bareiss: after step k every entry is a (k+1)x(k+1) minor, so the
  // division by the previous pivot is exact.
  PolyMatrix a = m;
  Poly previous = Poly::constant(vars, Rational(1));
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k].is_zero()) {
      std::size_t swap = k + 1;
      while (swap < n && a[swap][k].is_zero()) ++swap;
      if (swap == n) return Poly(vars);
      std::swap(a[k], a[swap]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Poly num = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        a[i][j] = divide_exact(num, previous);
      }
    }
    previous = a[k][k];
  }
  Poly det = a[n - 1][n - 1];
  return negate ? -det : det;
}

}  // namespace singtraj
