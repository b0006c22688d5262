#pragma once

#include <utility>
#include <vector>

#include "singtraj/polycore/poly.hpp"
#include "singtraj/realroots/interval.hpp"
#include "singtraj/realroots/upoly.hpp"

namespace singtraj {

struct SquarefreeFactor {
  UPoly factor;
  unsigned multiplicity;
};

/// Yun's decomposition: p equals the product of factor^multiplicity up to a
/// scalar. Throws std::domain_error for the zero polynomial.
std::vector<SquarefreeFactor> squarefree(const UPoly& p);
std::vector<std::pair<Poly, unsigned>> squarefree(const Poly& p);

/// Primitive product of the distinct irreducible factors of p.
UPoly squarefree_part(const UPoly& p);

class SturmSequence {
 public:
  /// `p` must be square-free.
  explicit SturmSequence(const UPoly& p);

  const UPoly& polynomial() const { return chain_.front(); }
  int sign_changes(const Rational& x) const;
  /// Number of distinct roots in (lo, hi].
  int count(const Rational& lo, const Rational& hi) const;

 private:
  std::vector<UPoly> chain_;
};

/// A real root of a square-free polynomial, alone in [lo, hi]. Either
/// lo == hi is the root itself, or lo < hi and the polynomial has opposite
/// nonzero signs at the endpoints.
struct IsolatedRoot {
  UPoly polynomial;
  Rational lo;
  Rational hi;
  unsigned multiplicity = 1;

  bool exact() const { return lo == hi; }
  Interval interval() const { return Interval(lo, hi); }
  /// Display only.
  double approx() const;
};

/// Cauchy bound rounded up to a power of two: every root lies strictly
/// inside (-bound, bound).
Rational root_bound(const UPoly& p);

/// Sorted, pairwise disjoint isolating intervals for the distinct real roots
/// of p in [lo, hi], with multiplicities of p. Throws std::domain_error for
/// the zero polynomial.
std::vector<IsolatedRoot> isolate(const UPoly& p, const Rational& lo, const Rational& hi);
std::vector<IsolatedRoot> isolate(const Poly& p, const Rational& lo, const Rational& hi);
/// All real roots.
std::vector<IsolatedRoot> isolate(const UPoly& p);

/// Bisects until hi - lo <= width.
IsolatedRoot refine(const IsolatedRoot& root, const Rational& width);

/// Sign of (root - q), exact.
int compare(const IsolatedRoot& root, const Rational& q);

/// Exact sign of q at the root.
int sign_at(const UPoly& q, const IsolatedRoot& root);

/// True when q vanishes at the root.
bool vanishes_at(const UPoly& q, const IsolatedRoot& root);

}  // namespace singtraj
