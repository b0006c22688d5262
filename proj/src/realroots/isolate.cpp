#include "singtraj/realroots/isolate.hpp"

#include <stdexcept>

namespace singtraj {

namespace {

// Divides by the positive content, keeping the sign.
UPoly strip_content(const UPoly& p) {
  if (p.is_zero()) return p;
  Integer g = p.content();
  if (g == 1) return p;
  std::vector<Integer> c = p.coeffs();
  for (auto& v : c) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
  return UPoly(std::move(c));
}

void require_nonzero(const UPoly& p) {
  if (p.is_zero()) throw std::domain_error("zero polynomial has no isolated roots");
}

class Isolator {
 public:
  explicit Isolator(const UPoly& p) : p_(p), sturm_(p) {}

  std::vector<IsolatedRoot> run(const Rational& lo, const Rational& hi) {
    if (p_.sign_at(lo) == 0) out_.push_back(IsolatedRoot{p_, lo, lo, 1});
    if (lo < hi) split(lo, hi, sturm_.count(lo, hi));
    return std::move(out_);
  }

 private:
  void split(const Rational& a, const Rational& b, int n) {
    if (n == 0) return;
    if (n == 1) {
      if (p_.sign_at(b) == 0) {
        out_.push_back(IsolatedRoot{p_, b, b, 1});
        return;
      }
      if (p_.sign_at(a) != 0) {
        out_.push_back(IsolatedRoot{p_, a, b, 1});
        return;
      }
    }
    Rational m = (a + b) / 2;
    int left = sturm_.count(a, m);
    split(a, m, left);
    split(m, b, n - left);
  }

  const UPoly& p_;
  SturmSequence sturm_;
  std::vector<IsolatedRoot> out_;
};

void separate(std::vector<IsolatedRoot>& roots) {
  for (std::size_t k = 0; k + 1 < roots.size(); ++k) {
    while (roots[k].hi >= roots[k + 1].lo) {
      roots[k] = refine(roots[k], (roots[k].hi - roots[k].lo) / 2);
      roots[k + 1] = refine(roots[k + 1], (roots[k + 1].hi - roots[k + 1].lo) / 2);
    }
  }
}

}  // namespace

std::vector<SquarefreeFactor> squarefree(const UPoly& p) {
  require_nonzero(p);
  std::vector<SquarefreeFactor> out;
  if (p.degree() == 0) return out;
  UPoly g = gcd(p, p.derivative());
  UPoly w = exact_quotient(p, g);
  unsigned i = 1;
  while (g.degree() > 0) {
    UPoly y = gcd(w, g);
    UPoly f = exact_quotient(w, y);
    if (f.degree() > 0) out.push_back(SquarefreeFactor{f, i});
    w = y;
    g = exact_quotient(g, y);
    ++i;
  }
  if (w.degree() > 0) out.push_back(SquarefreeFactor{w.primitive(), i});
  return out;
}

std::vector<std::pair<Poly, unsigned>> squarefree(const Poly& p) {
  auto used = p.variables_used();
  if (p.is_zero()) throw std::domain_error("zero polynomial has no square-free decomposition");
  std::vector<std::pair<Poly, unsigned>> out;
  if (used.empty()) return out;
  const std::string& var = p.vars()->name(used.front());
  for (const auto& f : squarefree(UPoly::from_poly(p))) {
    out.emplace_back(f.factor.to_poly(p.vars(), var), f.multiplicity);
  }
  return out;
}

UPoly squarefree_part(const UPoly& p) {
  require_nonzero(p);
  if (p.degree() == 0) return UPoly({Integer(1)});
  return exact_quotient(p, gcd(p, p.derivative()));
}

SturmSequence::SturmSequence(const UPoly& p) {
  require_nonzero(p);
  chain_.push_back(strip_content(p));
  if (p.degree() == 0) return;
  chain_.push_back(strip_content(p.derivative()));
  for (;;) {
    const UPoly& a = chain_[chain_.size() - 2];
    const UPoly& b = chain_.back();
    UPoly r = pseudo_remainder(a, b);
    if (r.is_zero()) break;
    // prem carries lc(b)^delta; keep only a positive multiple of the remainder.
    const int delta = a.degree() - b.degree() + 1;
    if (b.lead() < 0 && delta % 2 != 0) r = -r;
    chain_.push_back(strip_content(-r));
  }
}

int SturmSequence::sign_changes(const Rational& x) const {
  int changes = 0;
  int last = 0;
  for (const auto& q : chain_) {
    int s = q.sign_at(x);
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

int SturmSequence::count(const Rational& lo, const Rational& hi) const {
  if (hi <= lo) return 0;
  return sign_changes(lo) - sign_changes(hi);
}

double IsolatedRoot::approx() const { return to_double((lo + hi) / 2); }

Rational root_bound(const UPoly& p) {
  require_nonzero(p);
  Rational ratio = 0;
  const Integer lead = abs(p.lead());
  for (int k = 0; k < p.degree(); ++k) {
    Rational r(abs(p.coeffs()[k]), lead);
    r.canonicalize();
    if (r > ratio) ratio = r;
  }
  Rational bound = 1 + ratio;
  Rational pow2 = 1;
  while (pow2 < bound) pow2 *= 2;
  return pow2;
}

std::vector<IsolatedRoot> isolate(const UPoly& p, const Rational& lo, const Rational& hi) {
  require_nonzero(p);
  if (hi < lo) throw std::invalid_argument("isolation range with lo > hi");
  auto factors = squarefree(p);
  if (factors.empty()) return {};
  UPoly part({Integer(1)});
  for (const auto& f : factors) part = part * f.factor;
  part = part.primitive();
  std::vector<IsolatedRoot> roots = Isolator(part).run(lo, hi);
  for (auto& r : roots) {
    for (const auto& f : factors) {
      if (vanishes_at(f.factor, r)) {
        r.polynomial = f.factor;
        r.multiplicity = f.multiplicity;
        break;
      }
    }
  }
  separate(roots);
  return roots;
}

std::vector<IsolatedRoot> isolate(const Poly& p, const Rational& lo, const Rational& hi) {
  return isolate(UPoly::from_poly(p), lo, hi);
}

std::vector<IsolatedRoot> isolate(const UPoly& p) {
  Rational b = root_bound(p);
  return isolate(p, -b, b);
}

IsolatedRoot refine(const IsolatedRoot& root, const Rational& width) {
  IsolatedRoot r = root;
  if (r.exact()) return r;
  const int s_lo = r.polynomial.sign_at(r.lo);
  while (r.hi - r.lo > width) {
    Rational m = (r.lo + r.hi) / 2;
    int s = r.polynomial.sign_at(m);
    if (s == 0) {
      r.lo = m;
      r.hi = m;
      break;
    }
    if (s == s_lo) {
      r.lo = m;
    } else {
      r.hi = m;
    }
  }
  return r;
}

int compare(const IsolatedRoot& root, const Rational& q) {
  if (root.exact()) return cmp(root.lo, q) > 0 ? 1 : (cmp(root.lo, q) < 0 ? -1 : 0);
  if (q <= root.lo) return 1;
  if (q >= root.hi) return -1;
  int s = root.polynomial.sign_at(q);
  if (s == 0) return 0;
  return s == root.polynomial.sign_at(root.lo) ? 1 : -1;
}

bool vanishes_at(const UPoly& q, const IsolatedRoot& root) {
  if (q.is_zero()) return true;
  if (root.exact()) return q.sign_at(root.lo) == 0;
  UPoly g = gcd(root.polynomial, q);
  if (g.degree() <= 0) return false;
  return SturmSequence(g).count(root.lo, root.hi) > 0;
}

int sign_at(const UPoly& q, const IsolatedRoot& root) {
  if (root.exact()) return q.sign_at(root.lo);
  if (vanishes_at(q, root)) return 0;
  IsolatedRoot r = root;
  for (;;) {
    int s = evaluate(q, r.interval()).sign();
    if (s != 0) return s;
    r = refine(r, (r.hi - r.lo) / 4);
    if (r.exact()) return q.sign_at(r.lo);
  }
}

}  // namespace singtraj
