#include "singtraj/realroots/circle.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

#include "singtraj/polycore/errors.hpp"

namespace singtraj {

namespace {

// p = P(c) + s*Q(c) modulo s^2 + c^2 - 1, both scaled by one positive factor.
struct Split {
  UPoly p;
  UPoly q;
};

Split split(const Poly& f, std::size_t si, std::size_t ci) {
  for (std::size_t v : f.variables_used()) {
    if (v != si && v != ci) {
      throw StructuralError("circle system involves " + f.vars()->name(v));
    }
  }
  std::vector<Rational> p;
  std::vector<Rational> q;
  auto add = [](std::vector<Rational>& dst, const std::vector<Rational>& src) {
    if (dst.size() < src.size()) dst.resize(src.size());
    for (std::size_t k = 0; k < src.size(); ++k) dst[k] += src[k];
  };
  // (1 - c^2)^j as a rational coefficient vector.
  auto one_minus_c2 = [](unsigned j) {
    std::vector<Rational> out{Rational(1)};
    for (unsigned i = 0; i < j; ++i) {
      std::vector<Rational> next(out.size() + 2);
      for (std::size_t k = 0; k < out.size(); ++k) {
        next[k] += out[k];
        next[k + 2] -= out[k];
      }
      out = std::move(next);
    }
    return out;
  };
  auto coeffs = f.coefficients_in(si);
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (coeffs[k].is_zero()) continue;
    std::vector<Rational> a(coeffs[k].degree(ci) + 1);
    for (const auto& t : coeffs[k].terms()) a[t.mono[ci]] = t.coeff;
    auto w = one_minus_c2(static_cast<unsigned>(k / 2));
    std::vector<Rational> prod(a.size() + w.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
      for (std::size_t j = 0; j < w.size(); ++j) prod[i + j] += a[i] * w[j];
    }
    add(k % 2 == 0 ? p : q, prod);
  }
  Integer den = 1;
  for (const auto* v : {&p, &q}) {
    for (const auto& c : *v) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  }
  auto scaled = [&den](const std::vector<Rational>& v) {
    std::vector<Integer> out;
    out.reserve(v.size());
    for (const auto& c : v) out.push_back(c.get_num() * (den / c.get_den()));
    return UPoly(std::move(out));
  };
  return Split{scaled(p), scaled(q)};
}

const UPoly& one_minus_t2() {
  static const UPoly u({Integer(1), Integer(0), Integer(-1)});
  return u;
}

// Polynomial vanishing at every s = +-sqrt(1 - c^2) with g(c) = 0.
UPoly sine_polynomial(const UPoly& g) {
  std::vector<Integer> even;
  std::vector<Integer> odd;
  for (std::size_t k = 0; k < g.coeffs().size(); ++k) {
    (k % 2 == 0 ? even : odd).push_back(g.coeffs()[k]);
  }
  UPoly e = UPoly(even).compose(one_minus_t2());
  UPoly o = UPoly(odd).compose(one_minus_t2());
  return e * e - one_minus_t2() * o * o;
}

IsolatedRoot exact_root(const Rational& value) {
  // Root of t - value.
  UPoly p = UPoly::from_rationals({-value, Rational(1)});
  return IsolatedRoot{p, value, value, 1};
}

// Bisection for t in [lo, hi] given sign(sin(t - tau)) is decidable there.
Interval bisect_angle(IsolatedRoot c, IsolatedRoot s, Rational lo, Rational hi, const Rational& width) {
  unsigned bits = std::max(64U, precision_bits(width) + 16);
  static const Rational kFractions[] = {Rational(1, 2), Rational(3, 8), Rational(5, 8), Rational(7, 16),
                                        Rational(9, 16)};
  while (hi - lo > width) {
    bool moved = false;
    for (unsigned attempt = 0; attempt < 40 && !moved; ++attempt) {
      Rational m = lo + (hi - lo) * kFractions[attempt % 5];
      Interval g = s.interval() * cos(Interval(m), bits) - c.interval() * sin(Interval(m), bits);
      int sg = g.sign();
      if (sg > 0) {
        lo = m;
        moved = true;
      } else if (sg < 0) {
        hi = m;
        moved = true;
      } else {
        bits += 16;
        c = refine(c, (c.hi - c.lo) / 65536);
        s = refine(s, (s.hi - s.lo) / 65536);
      }
    }
    if (!moved) throw std::runtime_error("angle bisection failed to separate");
  }
  return Interval(lo, hi);
}

}  // namespace

Interval angle_enclosure(const IsolatedRoot& cos_val, const IsolatedRoot& sin_val, const Rational& width) {
  const int cs = compare(cos_val, 0);
  const int ss = compare(sin_val, 0);
  const unsigned bits = precision_bits(width) + 4;
  if (ss == 0) {
    if (cs > 0) return Interval(0);
    return round_outward(pi_interval(bits), bits);
  }
  if (cs == 0) {
    Interval half = round_outward(pi_interval(bits + 1) * Interval(Rational(1, 2)), bits);
    return ss > 0 ? half : -half;
  }
  IsolatedRoot s = sin_val;
  if (ss < 0) {
    s.polynomial = s.polynomial.compose(UPoly({Integer(0), Integer(-1)}));
    Rational lo = -s.hi;
    s.hi = -s.lo;
    s.lo = lo;
  }
  const Rational start = width / 16;
  IsolatedRoot c = refine(cos_val, start);
  s = refine(s, start);
  Interval t = cs > 0 ? bisect_angle(c, s, Rational(0), Rational(8, 5), width)
                      : bisect_angle(c, s, Rational(3, 2), Rational(16, 5), width);
  return ss > 0 ? t : -t;
}

std::vector<CircleRoot> solve_circle_system(std::span<const Poly> sys, std::string_view sin_var,
                                            std::string_view cos_var, const Rational& t_width) {
  if (sys.empty()) throw PositiveDimensionalError("empty system on the circle");
  const std::size_t si = sys.front().vars()->index(sin_var);
  const std::size_t ci = sys.front().vars()->index(cos_var);
  std::vector<Split> parts;
  UPoly g;
  for (const auto& f : sys) {
    if (!same_varset(f.vars(), sys.front().vars())) throw StructuralError("system over different variables");
    Split sp = split(f, si, ci);
    if (sp.p.is_zero() && sp.q.is_zero()) continue;
    UPoly r = sp.p * sp.p - one_minus_t2() * sp.q * sp.q;
    g = g.is_zero() ? r.primitive() : gcd(g, r);
    parts.push_back(std::move(sp));
  }
  if (parts.empty()) throw PositiveDimensionalError("system vanishes on the whole circle");
  std::vector<CircleRoot> out;
  if (g.degree() <= 0) return out;

  std::vector<IsolatedRoot> cos_roots = isolate(g, Rational(-1), Rational(1));
  std::optional<std::vector<IsolatedRoot>> sin_roots;

  for (IsolatedRoot ca : cos_roots) {
    if (ca.exact() && abs(ca.lo) == 1) {
      CircleRoot root{exact_root(0), ca, 0, 0, ca.multiplicity};
      Interval t = angle_enclosure(ca, root.sin_val, t_width);
      root.t_lo = t.lo();
      root.t_hi = t.hi();
      out.push_back(std::move(root));
      continue;
    }
    bool allow_plus = true;
    bool allow_minus = true;
    for (const auto& sp : parts) {
      if (vanishes_at(sp.q, ca)) continue;
      const int sign_p = sign_at(sp.p, ca);
      const int sign_q = sign_at(sp.q, ca);
      const int sigma = -sign_p * sign_q;
      if (sigma >= 0) allow_minus = false;
      if (sigma <= 0) allow_plus = false;
    }
    const unsigned branches = (allow_plus ? 1U : 0U) + (allow_minus ? 1U : 0U);
    if (branches == 0) continue;
    if (!sin_roots) sin_roots = isolate(sine_polynomial(squarefree_part(g)),
                                        Rational(-1), Rational(1));
    for (int sigma : {1, -1}) {
      if ((sigma > 0 && !allow_plus) || (sigma < 0 && !allow_minus)) continue;
      // Match sigma * sqrt(1 - c^2) against the isolated sine roots.
      std::optional<IsolatedRoot> match;
      IsolatedRoot c = ca;
      std::vector<IsolatedRoot> candidates = *sin_roots;
      for (unsigned iter = 0; iter < 200 && !match; ++iter) {
        Interval enclosure = sqrt(Interval(1) - c.interval().sqr(), 64 + 4 * iter);
        if (sigma < 0) enclosure = -enclosure;
        std::vector<std::size_t> hits;
        for (std::size_t k = 0; k < candidates.size(); ++k) {
          if (candidates[k].interval().overlaps(enclosure)) hits.push_back(k);
        }
        if (hits.size() == 1) {
          match = candidates[hits.front()];
          break;
        }
        c = refine(c, (c.hi - c.lo) / 4);
        for (std::size_t k : hits) candidates[k] = refine(candidates[k], (candidates[k].hi - candidates[k].lo) / 4);
      }
      if (!match) throw std::runtime_error("failed to match sine coordinate");
      IsolatedRoot s = *match;
      s.multiplicity = ca.multiplicity;
      unsigned mult = branches == 2 ? std::max(1U, (ca.multiplicity + 1) / 2) : ca.multiplicity;
      CircleRoot root{s, ca, 0, 0, mult};
      Interval t = angle_enclosure(ca, s, t_width);
      root.t_lo = t.lo();
      root.t_hi = t.hi();
      out.push_back(std::move(root));
    }
  }
  std::sort(out.begin(), out.end(), [](const CircleRoot& a, const CircleRoot& b) { return a.t_lo < b.t_lo; });
  return out;
}

CircleRoot refine(const CircleRoot& root, const Rational& width) {
  CircleRoot r = root;
  r.sin_val = refine(r.sin_val, width);
  r.cos_val = refine(r.cos_val, width);
  Interval t = angle_enclosure(r.cos_val, r.sin_val, width);
  r.t_lo = t.lo();
  r.t_hi = t.hi();
  return r;
}

}  // namespace singtraj
