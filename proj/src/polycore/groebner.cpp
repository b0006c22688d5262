#include "singtraj/polycore/groebner.hpp"

#include <algorithm>
#include <limits>

namespace singtraj {

namespace {

// Integer-coefficient working polynomial, sorted descending under the active
// order. Buchberger runs fraction-free and strips contents as it goes.
struct ITerm {
  Monomial mono;
  Integer coeff;
};
using IPoly = std::vector<ITerm>;

IPoly to_ipoly(const Poly& p, const MonomialOrder& order) {
  Poly prim = p.primitive();
  IPoly out;
  out.reserve(prim.size());
  for (const auto& t : prim.terms()) out.push_back(ITerm{t.mono, t.coeff.get_num()});
  std::sort(out.begin(), out.end(), [&order](const ITerm& a, const ITerm& b) {
    return order.compare(a.mono, b.mono) > 0;
  });
  if (!out.empty() && out.front().coeff < 0) {
    for (auto& t : out) t.coeff = -t.coeff;
  }
  return out;
}

Poly to_poly(const IPoly& p, const VarSetPtr& vars) {
  std::vector<Term> terms;
  terms.reserve(p.size());
  for (const auto& t : p) terms.push_back(Term{t.mono, Rational(t.coeff)});
  return Poly::from_terms(vars, std::move(terms));
}

unsigned total_degree(const IPoly& p) {
  unsigned d = 0;
  for (const auto& t : p) d = std::max(d, t.mono.total_degree());
  return d;
}

void remove_content(IPoly& h, IPoly& r) {
  Integer g = 0;
  for (const auto& t : h) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coeff.get_mpz_t());
    if (g == 1) return;
  }
  for (const auto& t : r) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coeff.get_mpz_t());
    if (g == 1) return;
  }
  if (g == 0) return;
  for (auto& t : h) mpz_divexact(t.coeff.get_mpz_t(), t.coeff.get_mpz_t(), g.get_mpz_t());
  for (auto& t : r) mpz_divexact(t.coeff.get_mpz_t(), t.coeff.get_mpz_t(), g.get_mpz_t());
}

void make_primitive(IPoly& p) {
  IPoly empty;
  remove_content(p, empty);
  if (!p.empty() && p.front().coeff < 0) {
    for (auto& t : p) t.coeff = -t.coeff;
  }
}

// h[from+1..]*a - b*q*g[1..]; the leading terms cancel. Consumes h.
IPoly reduction_step(IPoly& h, std::size_t from, const IPoly& g, const Monomial& q,
                     const Integer& a, const Integer& b, const MonomialOrder& order) {
  IPoly out;
  out.reserve(h.size() - from + g.size());
  const bool scale = a != 1;
  std::size_t i = from + 1;
  std::size_t j = 1;
  Monomial gm;
  if (j < g.size()) gm = g[j].mono * q;
  while (i < h.size() || j < g.size()) {
    int c;
    if (i >= h.size()) {
      c = -1;
    } else if (j >= g.size()) {
      c = 1;
    } else {
      c = order.compare(h[i].mono, gm);
    }
    if (c > 0) {
      out.push_back(std::move(h[i]));
      if (scale) mpz_mul(out.back().coeff.get_mpz_t(), out.back().coeff.get_mpz_t(), a.get_mpz_t());
      ++i;
    } else if (c < 0) {
      out.push_back(ITerm{gm, Integer()});
      mpz_mul(out.back().coeff.get_mpz_t(), b.get_mpz_t(), g[j].coeff.get_mpz_t());
      mpz_neg(out.back().coeff.get_mpz_t(), out.back().coeff.get_mpz_t());
      if (++j < g.size()) gm = g[j].mono * q;
    } else {
      Integer& v = h[i].coeff;
      if (scale) mpz_mul(v.get_mpz_t(), v.get_mpz_t(), a.get_mpz_t());
      mpz_submul(v.get_mpz_t(), b.get_mpz_t(), g[j].coeff.get_mpz_t());
      if (v != 0) out.push_back(std::move(h[i]));
      ++i;
      if (++j < g.size()) gm = g[j].mono * q;
    }
  }
  return out;
}

class Reducer {
 public:
  explicit Reducer(const MonomialOrder& order) : order_(order) {}

  // Full fraction-free reduction; result is primitive with positive
  // leading coefficient, or empty.
  IPoly reduce(IPoly h, const std::vector<const IPoly*>& divisors) const {
    IPoly rem;
    std::size_t pos = 0;
    unsigned steps = 0;
    while (pos < h.size()) {
      const IPoly* g = find_divisor(h[pos].mono, divisors);
      if (g == nullptr) {
        rem.push_back(std::move(h[pos]));
        ++pos;
        continue;
      }
      const Integer& ch = h[pos].coeff;
      const Integer& cg = g->front().coeff;
      Integer d;
      mpz_gcd(d.get_mpz_t(), ch.get_mpz_t(), cg.get_mpz_t());
      Integer a = cg / d;
      Integer b = ch / d;
      if (a < 0) {
        a = -a;
        b = -b;
      }
      Monomial q = g->front().mono.quotient_of(h[pos].mono);
      h = reduction_step(h, pos, *g, q, a, b, order_);
      pos = 0;
      if (a != 1) {
        for (auto& t : rem) mpz_mul(t.coeff.get_mpz_t(), t.coeff.get_mpz_t(), a.get_mpz_t());
      }
      if (++steps % 16 == 0) remove_content(h, rem);
    }
    make_primitive(rem);
    return rem;
  }

 private:
  static const IPoly* find_divisor(const Monomial& m, const std::vector<const IPoly*>& divisors) {
    for (const IPoly* g : divisors) {
      if (g->front().mono.divides(m)) return g;
    }
    return nullptr;
  }

  const MonomialOrder& order_;
};

struct Pair {
  std::size_t i;
  std::size_t j;
  Monomial lcm;
};

class Buchberger {
 public:
  Buchberger(const MonomialOrder& order, const GroebnerOptions& options)
      : order_(order), options_(options), reducer_(order) {}

  std::vector<IPoly> run(std::vector<IPoly> inputs) {
    for (auto& f : inputs) {
      if (f.empty()) continue;
      IPoly r = reducer_.reduce(std::move(f), active_divisors());
      if (r.empty()) continue;
      if (r.front().mono.is_one()) return {r};
      add(std::move(r));
    }
    while (!pairs_.empty()) {
      Pair p = pop_pair();
      if (p.lcm.total_degree() > options_.max_degree) {
        throw BlowUpError("S-pair degree exceeds ceiling of " + std::to_string(options_.max_degree),
                          polys_.size(), p.lcm.total_degree());
      }
      IPoly s = spoly(polys_[p.i], polys_[p.j], p.lcm);
      IPoly r = reducer_.reduce(std::move(s), active_divisors());
      if (r.empty()) continue;
      if (r.front().mono.is_one()) return {r};
      add(std::move(r));
    }
    return reduced_basis();
  }

 private:
  std::vector<const IPoly*> active_divisors() const {
    std::vector<const IPoly*> out;
    for (std::size_t k = 0; k < polys_.size(); ++k) {
      if (active_[k]) out.push_back(&polys_[k]);
    }
    return out;
  }

  IPoly spoly(const IPoly& f, const IPoly& g, const Monomial& l) const {
    Integer d;
    mpz_gcd(d.get_mpz_t(), f.front().coeff.get_mpz_t(), g.front().coeff.get_mpz_t());
    Integer a = g.front().coeff / d;
    Integer b = f.front().coeff / d;
    Monomial qf = f.front().mono.quotient_of(l);
    Monomial qg = g.front().mono.quotient_of(l);
    IPoly fs;
    fs.reserve(f.size());
    for (const auto& t : f) fs.push_back(ITerm{t.mono * qf, t.coeff});
    return reduction_step(fs, 0, g, qg, a, b, order_);
  }

  Pair pop_pair() {
    std::size_t best = 0;
    for (std::size_t k = 1; k < pairs_.size(); ++k) {
      int c = order_.compare(pairs_[k].lcm, pairs_[best].lcm);
      if (c < 0 || (c == 0 && (pairs_[k].j < pairs_[best].j ||
                               (pairs_[k].j == pairs_[best].j && pairs_[k].i < pairs_[best].i)))) {
        best = k;
      }
    }
    Pair p = pairs_[best];
    pairs_.erase(pairs_.begin() + static_cast<std::ptrdiff_t>(best));
    return p;
  }

  // Gebauer-Moeller update.
  void add(IPoly h) {
    if (polys_.size() + 1 > options_.max_basis) {
      throw BlowUpError("basis size exceeds ceiling of " + std::to_string(options_.max_basis),
                        polys_.size() + 1, total_degree(h));
    }
    unsigned deg = total_degree(h);
    if (deg > options_.max_degree) {
      throw BlowUpError("basis degree exceeds ceiling of " + std::to_string(options_.max_degree),
                        polys_.size() + 1, deg);
    }
    const std::size_t hi = polys_.size();
    const Monomial hm = h.front().mono;
    polys_.push_back(std::move(h));
    active_.push_back(true);

    std::vector<Pair> candidates;
    for (std::size_t g = 0; g < hi; ++g) {
      if (active_[g]) candidates.push_back(Pair{g, hi, lcm(polys_[g].front().mono, hm)});
    }

    // Chain criterion among the new pairs.
    std::vector<Pair> kept;
    for (std::size_t k = 0; k < candidates.size(); ++k) {
      const Pair& p = candidates[k];
      bool dominated = false;
      if (!polys_[p.i].front().mono.coprime(hm)) {
        for (std::size_t l = k + 1; l < candidates.size() && !dominated; ++l) {
          dominated = candidates[l].lcm.divides(p.lcm);
        }
        for (std::size_t l = 0; l < kept.size() && !dominated; ++l) {
          dominated = kept[l].lcm.divides(p.lcm);
        }
      }
      if (!dominated) kept.push_back(p);
    }
    // Product criterion.
    std::vector<Pair> fresh;
    for (const auto& p : kept) {
      if (!polys_[p.i].front().mono.coprime(hm)) fresh.push_back(p);
    }

    // Drop old pairs made redundant by h.
    std::vector<Pair> remaining;
    remaining.reserve(pairs_.size());
    for (const auto& p : pairs_) {
      bool redundant = hm.divides(p.lcm) &&
                       !(lcm(polys_[p.i].front().mono, hm) == p.lcm) &&
                       !(lcm(polys_[p.j].front().mono, hm) == p.lcm);
      if (!redundant) remaining.push_back(p);
    }
    pairs_ = std::move(remaining);
    for (auto& p : fresh) pairs_.push_back(std::move(p));

    for (std::size_t g = 0; g < hi; ++g) {
      if (active_[g] && hm.divides(polys_[g].front().mono)) active_[g] = false;
    }
  }

  std::vector<IPoly> reduced_basis() const {
    std::vector<IPoly> basis;
    for (std::size_t k = 0; k < polys_.size(); ++k) {
      if (active_[k]) basis.push_back(polys_[k]);
    }
    std::sort(basis.begin(), basis.end(), [this](const IPoly& a, const IPoly& b) {
      return order_.compare(a.front().mono, b.front().mono) < 0;
    });
    for (std::size_t k = 0; k < basis.size(); ++k) {
      std::vector<const IPoly*> others;
      for (std::size_t l = 0; l < basis.size(); ++l) {
        if (l != k) others.push_back(&basis[l]);
      }
      basis[k] = reducer_.reduce(basis[k], others);
    }
    return basis;
  }

  const MonomialOrder& order_;
  GroebnerOptions options_;
  Reducer reducer_;
  std::vector<IPoly> polys_;
  std::vector<bool> active_;
  std::vector<Pair> pairs_;
};

void check_inputs(std::span<const Poly> gens, const MonomialOrder& order) {
  if (gens.empty()) throw StructuralError("empty generator list");
  const VarSetPtr& vars = gens.front().vars();
  for (const auto& g : gens) {
    if (!same_varset(g.vars(), vars)) throw StructuralError("generators over different variable sets");
  }
  if (order.size() != vars->size()) throw StructuralError("monomial order does not match variables");
}

}  // namespace

const Term& leading_term(const Poly& p, const MonomialOrder& order) {
  if (p.is_zero()) throw std::domain_error("leading term of zero polynomial");
  const Term* best = &p.terms().front();
  for (const auto& t : p.terms()) {
    if (order.compare(t.mono, best->mono) > 0) best = &t;
  }
  return *best;
}

Poly s_polynomial(const Poly& f, const Poly& g, const MonomialOrder& order) {
  const Term& lf = leading_term(f, order);
  const Term& lg = leading_term(g, order);
  Monomial l = lcm(lf.mono, lg.mono);
  return Poly::monomial(f.vars(), lf.mono.quotient_of(l), Rational(1) / lf.coeff) * f -
         Poly::monomial(g.vars(), lg.mono.quotient_of(l), Rational(1) / lg.coeff) * g;
}

Poly normal_form(const Poly& f, std::span<const Poly> divisors, const MonomialOrder& order) {
  std::vector<IPoly> ds;
  ds.reserve(divisors.size());
  for (const auto& d : divisors) {
    if (!same_varset(d.vars(), f.vars())) throw StructuralError("divisor over different variables");
    if (!d.is_zero()) ds.push_back(to_ipoly(d, order));
  }
  std::vector<const IPoly*> ptrs;
  for (const auto& d : ds) ptrs.push_back(&d);
  Reducer reducer(order);
  IPoly r = reducer.reduce(to_ipoly(f, order), ptrs);
  return to_poly(r, f.vars()).monic();
}

GroebnerBasis buchberger(std::span<const Poly> gens, const MonomialOrder& order,
                         const GroebnerOptions& options) {
  check_inputs(gens, order);
  std::vector<IPoly> inputs;
  inputs.reserve(gens.size());
  for (const auto& g : gens) inputs.push_back(to_ipoly(g, order));
  // Deterministic regardless of input permutation: process generators in a
  // canonical order.
  std::sort(inputs.begin(), inputs.end(), [&order](const IPoly& a, const IPoly& b) {
    std::size_t n = std::min(a.size(), b.size());
    for (std::size_t k = 0; k < n; ++k) {
      int c = order.compare(a[k].mono, b[k].mono);
      if (c != 0) return c < 0;
      int cc = cmp(a[k].coeff, b[k].coeff);
      if (cc != 0) return cc < 0;
    }
    return a.size() < b.size();
  });
  Buchberger engine(order, options);
  std::vector<IPoly> basis = engine.run(std::move(inputs));
  GroebnerBasis out;
  out.order = order;
  out.reduced = true;
  for (const auto& b : basis) out.generators.push_back(to_poly(b, gens.front().vars()).monic());
  return out;
}

std::vector<Poly> eliminate(std::span<const Poly> gens, std::span<const std::string> drop,
                            const GroebnerOptions& options) {
  if (gens.empty()) throw StructuralError("empty generator list");
  const VarSetPtr& vars = gens.front().vars();
  std::vector<bool> dropped(vars->size(), false);
  for (const auto& name : drop) dropped[vars->index(name)] = true;

  std::vector<std::string> names;
  std::vector<std::size_t> blocks;
  for (std::size_t i = 0; i < vars->size(); ++i) {
    if (dropped[i]) names.push_back(vars->name(i));
  }
  if (!names.empty()) blocks.push_back(names.size());
  std::size_t start = 0;
  for (std::size_t len : vars->order().blocks()) {
    std::size_t kept = 0;
    for (std::size_t i = start; i < start + len; ++i) {
      if (!dropped[i]) {
        names.push_back(vars->name(i));
        ++kept;
      }
    }
    if (kept > 0) blocks.push_back(kept);
    start += len;
  }
  VarSetPtr elim_vars = VarSet::make(names, blocks);

  std::vector<Poly> embedded;
  embedded.reserve(gens.size());
  for (const auto& g : gens) embedded.push_back(embed(g, elim_vars));
  GroebnerBasis gb = buchberger(embedded, elim_vars->order(), options);

  const std::size_t ndrop = drop.size();
  std::vector<Poly> out;
  for (const auto& g : gb.generators) {
    bool free = true;
    for (std::size_t i = 0; i < ndrop && free; ++i) free = !g.involves(i);
    if (free) out.push_back(embed(g, vars).primitive());
  }
  return out;
}

bool is_groebner_basis(std::span<const Poly> basis, const MonomialOrder& order) {
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = i + 1; j < basis.size(); ++j) {
      if (!normal_form(s_polynomial(basis[i], basis[j], order), basis, order).is_zero()) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace singtraj
