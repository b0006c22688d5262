#include "singtraj/polycore/poly.hpp"

#include <algorithm>
#include <sstream>

#include "singtraj/polycore/errors.hpp"

namespace singtraj {

namespace {

void sort_and_merge(const MonomialOrder& order, std::vector<Term>& terms) {
  std::sort(terms.begin(), terms.end(), [&order](const Term& a, const Term& b) {
    return order.compare(a.mono, b.mono) > 0;
  });
  std::size_t out = 0;
  for (std::size_t i = 0; i < terms.size();) {
    std::size_t j = i + 1;
    Rational sum = terms[i].coeff;
    while (j < terms.size() && terms[j].mono == terms[i].mono) {
      sum += terms[j].coeff;
      ++j;
    }
    if (sum != 0) {
      terms[out].mono = terms[i].mono;
      terms[out].coeff = std::move(sum);
      ++out;
    }
    i = j;
  }
  terms.resize(out);
}

std::vector<Term> merge_terms(const MonomialOrder& order, const std::vector<Term>& a,
                              const std::vector<Term>& b, bool subtract) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    int c = order.compare(a[i].mono, b[j].mono);
    if (c > 0) {
      out.push_back(a[i++]);
    } else if (c < 0) {
      out.push_back(subtract ? Term{b[j].mono, -b[j].coeff} : b[j]);
      ++j;
    } else {
      Rational s = subtract ? Rational(a[i].coeff - b[j].coeff)
                            : Rational(a[i].coeff + b[j].coeff);
      if (s != 0) out.push_back(Term{a[i].mono, std::move(s)});
      ++i;
      ++j;
    }
  }
  for (; i < a.size(); ++i) out.push_back(a[i]);
  for (; j < b.size(); ++j) {
    out.push_back(subtract ? Term{b[j].mono, -b[j].coeff} : b[j]);
  }
  return out;
}

void append_monomial(std::ostream& os, const VarSet& vars, const Monomial& m) {
  bool first = true;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (m[i] == 0) continue;
    if (!first) os << '*';
    first = false;
    os << vars.name(i);
    if (m[i] > 1) os << '^' << m[i];
  }
}

}  // namespace

Poly::Poly(VarSetPtr vars) : vars_(std::move(vars)) {
  if (!vars_) throw StructuralError("polynomial without variable set");
}

Poly Poly::constant(VarSetPtr vars, const Rational& value) {
  Poly p(std::move(vars));
  if (value != 0) p.terms_.push_back(Term{Monomial{}, value});
  return p;
}

Poly Poly::variable(VarSetPtr vars, std::string_view name) {
  Monomial m;
  m.set(vars->index(name), 1);
  return monomial(std::move(vars), m, Rational(1));
}

Poly Poly::monomial(VarSetPtr vars, const Monomial& mono, const Rational& coeff) {
  Poly p(std::move(vars));
  if (coeff != 0) p.terms_.push_back(Term{mono, coeff});
  return p;
}

Poly Poly::from_terms(VarSetPtr vars, std::vector<Term> terms) {
  Poly p(std::move(vars));
  sort_and_merge(p.vars_->order(), terms);
  p.terms_ = std::move(terms);
  return p;
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.front().mono.is_one());
}

Rational Poly::constant_term() const {
  if (!terms_.empty() && terms_.back().mono.is_one()) return terms_.back().coeff;
  return Rational(0);
}

unsigned Poly::total_degree() const {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono.total_degree());
  return d;
}

unsigned Poly::degree(std::size_t var) const {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max<unsigned>(d, t.mono[var]);
  return d;
}

bool Poly::involves(std::size_t var) const { return degree(var) > 0; }

std::vector<std::size_t> Poly::variables_used() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < vars_->size(); ++i) {
    if (involves(i)) out.push_back(i);
  }
  return out;
}

void Poly::check_same(const Poly& other) const {
  if (!same_varset(vars_, other.vars_)) {
    throw StructuralError("polynomials over different variable sets");
  }
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

Poly& Poly::operator+=(const Poly& other) {
  check_same(other);
  terms_ = merge_terms(vars_->order(), terms_, other.terms_, false);
  return *this;
}

Poly& Poly::operator-=(const Poly& other) {
  check_same(other);
  terms_ = merge_terms(vars_->order(), terms_, other.terms_, true);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  a.check_same(b);
  if (a.is_zero() || b.is_zero()) return Poly(a.vars_);
  std::vector<Term> prod;
  prod.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& ta : a.terms_) {
    for (const auto& tb : b.terms_) {
      prod.push_back(Term{ta.mono * tb.mono, ta.coeff * tb.coeff});
    }
  }
  return Poly::from_terms(a.vars_, std::move(prod));
}

Poly& Poly::operator*=(const Poly& other) {
  *this = *this * other;
  return *this;
}

Poly& Poly::operator*=(const Rational& scalar) {
  if (scalar == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.coeff *= scalar;
  return *this;
}

bool operator==(const Poly& a, const Poly& b) {
  if (!same_varset(a.vars_, b.vars_)) return false;
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (!(a.terms_[i].mono == b.terms_[i].mono) || a.terms_[i].coeff != b.terms_[i].coeff) {
      return false;
    }
  }
  return true;
}

Poly Poly::pow(unsigned exponent) const {
  Poly result = constant(vars_, Rational(1));
  Poly base = *this;
  while (exponent > 0) {
    if (exponent & 1u) result *= base;
    exponent >>= 1u;
    if (exponent > 0) base *= base;
  }
  return result;
}

Poly Poly::diff(std::size_t var) const {
  if (var >= vars_->size()) throw StructuralError("variable index out of range");
  Poly r(vars_);
  for (const auto& t : terms_) {
    unsigned e = t.mono[var];
    if (e == 0) continue;
    Monomial m = t.mono;
    m.set(var, e - 1);
    r.terms_.push_back(Term{m, t.coeff * e});
  }
  return r;
}

Poly Poly::diff(std::string_view var) const { return diff(vars_->index(var)); }

double Poly::evaluate_approx(std::span<const double> point) const {
  if (point.size() != vars_->size()) {
    throw StructuralError("evaluation point has wrong dimension");
  }
  double sum = 0.0;
  for (const auto& t : terms_) {
    double v = t.coeff.get_d();
    for (std::size_t i = 0; i < vars_->size(); ++i) {
      for (unsigned k = 0; k < t.mono[i]; ++k) v *= point[i];
    }
    sum += v;
  }
  return sum;
}

Rational Poly::evaluate(std::span<const Rational> point) const {
  if (point.size() != vars_->size()) {
    throw StructuralError("evaluation point has wrong dimension");
  }
  std::vector<std::vector<Rational>> powers(vars_->size());
  for (std::size_t i = 0; i < vars_->size(); ++i) {
    unsigned d = degree(i);
    powers[i].resize(d + 1);
    powers[i][0] = 1;
    for (unsigned k = 1; k <= d; ++k) powers[i][k] = powers[i][k - 1] * point[i];
  }
  Rational sum = 0;
  for (const auto& t : terms_) {
    Rational v = t.coeff;
    for (std::size_t i = 0; i < vars_->size(); ++i) {
      if (t.mono[i] != 0) v *= powers[i][t.mono[i]];
    }
    sum += v;
  }
  return sum;
}

Poly Poly::substitute(std::size_t var, const Rational& value) const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  std::vector<Rational> powers{Rational(1)};
  for (const auto& t : terms_) {
    unsigned e = t.mono[var];
    while (powers.size() <= e) powers.push_back(powers.back() * value);
    Monomial m = t.mono;
    m.set(var, 0);
    out.push_back(Term{m, t.coeff * powers[e]});
  }
  return from_terms(vars_, std::move(out));
}

Poly Poly::primitive() const {
  if (terms_.empty()) return *this;
  Integer den_lcm = 1;
  for (const auto& t : terms_) {
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), t.coeff.get_den_mpz_t());
  }
  Integer content = 0;
  for (const auto& t : terms_) {
    Integer num = t.coeff.get_num() * (den_lcm / t.coeff.get_den());
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), num.get_mpz_t());
  }
  Rational scale(den_lcm, content);
  scale.canonicalize();
  if (terms_.front().coeff < 0) scale = -scale;
  Poly r = *this;
  r *= scale;
  return r;
}

Poly Poly::monic() const {
  if (terms_.empty()) return *this;
  Poly r = *this;
  r *= Rational(1) / terms_.front().coeff;
  return r;
}

std::vector<Poly> Poly::coefficients_in(std::size_t var) const {
  std::vector<std::vector<Term>> buckets(degree(var) + 1);
  for (const auto& t : terms_) {
    Monomial m = t.mono;
    unsigned e = m[var];
    m.set(var, 0);
    buckets[e].push_back(Term{m, t.coeff});
  }
  std::vector<Poly> out;
  out.reserve(buckets.size());
  for (auto& b : buckets) out.push_back(from_terms(vars_, std::move(b)));
  return out;
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    Rational mag = abs(t.coeff);
    bool negative = t.coeff < 0;
    if (first) {
      if (negative) os << '-';
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    if (t.mono.is_one()) {
      os << singtraj::to_string(mag);
      continue;
    }
    if (mag != 1) os << singtraj::to_string(mag) << '*';
    append_monomial(os, *vars_, t.mono);
  }
  return os.str();
}

Poly embed(const Poly& p, const VarSetPtr& target) {
  if (same_varset(p.vars(), target)) return p;
  const VarSet& src = *p.vars();
  std::vector<std::optional<std::size_t>> map(src.size());
  for (std::size_t i = 0; i < src.size(); ++i) map[i] = target->find(src.name(i));
  std::vector<Term> out;
  out.reserve(p.size());
  for (const auto& t : p.terms()) {
    Monomial m;
    for (std::size_t i = 0; i < src.size(); ++i) {
      if (t.mono[i] == 0) continue;
      if (!map[i]) {
        throw StructuralError("variable " + src.name(i) + " missing from target");
      }
      m.set(*map[i], t.mono[i]);
    }
    out.push_back(Term{m, t.coeff});
  }
  return Poly::from_terms(target, std::move(out));
}

Poly compose(const Poly& p, const std::map<std::string, Poly>& images,
             const VarSetPtr& target) {
  const VarSet& src = *p.vars();
  std::vector<Poly> base;
  base.reserve(src.size());
  for (std::size_t i = 0; i < src.size(); ++i) {
    auto it = images.find(src.name(i));
    if (it != images.end()) {
      base.push_back(embed(it->second, target));
    } else if (p.involves(i)) {
      base.push_back(Poly::variable(target, src.name(i)));
    } else {
      base.push_back(Poly(target));
    }
  }
  std::vector<std::vector<Poly>> powers(src.size());
  auto power = [&](std::size_t var, unsigned e) -> const Poly& {
    auto& cache = powers[var];
    if (cache.empty()) cache.push_back(Poly::constant(target, Rational(1)));
    while (cache.size() <= e) cache.push_back(cache.back() * base[var]);
    return cache[e];
  };
  Poly result(target);
  for (const auto& t : p.terms()) {
    Poly term = Poly::constant(target, t.coeff);
    for (std::size_t i = 0; i < src.size(); ++i) {
      if (t.mono[i] != 0) term *= power(i, t.mono[i]);
    }
    result += term;
  }
  return result;
}

}  // namespace singtraj
