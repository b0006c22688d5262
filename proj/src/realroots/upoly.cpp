#include "singtraj/realroots/upoly.hpp"

#include <sstream>
#include <stdexcept>

#include "singtraj/polycore/errors.hpp"

namespace singtraj {

UPoly::UPoly(std::vector<Integer> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

void UPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

UPoly UPoly::from_rationals(const std::vector<Rational>& coeffs) {
  Integer den = 1;
  for (const auto& c : coeffs) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  std::vector<Integer> out;
  out.reserve(coeffs.size());
  for (const auto& c : coeffs) out.push_back(c.get_num() * (den / c.get_den()));
  return UPoly(std::move(out));
}

UPoly UPoly::from_poly(const Poly& p) {
  auto used = p.variables_used();
  if (used.size() > 1) throw StructuralError("polynomial is not univariate: " + p.to_string());
  if (used.empty()) return from_rationals({p.constant_term()});
  const std::size_t v = used.front();
  std::vector<Rational> coeffs(p.degree(v) + 1);
  for (const auto& t : p.terms()) coeffs[t.mono[v]] = t.coeff;
  return from_rationals(coeffs);
}

UPoly UPoly::monomial(unsigned degree, const Integer& coeff) {
  std::vector<Integer> c(degree + 1);
  c[degree] = coeff;
  return UPoly(std::move(c));
}

Poly UPoly::to_poly(const VarSetPtr& vars, std::string_view var) const {
  const std::size_t v = vars->index(var);
  std::vector<Term> terms;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (coeffs_[k] == 0) continue;
    Monomial m;
    m.set(v, static_cast<unsigned>(k));
    terms.push_back(Term{m, Rational(coeffs_[k])});
  }
  return Poly::from_terms(vars, std::move(terms));
}

Rational UPoly::evaluate(const Rational& x) const {
  Rational acc = 0;
  for (std::size_t k = coeffs_.size(); k-- > 0;) acc = acc * x + coeffs_[k];
  return acc;
}

int UPoly::sign_at(const Rational& x) const {
  // Homogenized Horner over the integers: sum c_k p^k q^(n-k).
  if (coeffs_.empty()) return 0;
  const Integer& p = x.get_num();
  const Integer& q = x.get_den();
  Integer acc = coeffs_.back();
  Integer qpow = 1;
  for (std::size_t k = coeffs_.size() - 1; k-- > 0;) {
    qpow *= q;
    acc *= p;
    mpz_addmul(acc.get_mpz_t(), coeffs_[k].get_mpz_t(), qpow.get_mpz_t());
  }
  return sgn(acc);
}

UPoly UPoly::derivative() const {
  if (coeffs_.size() <= 1) return UPoly();
  std::vector<Integer> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = coeffs_[k] * static_cast<unsigned long>(k);
  return UPoly(std::move(d));
}

Integer UPoly::content() const {
  Integer g = 0;
  for (const auto& c : coeffs_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

UPoly UPoly::primitive() const {
  if (coeffs_.empty()) return *this;
  Integer g = content();
  if (coeffs_.back() < 0) g = -g;
  UPoly r = *this;
  if (g != 1) {
    for (auto& c : r.coeffs_) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  }
  return r;
}

UPoly UPoly::operator-() const {
  UPoly r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

UPoly operator+(const UPoly& a, const UPoly& b) {
  std::vector<Integer> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t k = 0; k < a.coeffs_.size(); ++k) c[k] += a.coeffs_[k];
  for (std::size_t k = 0; k < b.coeffs_.size(); ++k) c[k] += b.coeffs_[k];
  return UPoly(std::move(c));
}

UPoly operator-(const UPoly& a, const UPoly& b) { return a + (-b); }

UPoly operator*(const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return UPoly();
  std::vector<Integer> c(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
      mpz_addmul(c[i + j].get_mpz_t(), a.coeffs_[i].get_mpz_t(), b.coeffs_[j].get_mpz_t());
    }
  }
  return UPoly(std::move(c));
}

UPoly operator*(const Integer& s, const UPoly& a) {
  UPoly r = a;
  for (auto& c : r.coeffs_) c *= s;
  r.trim();
  return r;
}

UPoly UPoly::pow(unsigned e) const {
  UPoly result({Integer(1)});
  UPoly base = *this;
  while (e > 0) {
    if (e & 1U) result = result * base;
    e >>= 1U;
    if (e > 0) base = base * base;
  }
  return result;
}

UPoly UPoly::compose(const UPoly& q) const {
  UPoly acc;
  for (std::size_t k = coeffs_.size(); k-- > 0;) acc = acc * q + UPoly({coeffs_[k]});
  return acc;
}

std::string UPoly::to_string(std::string_view var) const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = coeffs_.size(); k-- > 0;) {
    const Integer& c = coeffs_[k];
    if (c == 0) continue;
    Integer mag = abs(c);
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (k == 0) {
      os << mag.get_str();
      continue;
    }
    if (mag != 1) os << mag.get_str() << '*';
    os << var;
    if (k > 1) os << '^' << k;
  }
  return os.str();
}

UPoly pseudo_remainder(const UPoly& a, const UPoly& b) {
  if (b.is_zero()) throw std::domain_error("pseudo-division by zero polynomial");
  if (a.degree() < b.degree()) return a;
  std::vector<Integer> r = a.coeffs();
  const int db = b.degree();
  const Integer& lb = b.lead();
  int dr = a.degree();
  int steps = a.degree() - db + 1;
  while (dr >= db && dr >= 0) {
    Integer lr = r[dr];
    for (int k = 0; k <= dr; ++k) r[k] *= lb;
    for (int k = 0; k <= db; ++k) {
      mpz_submul(r[dr - db + k].get_mpz_t(), lr.get_mpz_t(), b.coeffs()[k].get_mpz_t());
    }
    --steps;
    --dr;
    while (dr >= 0 && r[dr] == 0) --dr;
  }
  r.resize(static_cast<std::size_t>(dr + 1));
  if (steps > 0) {
    Integer f;
    mpz_pow_ui(f.get_mpz_t(), lb.get_mpz_t(), static_cast<unsigned long>(steps));
    for (auto& c : r) c *= f;
  }
  return UPoly(std::move(r));
}

UPoly exact_quotient(const UPoly& a, const UPoly& b) {
  if (b.is_zero()) throw std::domain_error("division by zero polynomial");
  if (a.is_zero()) return UPoly();
  if (a.degree() < b.degree()) throw std::domain_error("inexact polynomial division");
  std::vector<Rational> r(a.coeffs().begin(), a.coeffs().end());
  std::vector<Rational> q(static_cast<std::size_t>(a.degree() - b.degree() + 1));
  const Rational lb(b.lead());
  for (int k = a.degree() - b.degree(); k >= 0; --k) {
    Rational c = r[k + b.degree()] / lb;
    q[k] = c;
    if (c == 0) continue;
    for (int j = 0; j <= b.degree(); ++j) r[k + j] -= c * b.coeffs()[j];
  }
  for (const auto& c : r) {
    if (c != 0) throw std::domain_error("inexact polynomial division");
  }
  return UPoly::from_rationals(q).primitive();
}

UPoly gcd(const UPoly& a, const UPoly& b) {
  UPoly x = a.primitive();
  UPoly y = b.primitive();
  if (x.degree() < y.degree()) std::swap(x, y);
  while (!y.is_zero()) {
    UPoly r = pseudo_remainder(x, y).primitive();
    x = std::move(y);
    y = std::move(r);
  }
  return x;
}

}  // namespace singtraj
