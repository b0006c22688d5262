#include "singtraj/realroots/interval.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>

namespace singtraj {

namespace {

Rational dyadic(const Integer& num, unsigned bits) {
  Integer den = 1;
  den <<= bits;
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational floor_to_grid(const Rational& x, unsigned bits) {
  Rational scaled = x;
  mpq_mul_2exp(scaled.get_mpq_t(), scaled.get_mpq_t(), bits);
  return dyadic(floor(scaled), bits);
}

Rational ceil_to_grid(const Rational& x, unsigned bits) {
  Rational scaled = x;
  mpq_mul_2exp(scaled.get_mpq_t(), scaled.get_mpq_t(), bits);
  return dyadic(ceil(scaled), bits);
}

Rational pow2_neg(unsigned bits) { return dyadic(Integer(1), bits); }

// atan(1/n) by its alternating series; the first omitted term bounds the error.
Interval atan_inverse(unsigned long n, unsigned bits) {
  const Rational eps = pow2_neg(bits);
  Rational x2(1, n * n);
  Rational power(1, n);
  Rational sum = 0;
  for (unsigned long k = 0;; ++k) {
    Rational term = power / (2 * k + 1);
    if (term < eps) return Interval(sum - term, sum + term);
    if (k % 2 == 0) {
      sum += term;
    } else {
      sum -= term;
    }
    power *= x2;
  }
}

Interval compute_pi(unsigned bits) {
  Interval a = atan_inverse(5, bits + 8);
  Interval b = atan_inverse(239, bits + 8);
  return round_outward(Interval(16) * a - Interval(4) * b, bits + 4);
}

// Taylor sum for sin (odd = true) or cos on a narrow argument, with the
// Lagrange remainder folded in.
Interval taylor(const Interval& r, bool odd, unsigned bits) {
  const Rational eps = pow2_neg(bits + 4);
  const Rational m = r.mag();
  Interval sum(0);
  Interval r2 = r.sqr();
  Interval power = odd ? r : Interval(1);
  Rational mag_power = odd ? m : Rational(1);
  Integer fact = 1;
  unsigned n = odd ? 1 : 0;
  for (unsigned k = 0;; ++k) {
    Interval term = power * Interval(Rational(1) / Rational(fact));
    if (k % 2 == 0) {
      sum += term;
    } else {
      sum -= term;
    }
    // Next term bound.
    power = round_outward(power * r2, bits + 8);
    mag_power *= m * m;
    mag_power = ceil_to_grid(mag_power, bits + 8);
    fact *= (n + 1) * (n + 2);
    n += 2;
    Rational bound = mag_power / Rational(fact);
    if (bound < eps) {
      sum = sum + Interval(-bound, bound);
      return round_outward(sum, bits + 4);
    }
    sum = round_outward(sum, bits + 8);
  }
}

// sin or cos at a rational point.
Interval trig_point(const Rational& q, bool sine, unsigned bits) {
  const unsigned prec = bits + 8;
  Interval pi = pi_interval(prec + 16);
  Rational two_pi_mid = 2 * pi.mid();
  Integer k = floor(q / two_pi_mid + Rational(1, 2));
  unsigned extra = static_cast<unsigned>(mpz_sizeinbase(k.get_mpz_t(), 2));
  if (extra > 1) pi = pi_interval(prec + 16 + extra);
  Interval r = Interval(q) - Interval(Rational(2 * k)) * pi;
  Interval out = taylor(r, sine, prec);
  return Interval(std::max(out.lo(), Rational(-1)), std::min(out.hi(), Rational(1)));
}

// Appends +1/-1 to the hull when x may contain a peak of sin (offset 1/2 pi)
// or cos (offset 0); peaks are spaced by pi with alternating sign.
Interval with_extrema(Interval h, const Interval& x, const Rational& offset_halfpi, unsigned bits) {
  Interval pi = pi_interval(bits + 16);
  Interval half_pi = pi * Interval(Rational(1, 2));
  Integer k_lo = floor(x.lo() / pi.lo()) - 2;
  Integer k_hi = ceil(x.hi() / pi.lo()) + 2;
  for (Integer k = k_lo; k <= k_hi; ++k) {
    Interval peak = Interval(offset_halfpi) * half_pi + Interval(Rational(k)) * pi;
    if (!peak.overlaps(x)) continue;
    // k even: sin peaks at +1 / cos peaks at +1; k odd: -1.
    bool plus = mpz_even_p(k.get_mpz_t()) != 0;
    if (plus) {
      h = Interval(h.lo(), Rational(1));
    } else {
      h = Interval(Rational(-1), h.hi());
    }
  }
  return h;
}

}  // namespace

Interval::Interval(const Rational& lo, const Rational& hi) : lo_(lo), hi_(hi) {
  if (lo_ > hi_) throw std::invalid_argument("interval with lo > hi");
}

Rational Interval::mag() const { return std::max(abs(lo_), abs(hi_)); }

int Interval::sign() const {
  if (lo_ > 0) return 1;
  if (hi_ < 0) return -1;
  return 0;
}

Interval operator+(const Interval& a, const Interval& b) { return Interval(a.lo_ + b.lo_, a.hi_ + b.hi_); }

Interval operator-(const Interval& a, const Interval& b) { return Interval(a.lo_ - b.hi_, a.hi_ - b.lo_); }

Interval operator*(const Interval& a, const Interval& b) {
  if (a.lo_ == a.hi_ && b.lo_ == b.hi_) return Interval(a.lo_ * b.lo_);
  Rational p1 = a.lo_ * b.lo_;
  Rational p2 = a.lo_ * b.hi_;
  Rational p3 = a.hi_ * b.lo_;
  Rational p4 = a.hi_ * b.hi_;
  return Interval(std::min({p1, p2, p3, p4}), std::max({p1, p2, p3, p4}));
}

Interval operator/(const Interval& a, const Interval& b) {
  if (b.contains_zero()) throw std::domain_error("interval division by an interval containing zero");
  return a * Interval(1 / b.hi_, 1 / b.lo_);
}

Interval Interval::sqr() const {
  Rational a = lo_ * lo_;
  Rational b = hi_ * hi_;
  if (contains_zero()) return Interval(0, std::max(a, b));
  return Interval(std::min(a, b), std::max(a, b));
}

Interval Interval::pow(unsigned e) const {
  if (e == 0) return Interval(1);
  if (e % 2 == 0) return sqr().pow(e / 2);
  Interval r = *this;
  for (unsigned k = 1; k < e; ++k) r = r * *this;
  return r;
}

Interval hull(const Interval& a, const Interval& b) {
  return Interval(std::min(a.lo_, b.lo_), std::max(a.hi_, b.hi_));
}

std::string Interval::to_string() const {
  return "[" + singtraj::to_string(lo_) + ", " + singtraj::to_string(hi_) + "]";
}

Interval round_outward(const Interval& x, unsigned bits) {
  return Interval(floor_to_grid(x.lo(), bits), ceil_to_grid(x.hi(), bits));
}

Interval evaluate(const UPoly& p, const Interval& x) {
  if (p.is_zero()) return Interval(0);
  Interval acc(Rational(p.lead()));
  for (std::size_t k = p.coeffs().size() - 1; k-- > 0;) {
    acc = acc * x + Interval(Rational(p.coeffs()[k]));
  }
  return acc;
}

Interval evaluate(const Poly& p, std::span<const Interval> box) {
  if (box.size() != p.vars()->size()) throw std::invalid_argument("box dimension mismatch");
  // powers[v][e] = box[v]^e, filled on demand.
  std::vector<std::vector<Interval>> powers(box.size());
  auto power = [&](std::size_t v, unsigned e) -> const Interval& {
    auto& row = powers[v];
    if (row.empty()) row.push_back(Interval(1));
    while (row.size() <= e) row.push_back(box[v].pow(static_cast<unsigned>(row.size())));
    return row[e];
  };
  Interval acc(0);
  for (const auto& t : p.terms()) {
    Interval term(t.coeff);
    for (std::size_t v = 0; v < box.size(); ++v) {
      if (t.mono[v] > 0) term = term * power(v, t.mono[v]);
    }
    acc += term;
  }
  return acc;
}

unsigned precision_bits(const Rational& width) {
  unsigned bits = 0;
  Rational w = width;
  while (w < 1) {
    w *= 2;
    ++bits;
  }
  return bits;
}

Interval pi_interval(unsigned bits) {
  static std::mutex mutex;
  static std::map<unsigned, Interval> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.lower_bound(bits);
  if (it != cache.end()) return it->second;
  Interval pi = compute_pi(bits);
  cache.emplace(bits, pi);
  return pi;
}

Interval sqrt(const Interval& x, unsigned bits) {
  if (x.hi() < 0) throw std::domain_error("square root of a negative interval");
  Rational lo = std::max(x.lo(), Rational(0));
  Rational lo_scaled = lo;
  mpq_mul_2exp(lo_scaled.get_mpq_t(), lo_scaled.get_mpq_t(), 2 * bits);
  Integer lo_root;
  Integer lo_floor = floor(lo_scaled);
  mpz_sqrt(lo_root.get_mpz_t(), lo_floor.get_mpz_t());

  Rational hi_scaled = x.hi();
  mpq_mul_2exp(hi_scaled.get_mpq_t(), hi_scaled.get_mpq_t(), 2 * bits);
  Integer hi_ceil = ceil(hi_scaled);
  Integer hi_root;
  mpz_sqrt(hi_root.get_mpz_t(), hi_ceil.get_mpz_t());
  if (hi_root * hi_root < hi_ceil) hi_root += 1;
  return Interval(dyadic(lo_root, bits), dyadic(hi_root, bits));
}

Interval sin(const Interval& x, unsigned bits) {
  Interval pi = pi_interval(bits + 16);
  if (x.width() >= 2 * pi.lo()) return Interval(-1, 1);
  Interval h = hull(trig_point(x.lo(), true, bits), trig_point(x.hi(), true, bits));
  return with_extrema(h, x, 1, bits);
}

Interval cos(const Interval& x, unsigned bits) {
  Interval pi = pi_interval(bits + 16);
  if (x.width() >= 2 * pi.lo()) return Interval(-1, 1);
  Interval h = hull(trig_point(x.lo(), false, bits), trig_point(x.hi(), false, bits));
  return with_extrema(h, x, 0, bits);
}

}  // namespace singtraj
