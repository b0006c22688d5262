#pragma once

#include <span>
#include <string>

#include "singtraj/polycore/poly.hpp"
#include "singtraj/polycore/rational.hpp"
#include "singtraj/realroots/upoly.hpp"

namespace singtraj {

/// Closed interval with rational endpoints; every operation encloses the
/// exact image.
class Interval {
 public:
  Interval() = default;
  Interval(const Rational& point) : lo_(point), hi_(point) {}  // NOLINT
  Interval(const Rational& lo, const Rational& hi);

  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }
  Rational width() const { return hi_ - lo_; }
  Rational mid() const { return (lo_ + hi_) / 2; }
  Rational mag() const;

  bool contains(const Rational& x) const { return lo_ <= x && x <= hi_; }
  bool contains_zero() const { return contains(0); }
  bool overlaps(const Interval& other) const { return lo_ <= other.hi_ && other.lo_ <= hi_; }
  /// +1 or -1 when the sign is certain, 0 otherwise.
  int sign() const;

  Interval operator-() const { return Interval(-hi_, -lo_); }
  friend Interval operator+(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a, const Interval& b);
  friend Interval operator*(const Interval& a, const Interval& b);
  Interval& operator+=(const Interval& b) { return *this = *this + b; }
  Interval& operator-=(const Interval& b) { return *this = *this - b; }
  Interval& operator*=(const Interval& b) { return *this = *this * b; }
  /// Requires 0 outside b.
  friend Interval operator/(const Interval& a, const Interval& b);

  Interval sqr() const;
  Interval pow(unsigned e) const;

  friend Interval hull(const Interval& a, const Interval& b);
  friend bool operator==(const Interval& a, const Interval& b) = default;

  std::string to_string() const;

 private:
  Rational lo_;
  Rational hi_;
};

/// Snaps endpoints outward onto the grid 2^-bits.
Interval round_outward(const Interval& x, unsigned bits);

/// Horner evaluation.
Interval evaluate(const UPoly& p, const Interval& x);
/// Term-wise evaluation over a box with one interval per variable.
Interval evaluate(const Poly& p, std::span<const Interval> box);

/// Smallest b with 2^-b <= width (0 for width >= 1).
unsigned precision_bits(const Rational& width);

/// Enclosures accurate to roughly 2^-bits.
Interval pi_interval(unsigned bits);
Interval sqrt(const Interval& x, unsigned bits);
Interval sin(const Interval& x, unsigned bits);
Interval cos(const Interval& x, unsigned bits);

}  // namespace singtraj
