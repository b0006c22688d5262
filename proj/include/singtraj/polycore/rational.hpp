#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace singtraj {

using Integer = mpz_class;
using Rational = mpq_class;

/// Parses "7", "-3/4" or "1.25" exactly. Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

std::string to_string(const Integer& value);

/// "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& value);

Integer floor(const Rational& value);
Integer ceil(const Rational& value);

/// Nearest double; display use only.
double to_double(const Rational& value);

/// How a value is cut to a fixed number of decimal places.
enum class DecimalMode {
  kTruncate,  // toward zero
  kNearest,   // half away from zero
};

/// Fixed-point rendering, e.g. to_decimal(-113693/100000, 2, kTruncate) == "-1.13".
std::string to_decimal(const Rational& value, int places, DecimalMode mode);

}  // namespace singtraj
