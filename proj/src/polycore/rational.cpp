#include "singtraj/polycore/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace singtraj {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char ch : s) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  Rational result;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = s.substr(0, slash);
    auto den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) {
      throw std::invalid_argument("not a rational: " + std::string(text));
    }
    Integer d{std::string(den)};
    if (d == 0) throw std::invalid_argument("zero denominator: " + std::string(text));
    result = Rational(Integer(std::string(num)), d);
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    auto whole = s.substr(0, dot);
    auto frac = s.substr(dot + 1);
    if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
        (!frac.empty() && !all_digits(frac))) {
      throw std::invalid_argument("not a decimal: " + std::string(text));
    }
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    Integer digits(std::string(whole.empty() ? "0" : whole) + std::string(frac));
    result = Rational(digits, scale);
  } else {
    if (!all_digits(s)) throw std::invalid_argument("not a number: " + std::string(text));
    result = Rational(Integer(std::string(s)));
  }
  result.canonicalize();
  return negative ? Rational(-result) : result;
}

std::string to_string(const Integer& value) { return value.get_str(); }

std::string to_string(const Rational& value) { return value.get_str(); }

Integer floor(const Rational& value) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return r;
}

Integer ceil(const Rational& value) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return r;
}

double to_double(const Rational& value) { return value.get_d(); }

std::string to_decimal(const Rational& value, int places, DecimalMode mode) {
  if (places < 0) throw std::invalid_argument("negative decimal places");
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(places));
  Rational magnitude = abs(value) * scale;
  Integer digits;
  if (mode == DecimalMode::kTruncate) {
    digits = floor(magnitude);
  } else {
    digits = floor(magnitude + Rational(1, 2));
  }
  std::string body = digits.get_str();
  if (places > 0) {
    if (body.size() <= static_cast<std::size_t>(places)) {
      body.insert(0, static_cast<std::size_t>(places) + 1 - body.size(), '0');
    }
    body.insert(body.size() - static_cast<std::size_t>(places), ".");
  }
  bool negative = value < 0 && digits != 0;
  return negative ? "-" + body : body;
}

}  // namespace singtraj
