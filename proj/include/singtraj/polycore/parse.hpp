#pragma once

#include <map>
#include <string>
#include <string_view>

#include "singtraj/polycore/poly.hpp"

namespace singtraj {

/// Parses the polynomial text format: rational or decimal literals, `+ - *`,
/// `^` with a nonnegative integer exponent, parentheses, division by
/// constants, and identifiers naming either a variable of `vars` or an entry
/// of `constants`. Throws ParseError with line/column.
Poly parse_poly(std::string_view text, const VarSetPtr& vars,
                const std::map<std::string, Rational>& constants = {});

}  // namespace singtraj
