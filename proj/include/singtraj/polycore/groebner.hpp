#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "singtraj/polycore/errors.hpp"
#include "singtraj/polycore/poly.hpp"

namespace singtraj {

struct GroebnerOptions {
  std::size_t max_basis = 5000;  // polynomials ever added to the basis
  unsigned max_degree = 64;      // total degree of any intermediate
};

struct GroebnerBasis {
  std::vector<Poly> generators;  // monic, sorted by increasing leading monomial
  MonomialOrder order;
  bool reduced = true;
};

/// Leading monomial of a nonzero polynomial under `order`.
const Term& leading_term(const Poly& p, const MonomialOrder& order);

Poly s_polynomial(const Poly& f, const Poly& g, const MonomialOrder& order);

/// Fully reduced remainder of `f` modulo `divisors` under `order`, scaled to
/// be monic (or zero).
Poly normal_form(const Poly& f, std::span<const Poly> divisors,
                 const MonomialOrder& order);

/// Reduced Groebner basis by Buchberger's algorithm with the normal selection
/// strategy and the Gebauer-Moeller criteria. `order` indexes the variables of
/// the generators' VarSet. Throws BlowUpError past the options' ceilings.
GroebnerBasis buchberger(std::span<const Poly> gens, const MonomialOrder& order,
                         const GroebnerOptions& options = {});

/// Generators of the elimination ideal obtained by dropping `drop`.
///
/// The dropped variables form the leading block; the remaining variables keep
/// their VarSet block structure. Results are primitive (integer coefficients,
/// content 1, positive leading coefficient), expressed over the input VarSet.
std::vector<Poly> eliminate(std::span<const Poly> gens,
                            std::span<const std::string> drop,
                            const GroebnerOptions& options = {});

/// Checks the Buchberger criterion: every S-polynomial reduces to zero.
bool is_groebner_basis(std::span<const Poly> basis, const MonomialOrder& order);

}  // namespace singtraj
