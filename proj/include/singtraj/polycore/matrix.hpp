#pragma once

#include <vector>

#include "singtraj/polycore/poly.hpp"

namespace singtraj {

using PolyMatrix = std::vector<std::vector<Poly>>;

/// Exact symbolic determinant. Cofactor expansion below 3x3, fraction-free
/// Bareiss elimination otherwise. Throws StructuralError for non-square input.
Poly determinant(const PolyMatrix& m);

/// a / b when b divides a exactly; throws std::domain_error otherwise.
Poly divide_exact(const Poly& a, const Poly& b);

}  // namespace singtraj
