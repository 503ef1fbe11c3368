#pragma once

#include <optional>

#include "salem/matrix.hpp"

namespace salem::detail {

// M with f K = K M for a basis K (columns) of an f-stable sublattice, or
// nullopt when the span is not stable.
std::optional<RatMatrix> restrict_to(const RatMatrix& f, const RatMatrix& k);

// Columns [I; 0] or [0; I] of a direct sum, mapped into overlattice
// coordinates by to_overlattice.
IntMatrix summand_basis(const RatMatrix& to_overlattice, std::size_t offset, std::size_t size);

}  // namespace salem::detail
