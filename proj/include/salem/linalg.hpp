#pragma once

#include <optional>
#include <vector>

#include "salem/matrix.hpp"

namespace salem {

// Fraction-free (Bareiss) determinant.
Int determinant(const IntMatrix& m);
Rat determinant(const RatMatrix& m);

std::size_t rank(const RatMatrix& m);
std::size_t rank(const IntMatrix& m);

std::optional<RatMatrix> inverse(const RatMatrix& m);
// Throws PreconditionError on singular input.
RatMatrix inverse_or_throw(const RatMatrix& m);

// Columns form a basis of {x : m x = 0} over Q (reduced echelon basis).
RatMatrix nullspace(const RatMatrix& m);
// Some solution of m x = b, or nullopt.
std::optional<RatVector> solve(const RatMatrix& m, const RatVector& b);

// Row Hermite normal form: nonzero rows only, positive pivots, entries
// above each pivot reduced into [0, pivot).
IntMatrix hermite_rows(const IntMatrix& m);

// Upper-triangular row HNF of the Z-span of the rows of m together with
// modulus * Z^n. Entries stay bounded by the modulus throughout.
IntMatrix hermite_rows_modular(const IntMatrix& m, const Int& modulus);

struct SmithForm {
  IntMatrix diagonal;   // U * A * V
  IntMatrix left;       // U, unimodular
  IntMatrix right;      // V, unimodular
  IntVector invariants; // nonzero diagonal entries d1 | d2 | ..., all positive
};
SmithForm smith_form(const IntMatrix& m);

// Columns form a Z-basis of {x in Z^n : m x = 0}.
IntMatrix integer_kernel(const IntMatrix& m);
// Columns of the result form a Z-basis of (Q-span of the columns of b) ∩ Z^n.
IntMatrix saturate(const IntMatrix& b);
// Columns of b are linearly independent and span a primitive sublattice.
bool is_primitive(const IntMatrix& b);

// Z-basis (as columns) of the group generated by the rational columns of g.
RatMatrix z_basis(const RatMatrix& g);
// Z-basis (as columns, upper triangular) of Z^n + span of the rational columns of g.
RatMatrix z_basis_over_standard(const RatMatrix& g);

struct Inertia {
  int positive = 0;
  int negative = 0;
  int zero = 0;
};
// Exact inertia of a symmetric rational matrix by congruence diagonalisation.
Inertia inertia(const RatMatrix& sym);
Inertia inertia(const IntMatrix& sym);
// Diagonal entries of some congruence diagonalisation (zero entries kept).
RatVector congruence_diagonal(const RatMatrix& sym);

// Characteristic polynomial det(x I - m), ascending coefficients, by the
// division-free Berkowitz algorithm.
IntVector charpoly_coefficients(const IntMatrix& m);
RatVector charpoly_coefficients(const RatMatrix& m);

// Entrywise reduction into [0, modulus).
IntMatrix mod_matrix(const IntMatrix& m, const Int& modulus);
IntMatrix mul_mod(const IntMatrix& a, const IntMatrix& b, const Int& modulus);
IntMatrix pow_mod(IntMatrix base, Int exponent, const Int& modulus);

}  // namespace salem
