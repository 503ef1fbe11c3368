#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "salem/linalg.hpp"

namespace salem {

struct Signature {
  int positive = 0;
  int negative = 0;
  bool operator==(const Signature&) const = default;
};

// Integral lattice given by a symmetric, non-degenerate Gram matrix.
class Lattice {
 public:
  Lattice() = default;
  // Throws PreconditionError unless gram is square, symmetric and non-degenerate.
  explicit Lattice(IntMatrix gram);

  std::size_t rank() const { return gram_.rows(); }
  const IntMatrix& gram() const { return gram_; }
  const Int& determinant() const { return det_; }
  Signature signature() const;
  bool is_even() const;
  bool is_unimodular() const { return abs(det_) == 1; }
  bool is_definite() const;

  Int product(const IntVector& x, const IntVector& y) const;
  Int norm(const IntVector& x) const { return product(x, x); }
  Rat product(const RatVector& x, const RatVector& y) const;

  Lattice scaled(const Int& factor) const;
  Lattice operator-() const { return scaled(Int(-1)); }
  // Gram matrix of the sublattice spanned by the columns of basis.
  IntMatrix restricted_gram(const IntMatrix& basis) const;

  bool operator==(const Lattice& other) const { return gram_ == other.gram_; }

 private:
  IntMatrix gram_;
  Int det_ = 1;
};

Int determinant(const Lattice& lattice);
Signature signature(const Lattice& lattice);
Lattice direct_sum(const Lattice& a, const Lattice& b);

// Columns (equivalently rows, the matrix being symmetric) give the dual
// basis in lattice coordinates: the inverse Gram matrix.
RatMatrix dual_basis(const Lattice& lattice);

namespace lattices {
Lattice hyperbolic_plane();  // U
// Root lattices are negative definite: minus the Cartan matrix.
Lattice a_n(std::size_t n);
Lattice d_n(std::size_t n);
Lattice e_n(std::size_t n);  // n in {6, 7, 8}
// Parses sums such as "3U+2E8", "U(3)+E6", "A1(-1)". Factors "(k)" rescale
// the form by k. Throws ParseError on unknown names.
Lattice named(std::string_view name);
}  // namespace lattices

// Finite abelian group (+) Z/d_i with a Q/2Z-valued quadratic form.
// Generators are independent, so an element is a coefficient vector
// reduced modulo the orders.
struct FiniteQuadraticForm {
  IntVector orders;      // each >= 2
  RatVector q;           // q(g_i) in [0, 2)
  RatMatrix b;           // b(g_i, g_j) in [0, 1)
  RatMatrix lifts;       // column i lifts g_i to the ambient dual (may be empty)

  std::size_t size() const { return orders.size(); }
  Int order() const;
  bool is_trivial() const { return orders.empty(); }
  IntVector invariant_factors() const;

  IntVector reduce(const IntVector& coeffs) const;
  Rat value(const IntVector& coeffs) const;                         // in [0, 2)
  Rat bilinear(const IntVector& x, const IntVector& y) const;       // in [0, 1)
  // Lift of an element (needs lifts).
  RatVector lift(const IntVector& coeffs) const;
  // Same group, values negated.
  FiniteQuadraticForm negated() const;
};

Rat reduce_mod(const Rat& value, const Int& modulus);

// Form on (Z-span of the columns of lifts + L) / L for vectors with
// integral products against L. The columns must be independent modulo L
// with the orders reported; this is checked.
FiniteQuadraticForm form_from_lifts(const Lattice& lattice, const RatMatrix& lifts);

// Smith normal form presentation of L^v / L; L must be even.
FiniteQuadraticForm discriminant_form(const Lattice& lattice);

FiniteQuadraticForm p_primary_part(const FiniteQuadraticForm& form, const Int& p);
// Concatenation of the p-primary parts over all primes dividing the order.
FiniteQuadraticForm primary_decomposition(const FiniteQuadraticForm& form);
FiniteQuadraticForm direct_sum(const FiniteQuadraticForm& a, const FiniteQuadraticForm& b);

// Homomorphism between two presentations; column i holds the coordinates of
// the image of source generator i. Glue maps are anti-isometries.
struct GlueMap {
  FiniteQuadraticForm source;
  FiniteQuadraticForm target;
  IntMatrix images;
};

bool is_homomorphism(const GlueMap& map);
bool is_bijective(const GlueMap& map);
// q_target(phi x) = sign * q_source(x) for all x (checked on generators and pairs).
bool preserves_values(const GlueMap& map, int sign);
bool is_anti_isometry(const GlueMap& map);

// Order of the subgroup generated by the columns of gens inside the group.
Int subgroup_order(const IntVector& orders, const IntMatrix& gens);

// Isometry a -> b, prime by prime. Odd parts are matched through orthogonal
// splittings normalised to diag(1, ..., 1, d) on each scale; 2-parts by
// backtracking over generator images. The returned map is between the
// primary decompositions of a and b. Throws SearchExhausted when a 2-part is
// larger than max_part_order.
std::optional<GlueMap> find_isometry(const FiniteQuadraticForm& a, const FiniteQuadraticForm& b,
                                     const Int& max_part_order = Int(1) << 24);
std::optional<GlueMap> find_anti_isometry(const FiniteQuadraticForm& a, const FiniteQuadraticForm& b,
                                          const Int& max_part_order = Int(1) << 24);

struct Overlattice {
  Lattice lattice;
  RatMatrix basis;  // columns in coordinates of the original lattice
};

// Unimodular even overlattice of M (+) N defined by the graph of phi.
// phi.source / phi.target must carry lifts in M / N coordinates.
Overlattice glue(const Lattice& m, const Lattice& n, const GlueMap& phi);

// Overlattice generated by M and the rational columns of generators.
Overlattice overlattice_from_isotropic(const Lattice& m, const RatMatrix& generators);

struct Sublattice {
  Lattice lattice;
  IntMatrix basis;  // columns in ambient coordinates
};

class NotPrimitive : public PreconditionError {
 public:
  NotPrimitive(const std::string& what, IntMatrix saturation)
      : PreconditionError(what), saturation_(std::move(saturation)) {}
  const IntMatrix& saturation() const { return saturation_; }

 private:
  IntMatrix saturation_;
};

// Sublattice spanned by the columns of basis; rejects degenerate spans.
Sublattice sublattice(const Lattice& lattice, const IntMatrix& basis);
// Orthogonal complement of the primitive sublattice spanned by the columns
// of s. Throws NotPrimitive (carrying the saturation) or PreconditionError
// for degenerate spans.
Sublattice orthogonal_complement(const Lattice& lattice, const IntMatrix& s);

// All x with x.x = m, sorted lexicographically. L must be definite, except
// that an empty result is returned whenever m lies outside the value ideal.
std::vector<IntVector> enumerate_vectors_of_norm(const Lattice& lattice, const Int& m,
                                                 std::size_t limit = 10'000'000);

// gcd of all values x.x: gcd of the diagonal and twice the off-diagonal.
Int value_ideal(const Lattice& lattice);

// Local symbols. A place is a prime p, or 0 for the real place.
int legendre(const Int& a, const Int& p);
int jacobi(const Int& a, const Int& n);
int hilbert(const Rat& a, const Rat& b, const Int& place);
int hasse(const RatVector& diagonal, const Int& place);

}  // namespace salem
