#pragma once

#include <string>
#include <vector>

#include "salem/isometry.hpp"

namespace salem {

enum class PositivityStatus { positive, not_positive, inconclusive };
enum class PositivityMethod { determinant_bound, exhaustive_search, cyclic_only };
enum class WitnessKind { cyclic, geodesic_crossing };

std::string to_string(PositivityStatus status);
std::string to_string(PositivityMethod method);
std::string to_string(WitnessKind kind);

struct RootWitness {
  IntVector root;
  WitnessKind kind;
};

struct ObstructionReport {
  PositivityStatus status = PositivityStatus::inconclusive;
  PositivityMethod method = PositivityMethod::cyclic_only;
  std::vector<RootWitness> witnesses;  // one per orbit of f when reduction succeeds
  IntVector box;                       // half-widths of the coordinate box searched
  Int lattice_determinant;
  Int salem_discriminant;              // disc s, 0 when not applicable
  std::size_t candidates = 0;          // roots found in the box before reduction
  std::vector<std::string> notes;
};

// Roots r with r + f r + ... + f^i r = 0 for some 0 < i < orbit_bound.
// Such roots lie in the kernel of the non-trivial cyclotomic part of the
// characteristic polynomial, which must then be definite.
std::vector<IntVector> cyclic_roots(const Isometry& f, long orbit_bound = 120);

// Positive when |det S| > 4 |disc s|, inconclusive otherwise. S hyperbolic
// and the characteristic polynomial of f an irreducible Salem polynomial.
ObstructionReport determinant_bound_test(const Isometry& f);

struct SearchOptions {
  long max_box_volume = 200'000'000;  // points in the first rank-2 coordinates
  double inflation = 1.01;            // applied to the floating point box
  bool reduce_orbits = true;
};

// All roots whose orthogonal hyperplane crosses the geodesic plane of f,
// one per f-orbit. The search region contains a representative of every
// orbit; the crossing test itself is exact.
ObstructionReport obstructing_root_search(const Isometry& f, const SearchOptions& options = {});

// Negative definite lattices: positive iff there are no cyclic roots.
// Hyperbolic Salem case: determinant bound, then the exhaustive search.
ObstructionReport is_positive(const Isometry& f, const SearchOptions& options = {}, long orbit_bound = 120);

// Exact sign of pi(r)^2 where pi projects onto the geodesic plane.
int geodesic_norm_sign(const Isometry& f, const IntVector& r);

}  // namespace salem
