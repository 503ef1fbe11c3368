#pragma once

#include <optional>
#include <string>
#include <vector>

#include "salem/lattice.hpp"
#include "salem/polynomial.hpp"

namespace salem {

bool is_isometry(const Lattice& lattice, const RatMatrix& m);
bool is_isometry(const Lattice& lattice, const IntMatrix& m);

// Isometry of L (x) Q given in lattice coordinates, acting on columns.
class Isometry {
 public:
  // Throws PreconditionError unless m^T G m = G.
  Isometry(Lattice lattice, RatMatrix matrix);
  Isometry(Lattice lattice, const IntMatrix& matrix) : Isometry(std::move(lattice), to_rat(matrix)) {}

  const Lattice& lattice() const { return lattice_; }
  const RatMatrix& matrix() const { return matrix_; }
  bool is_integral() const { return to_int(matrix_).has_value(); }
  // Throws PreconditionError when not integral.
  IntMatrix integral_matrix() const;
  // Adjoint G^-1 m^T G, which is the inverse.
  RatMatrix inverse() const;
  RatPolynomial charpoly() const;

 private:
  Lattice lattice_;
  RatMatrix matrix_;
};

// Element a(w) of Z[w] with w = f + f^-1.
struct TwistElement {
  IntPolynomial polynomial;
};

RatMatrix evaluate(const TwistElement& a, const Isometry& f);

// ker p(f) as a saturated sublattice, with f restricted to it.
struct KernelSublattice {
  Sublattice sublattice;
  RatMatrix restriction;  // in the sublattice basis
};
KernelSublattice kernel_sublattice(const Isometry& f, const IntPolynomial& p);

struct Twist {
  Lattice lattice;
  Isometry isometry;
};
// Gram G'[i][j] = <a e_i, e_j>; f is unchanged.
Twist twist(const Isometry& f, const TwistElement& a);

// Field norm of a(w) from Q(w), where w has minimal polynomial r.
Int twist_norm(const IntPolynomial& trace_poly, const TwistElement& a);

struct PowerResult {
  Int exponent;          // least n with f^n in O(L)
  IntMatrix power;       // f^n
  Int module_index;      // [Z[f]L : L]
  Int exponent_bound;    // multiple of n from the group-order argument
};
// Least n with f^n integral. f must have an integral characteristic
// polynomial. Works modulo [Z[f]L : L] and only forms f^n exactly at the end.
PowerResult power_to_integral(const Isometry& f);
// Same search but without forming f^n.
Int integral_power_exponent(const Isometry& f);

// The prime of k = Q(w) generated by t (of norm +-p) splits in Q(f): some
// root w0 of the trace polynomial modulo p has t(w0) = 0 and w0^2 - 4 a
// nonzero square modulo p.
bool splits_in_extension(const IntPolynomial& trace_poly, const TwistElement& t, const Int& p);

struct TwistSplitReport {
  bool passed = false;
  Int norm;
  Int twisted_determinant;
  unsigned p_valuation = 0;
  bool global_determinant_ok = false;
  bool hyperbolic_ok = false;
  FiniteQuadraticForm p_form;
  Lattice twisted;
  std::vector<std::string> notes;
};
// Twist by t^n for t of norm +-p and compare with the hyperbolic form
// (1/p^n) [[0,1],[1,0]] on (Z/p^n)^2. Hypothesis violations are collected
// and thrown together as a PreconditionError.
TwistSplitReport twist_split_certificate(const Isometry& f, const TwistElement& t, unsigned n, const Int& p);

// Basis of the symmetric rational matrices G with f^T G f = G, each scaled
// to a primitive integer matrix.
std::vector<IntMatrix> invariant_symmetric_forms(const RatMatrix& f);
std::vector<IntMatrix> invariant_symmetric_forms(const IntMatrix& f);

// Smallest (by sup norm, then lexicographically) integer combination of
// the invariant forms that is even, non-degenerate and has the requested
// signature, or nullopt when none lies in the box.
std::optional<IntMatrix> find_invariant_form(const IntMatrix& f, const Signature& signature, long box = 10);

}  // namespace salem
