#pragma once

#include <optional>
#include <string>
#include <vector>

#include "salem/polynomial.hpp"

namespace salem {

// ---- resultants and discriminants ----------------------------------------

// Exact resultant; both inputs nonzero.
Int resultant(const IntPolynomial& p, const IntPolynomial& q);
// (-1)^{d(d-1)/2} res(p, p'); p monic of degree >= 1.
Int discriminant(const IntPolynomial& p);

// ---- real roots --------------------------------------------------------------

struct Interval {
  Rat lo;
  Rat hi;
  Rat width() const { return hi - lo; }
  bool contains(const Rat& x) const { return lo <= x && x <= hi; }
};

struct RootIsolation {
  // Sorted, pairwise disjoint; each contains exactly one real root. A
  // degenerate interval [a, a] marks an exact rational root.
  std::vector<Interval> intervals;
  bool multiplicity_free = true;  // true when the input was squarefree
};

// Sign of p at a rational point.
int sign_at(const IntPolynomial& p, const Rat& x);
IntPolynomial squarefree_part(const IntPolynomial& p);

class SturmSequence {
 public:
  explicit SturmSequence(const IntPolynomial& p);
  // Number of distinct real roots in (a, b].
  int count(const Rat& a, const Rat& b) const;
  int count_above(const Rat& a) const;       // roots in (a, +inf)
  int count_at_most(const Rat& b) const;     // roots in (-inf, b]
  int count_all() const;

 private:
  int variations_at(const Rat& x) const;
  int variations_at_infinity(int direction) const;
  std::vector<IntPolynomial> seq_;
};

// Cauchy bound: every complex root has |z| < root_bound(p).
Rat root_bound(const IntPolynomial& p);
RootIsolation isolate_real_roots(const IntPolynomial& p);
// Shrink an isolating interval of a squarefree p until its width is at most eps.
Interval refine_root(const IntPolynomial& p, Interval iv, const Rat& eps);

// ---- factorisation over Z ----------------------------------------------------

struct PolyFactor {
  IntPolynomial factor;  // primitive, positive leading coefficient
  unsigned multiplicity;
};
struct Factorisation {
  Int unit;  // signed content
  std::vector<PolyFactor> factors;  // sorted by degree, then coefficients
};
Factorisation factor(const IntPolynomial& p);
bool is_irreducible(const IntPolynomial& p);
// Squarefree decomposition of a primitive polynomial: (g_i, i) with p = prod g_i^i.
std::vector<PolyFactor> squarefree_decomposition(const IntPolynomial& p);

// ---- Salem polynomials -------------------------------------------------------

bool is_reciprocal(const IntPolynomial& p);

// r with p(x) = x^m r(x + 1/x) for reciprocal p of degree 2m.
IntPolynomial trace_polynomial(const IntPolynomial& p);
// x^m r(x + 1/x) for deg r = m.
IntPolynomial expand_trace_polynomial(const IntPolynomial& r);

struct SalemCertificate {
  IntPolynomial polynomial;
  int degree = 0;
  IntPolynomial trace_polynomial;
  Interval lambda;              // isolates the root > 1
  Interval trace_root;          // isolates lambda + 1/lambda (> 2)
  bool quadratic_degenerate = false;
};

enum class SalemRejection { none, constant, not_monic, not_reciprocal, reducible, wrong_root_pattern };
std::string to_string(SalemRejection reason);

struct SalemCheck {
  std::optional<SalemCertificate> certificate;
  SalemRejection reason = SalemRejection::none;
  std::string detail;
  bool accepted() const { return certificate.has_value(); }
};

SalemCheck is_salem(const IntPolynomial& p);
// Certificate or PreconditionError naming the rejection.
SalemCertificate require_salem(const IntPolynomial& p);

// Power sums sum_i alpha_i^k for k = 0..count-1 over the roots of a monic p.
IntVector power_sums(const IntPolynomial& p, std::size_t count);
// prod_i (x - alpha_i^n) for a monic p.
IntPolynomial root_power_polynomial(const IntPolynomial& p, unsigned long n);
// Minimal polynomial of lambda^n for a Salem polynomial s.
IntPolynomial power_min_poly(const IntPolynomial& s, unsigned long n);

struct SquareClassResult {
  bool square = false;
  bool zero = false;  // s(1) s(-1) = 0: not in Q^x
  Int value;          // -s(1) s(-1)
};
SquareClassResult square_class_test(const IntPolynomial& s);

bool is_cyclotomic_product(const IntPolynomial& c);
// The m-th cyclotomic polynomial.
IntPolynomial cyclotomic(unsigned long m);

}  // namespace salem
