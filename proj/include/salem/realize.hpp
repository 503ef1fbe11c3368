#pragma once

#include <optional>
#include <string>
#include <vector>

#include "salem/isometry.hpp"
#include "salem/polyarith.hpp"
#include "salem/positivity.hpp"

namespace salem {

enum class SurfaceKind { torus, k3, enriques };

std::string to_string(SurfaceKind kind);
// Accepts "torus", "k3" and "enriques"; throws ParseError otherwise.
SurfaceKind parse_surface_kind(const std::string& name);

// Second cohomology data of a surface class. The h11 values are the usual
// Hodge numbers of a 2-torus, a K3 surface and an Enriques surface.
struct SurfaceClass {
  SurfaceKind kind = SurfaceKind::k3;
  int b2 = 22;
  int h11 = 20;
  std::string lattice_name = "3U+2E8";

  static SurfaceClass of(SurfaceKind kind);
  Lattice lattice() const;
  Signature signature() const;
};

struct Decision {
  bool yes = false;
  int clause = 0;  // 1 or 2 when a clause of the criterion applied
  std::string reason;
};

// Whether some power of the Salem number of s is the dynamical degree of an
// automorphism of a surface in the class (projective if requested).
// Throws PreconditionError unless s is a Salem polynomial.
Decision stable_realizable(const IntPolynomial& s, const SurfaceClass& surface, bool projective);

struct RationalCriterion {
  bool exists = false;
  int clause = 0;
  bool hyperbolic_kernel = false;  // some witness has hyperbolic ker s(f)
  bool kernel_signature_three = false;  // some witness has ker s(f) of signature (3, d-3)
  std::string reason;
};

// Existence of f in O(L (x) Q) with characteristic polynomial
// s(x) (x-1)^(rk L - d), for L one of 3U, U+E8, 3U+2E8 (recognised as even
// unimodular of signature (3,3), (1,9) or (3,19)). Decision only.
RationalCriterion rational_isometry_criterion(const IntPolynomial& s, const Lattice& lattice);

// f = identity modulo 2.
bool mod2_trivial(const IntMatrix& f);
// Least m >= 1 with f^m = identity modulo 2. f must be invertible mod 2.
unsigned long mod2_order(const IntMatrix& f);

struct SplitPrime {
  Int p;
  Int trace_root;  // simple root of the trace polynomial mod p
  Int sqrt_disc;   // square root of trace_root^2 - 4 mod p
};

// Smallest prime p > lower_bound with p = 1 mod 8 |det_r|, p coprime to
// 2 disc s, a simple root a of the trace polynomial mod p and a^2 - 4 a
// nonzero square mod p. Throws SearchExhausted past cap.
SplitPrime find_split_prime(const IntPolynomial& s, const Int& det_r, const Int& lower_bound,
                            const Int& cap = Int(100'000'000));

// True when all four conditions hold for the evidence (independent recheck).
bool check_split_prime(const IntPolynomial& s, const Int& det_r, const SplitPrime& prime);

struct NormElement {
  TwistElement t;
  unsigned l = 0;  // |N(t)| = p^l
  Int norm;        // N(t) with sign
};

// First t(w) of degree < deg r with coefficients in [-box, box] (ordered by
// sup norm, then lexicographically) such that t generates the l-th power of
// the prime (p, w - a) for some 1 <= l <= l_max. For a quadratic s the
// trace field is Q and t = p.
std::optional<NormElement> find_norm_element(const IntPolynomial& s, const SplitPrime& prime, unsigned l_max,
                                             long box);

// Data for a realization pipeline: an s-lattice (S, f) and the lattice R0
// such that S glues with R = U (+) R0 to the cohomology lattice of the
// class. When twisting, the U summand becomes U(p^m) to absorb the new
// discriminant.
struct Seed {
  std::string label;
  SurfaceKind kind = SurfaceKind::k3;
  IntPolynomial salem;
  Lattice kernel;           // S
  IntMatrix isometry;       // f on S
  std::optional<Lattice> complement_base;  // R0; none when S is the whole lattice
};

// Seeds shipped with the library, keyed by label.
std::vector<Seed> curated_seeds();
// The curated seed for s and the class, if any.
std::optional<Seed> find_seed(const IntPolynomial& s, SurfaceKind kind);

struct PositivityEvidence {
  IntMatrix base;            // isometry of the kernel lattice, Salem char poly s
  unsigned long exponent = 1;  // base^exponent = f restricted to the kernel
  ObstructionReport report;  // positivity of base
};

struct GlueEvidence {
  Int p;
  Int trace_root;
  TwistElement t;
  unsigned l = 0;            // |N(t)| = p^l
  unsigned n = 1;            // S was twisted by t^n
  Int seed_determinant;      // det S before twisting
  IntMatrix complement_basis;  // columns in L coordinates
  Lattice complement;        // R' = U(p^(l n)) (+) R0
};

struct RealizationCertificate {
  int version = 1;
  IntPolynomial salem;          // s
  unsigned long power = 1;      // n
  IntPolynomial salem_power;    // s_n, minimal polynomial of lambda^n
  SurfaceKind kind = SurfaceKind::k3;
  bool projective = true;
  Lattice lattice;              // L
  IntMatrix isometry;           // f on L
  IntMatrix kernel_basis;       // ker s_n(f), columns in L coordinates
  Signature kernel_signature;
  std::optional<PositivityEvidence> positivity;
  std::optional<unsigned long> mod2_order;  // order of the underlying isometry mod 2
  std::optional<GlueEvidence> glue;
};

struct BuildOptions {
  Int prime_cap = Int(100'000'000);
  long norm_box = 40;
  unsigned l_max = 4;
  int prime_attempts = 8;
  bool enforce_mod2 = true;  // tori and Enriques surfaces: power until f = id mod 2
  SearchOptions search;
};

// Glue the seed, twisting first for projective K3 surfaces, and power the
// glued isometry until it is integral (and trivial mod 2 for tori and
// Enriques surfaces). Failures throw Error subclasses whose message starts
// with the stage name.
RealizationCertificate build_certificate(const Seed& seed, const BuildOptions& options = {});
// Same, looking up a curated seed for s; throws PreconditionError "no seed".
RealizationCertificate build_k3_certificate(const IntPolynomial& s, const BuildOptions& options = {});

struct CheckItem {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerificationReport {
  bool passed = false;
  std::vector<CheckItem> items;
};

VerificationReport verify_certificate(const RealizationCertificate& c, const SearchOptions& search = {});

// The certificate with f replaced by f^m and s_n by s_(n m).
RealizationCertificate power_certificate(const RealizationCertificate& c, unsigned long m);

}  // namespace salem
