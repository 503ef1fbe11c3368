#pragma once

#include <random>
#include <vector>

#include "salem/polynomial.hpp"

namespace salem::modp {

// Polynomials over Z/m as ascending coefficient vectors in [0, m), trimmed.
using Poly = IntVector;

Poly reduce(const IntPolynomial& f, const Int& m);
Poly reduce(Poly f, const Int& m);
// Symmetric lift to (-m/2, m/2].
IntPolynomial lift_symmetric(const Poly& f, const Int& m);

int degree(const Poly& f);
bool is_one(const Poly& f);

Poly add(const Poly& a, const Poly& b, const Int& m);
Poly sub(const Poly& a, const Poly& b, const Int& m);
Poly mul(const Poly& a, const Poly& b, const Int& m);
Poly scale(const Poly& a, const Int& s, const Int& m);
// Division by b whose leading coefficient is a unit modulo m.
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b, const Int& m);
Poly rem(const Poly& a, const Poly& b, const Int& m);
Poly monic(const Poly& a, const Int& m);
Poly derivative(const Poly& a, const Int& m);
// base^e mod (f, m)
Poly powmod(Poly base, Int e, const Poly& f, const Int& m);

// The following need m prime.
Poly gcd(Poly a, Poly b, const Int& p);
// s, t with s a + t b = gcd(a, b) (monic).
struct Bezout {
  Poly g, s, t;
};
Bezout extended_gcd(const Poly& a, const Poly& b, const Int& p);
bool is_squarefree(const Poly& f, const Int& p);

// Monic irreducible factors of a squarefree monic f (p odd prime), sorted.
std::vector<Poly> factor_squarefree(const Poly& f, const Int& p, std::mt19937_64& rng);
// Degrees of the distinct irreducible factors of f (any f, p prime).
std::vector<int> irreducible_factor_degrees(const Poly& f, const Int& p);
// Distinct roots of f in [0, p), sorted.
IntVector roots(const IntPolynomial& f, const Int& p);
// Multiplicity of the root a of f modulo p.
unsigned root_multiplicity(const IntPolynomial& f, const Int& a, const Int& p);

}  // namespace salem::modp
