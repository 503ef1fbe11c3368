#include "salem/lattice.hpp"

namespace salem {

int jacobi(const Int& a, const Int& n) {
  if (n <= 0 || mpz_even_p(n.get_mpz_t())) throw PreconditionError("Jacobi symbol needs an odd positive modulus");
  return mpz_jacobi(a.get_mpz_t(), n.get_mpz_t());
}

int legendre(const Int& a, const Int& p) {
  if (p == 2 || !is_prime(p)) throw PreconditionError("Legendre symbol needs an odd prime");
  return jacobi(a, p);
}

namespace {

// a = p^alpha * u with u a p-adic unit; returns alpha and sets u.
unsigned split(const Int& a, const Int& p, Int& u) {
  const unsigned alpha = valuation(a, p);
  u = a / pow(p, alpha);
  return alpha;
}

int epsilon2(const Int& u) { return mod_floor(u, Int(4)) == 3 ? 1 : 0; }

int omega2(const Int& u) {
  const Int r = mod_floor(u, Int(8));
  return (r == 3 || r == 5) ? 1 : 0;
}

}  // namespace

int hilbert(const Rat& a, const Rat& b, const Int& place) {
  if (a == 0 || b == 0) throw PreconditionError("Hilbert symbol needs nonzero arguments");
  // n/d and n*d have the same square class
  const Int ai = a.get_num() * a.get_den();
  const Int bi = b.get_num() * b.get_den();
  if (place == 0) return (ai < 0 && bi < 0) ? -1 : 1;
  if (place < 0 || !is_prime(place)) throw PreconditionError("Hilbert symbol place must be a prime or 0 for infinity");
  Int u, v;
  const unsigned alpha = split(ai, place, u);
  const unsigned beta = split(bi, place, v);
  int exponent;
  if (place == 2) {
    exponent = epsilon2(u) * epsilon2(v) + static_cast<int>(alpha % 2) * omega2(v) + static_cast<int>(beta % 2) * omega2(u);
    return exponent % 2 == 0 ? 1 : -1;
  }
  const int eps = mod_floor(Int((place - 1) / 2), Int(2)) == 1 ? 1 : 0;
  int result = ((alpha % 2) * (beta % 2) * eps) % 2 == 0 ? 1 : -1;
  if (beta % 2) result *= legendre(u, place);
  if (alpha % 2) result *= legendre(v, place);
  return result;
}

int hasse(const RatVector& diagonal, const Int& place) {
  int h = 1;
  for (std::size_t i = 0; i < diagonal.size(); ++i)
    for (std::size_t j = i + 1; j < diagonal.size(); ++j) h *= hilbert(diagonal[i], diagonal[j], place);
  return h;
}

}  // namespace salem
