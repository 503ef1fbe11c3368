#include "salem/modpoly.hpp"
#include "salem/realize.hpp"

namespace salem {

namespace {

// The smallest root a of r mod p that is simple and has a^2 - 4 a nonzero
// square, if any.
std::optional<SplitPrime> split_evidence(const IntPolynomial& r, const Int& p) {
  for (const Int& a : modp::roots(r, p)) {
    if (modp::root_multiplicity(r, a, p) != 1) continue;
    const Int disc = mod_floor(a * a - 4, p);
    if (legendre(disc, p) != 1) continue;
    return SplitPrime{p, a, sqrt_mod_prime_power(disc, p, 1)};
  }
  return std::nullopt;
}

}  // namespace

SplitPrime find_split_prime(const IntPolynomial& s, const Int& det_r, const Int& lower_bound, const Int& cap) {
  const SalemCertificate cert = require_salem(s);
  if (det_r == 0) throw PreconditionError("det R must be nonzero");
  const Int modulus = 8 * abs(det_r);
  const Int bad = 2 * discriminant(s);
  const IntPolynomial& r = cert.trace_polynomial;
  // first candidate 1 mod modulus strictly above lower_bound
  Int c = lower_bound < 1 ? Int(1) : lower_bound + 1;
  c += mod_floor(1 - c, modulus);
  for (; c <= cap; c += modulus) {
    if (!is_prime(c) || bad % c == 0) continue;
    if (auto ev = split_evidence(r, c)) return *ev;
  }
  throw SearchExhausted("no split prime below the cap " + to_string(cap));
}

bool check_split_prime(const IntPolynomial& s, const Int& det_r, const SplitPrime& prime) {
  const Int& p = prime.p;
  if (!is_prime(p) || det_r == 0) return false;
  if (mod_floor(p, 8 * abs(det_r)) != 1) return false;
  if ((2 * discriminant(s)) % p == 0) return false;
  const IntPolynomial r = trace_polynomial(s);
  if (mod_floor(r(prime.trace_root), p) != 0) return false;
  if (modp::root_multiplicity(r, mod_floor(prime.trace_root, p), p) != 1) return false;
  const Int disc = mod_floor(prime.trace_root * prime.trace_root - 4, p);
  return disc != 0 && mod_floor(prime.sqrt_disc * prime.sqrt_disc - disc, p) == 0;
}

namespace {

// t lies in the prime (p, w - a) and in no other prime above p: t(a) = 0
// mod p and t is coprime to r / (w - a) mod p.
bool generates_power_of(const IntPolynomial& r, const IntPolynomial& t, const Int& p, const Int& a) {
  if (mod_floor(t(a), p) != 0) return false;
  const modp::Poly linear = modp::reduce(IntPolynomial{-a, 1}, p);
  const modp::Poly cofactor = modp::divmod(modp::reduce(r, p), linear, p).first;
  const modp::Poly tp = modp::reduce(t, p);
  if (tp.empty()) return false;
  return modp::is_one(modp::gcd(tp, cofactor, p));
}

// Largest l <= l_max with |n| = p^l, or 0.
unsigned exact_power(Int n, const Int& p, unsigned l_max) {
  n = abs(n);
  unsigned l = 0;
  while (n % p == 0 && l <= l_max) {
    n /= p;
    ++l;
  }
  return n == 1 && l <= l_max ? l : 0;
}

}  // namespace

std::optional<NormElement> find_norm_element(const IntPolynomial& s, const SplitPrime& prime, unsigned l_max,
                                             long box) {
  const SalemCertificate cert = require_salem(s);
  const IntPolynomial& r = cert.trace_polynomial;
  const Int& p = prime.p;
  const int m = r.degree();
  if (m == 1) return NormElement{TwistElement{IntPolynomial{p}}, 1, twist_norm(r, TwistElement{IntPolynomial{p}})};
  std::vector<long> c(m);
  for (long radius = 1; radius <= box; ++radius) {
    // all coefficient vectors of sup norm exactly radius, lexicographically
    std::fill(c.begin(), c.end(), -radius);
    while (true) {
      bool on_shell = false;
      for (long x : c) on_shell = on_shell || x == radius || x == -radius;
      if (on_shell) {
        std::vector<Int> coeffs(c.begin(), c.end());
        const IntPolynomial t(coeffs);
        if (generates_power_of(r, t, p, prime.trace_root)) {
          const Int norm = twist_norm(r, TwistElement{t});
          if (const unsigned l = exact_power(norm, p, l_max); l >= 1) return NormElement{TwistElement{t}, l, norm};
        }
      }
      int i = m - 1;
      for (; i >= 0; --i) {
        if (++c[i] <= radius) break;
        c[i] = -radius;
      }
      if (i < 0) break;
    }
  }
  return std::nullopt;
}

}  // namespace salem
