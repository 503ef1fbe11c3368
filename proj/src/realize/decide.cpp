#include <cstdint>

#include "salem/realize.hpp"

namespace salem {

std::string to_string(SurfaceKind kind) {
  switch (kind) {
    case SurfaceKind::torus: return "torus";
    case SurfaceKind::k3: return "k3";
    case SurfaceKind::enriques: return "enriques";
  }
  return "?";
}

SurfaceKind parse_surface_kind(const std::string& name) {
  if (name == "torus") return SurfaceKind::torus;
  if (name == "k3") return SurfaceKind::k3;
  if (name == "enriques") return SurfaceKind::enriques;
  throw ParseError("unknown surface class '" + name + "' (expected torus, k3 or enriques)");
}

SurfaceClass SurfaceClass::of(SurfaceKind kind) {
  switch (kind) {
    case SurfaceKind::torus: return {kind, 6, 4, "3U"};
    case SurfaceKind::k3: return {kind, 22, 20, "3U+2E8"};
    case SurfaceKind::enriques: return {kind, 10, 10, "U+E8"};
  }
  throw PreconditionError("unknown surface class");
}

Lattice SurfaceClass::lattice() const { return lattices::named(lattice_name); }

Signature SurfaceClass::signature() const {
  const int pos = kind == SurfaceKind::enriques ? 1 : 3;
  return {pos, b2 - pos};
}

Decision stable_realizable(const IntPolynomial& s, const SurfaceClass& surface, bool projective) {
  const SalemCertificate cert = require_salem(s);
  const int d = cert.degree;
  const std::string dims = "d = " + std::to_string(d) + ", b2 = " + std::to_string(surface.b2);
  Decision out;
  if (d < surface.b2) {
    out = {true, 1, "clause (1): d < b2 (" + dims + ")"};
  } else if (d == surface.b2) {
    const SquareClassResult sq = square_class_test(s);
    if (sq.square)
      out = {true, 2, "clause (2): d = b2, square class (-s(1)s(-1) = " + to_string(sq.value) + ")"};
    else
      out = {false, 2, "clause (2) fails: d = b2 but -s(1)s(-1) = " + to_string(sq.value) + " is not a square"};
  } else {
    return {false, 0, "d > b2 (" + dims + ")"};
  }
  if (out.yes && projective && d > surface.h11) {
    out.yes = false;
    out.reason += "; projective needs d <= h11 = " + std::to_string(surface.h11);
  } else if (projective) {
    out.reason += "; projective: d <= h11 = " + std::to_string(surface.h11);
  }
  return out;
}

RationalCriterion rational_isometry_criterion(const IntPolynomial& s, const Lattice& lattice) {
  const SalemCertificate cert = require_salem(s);
  const Signature sig = lattice.signature();
  const bool even_unimodular = lattice.is_even() && lattice.is_unimodular();
  const bool supported = even_unimodular && ((sig == Signature{3, 3}) || (sig == Signature{1, 9}) ||
                                             (sig == Signature{3, 19}));
  if (!supported)
    throw PreconditionError("rational criterion only covers 3U, U+E8 and 3U+2E8 (even unimodular of signature "
                            "(3,3), (1,9) or (3,19))");
  const int d = cert.degree;
  const int rk = static_cast<int>(lattice.rank());
  RationalCriterion out;
  if (d <= rk - 2) {
    out.exists = true;
    out.clause = 1;
    out.hyperbolic_kernel = true;
    out.kernel_signature_three = sig.positive == 3 && d >= 4;
    out.reason = "clause (1): d = " + std::to_string(d) + " <= rk L - 2 = " + std::to_string(rk - 2);
    return out;
  }
  if (d == rk) {
    const SquareClassResult sq = square_class_test(s);
    out.clause = 2;
    out.exists = sq.square;
    out.hyperbolic_kernel = sq.square && sig.positive == 1;
    out.kernel_signature_three = sq.square && sig.positive == 3;
    out.reason = sq.square ? "clause (2): d = rk L, -s(1)s(-1) = " + to_string(sq.value) + " is a square"
                           : "clause (2) fails: -s(1)s(-1) = " + to_string(sq.value) + " is not a square";
    return out;
  }
  out.reason = d > rk ? "d = " + std::to_string(d) + " exceeds rk L = " + std::to_string(rk)
                      : "d = rk L - 1 is impossible for a Salem polynomial";
  return out;
}

bool mod2_trivial(const IntMatrix& f) {
  if (!f.is_square()) throw PreconditionError("mod 2 reduction needs a square matrix");
  for (std::size_t i = 0; i < f.rows(); ++i)
    for (std::size_t j = 0; j < f.cols(); ++j) {
      const bool odd = mpz_odd_p(f(i, j).get_mpz_t()) != 0;
      if (odd != (i == j)) return false;
    }
  return true;
}

namespace {

// Square matrices over F2 with at most 64 columns, one word per row.
using BitMatrix = std::vector<std::uint64_t>;

BitMatrix bit_mul(const BitMatrix& a, const BitMatrix& b) {
  BitMatrix c(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::uint64_t row = a[i], acc = 0;
    for (std::size_t k = 0; row; ++k, row >>= 1)
      if (row & 1) acc ^= b[k];
    c[i] = acc;
  }
  return c;
}

BitMatrix bit_pow(BitMatrix base, Int e) {
  BitMatrix out(base.size(), 0);
  for (std::size_t i = 0; i < base.size(); ++i) out[i] = std::uint64_t{1} << i;
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) out = bit_mul(out, base);
    base = bit_mul(base, base);
    e >>= 1;
  }
  return out;
}

bool bit_identity(const BitMatrix& m) {
  for (std::size_t i = 0; i < m.size(); ++i)
    if (m[i] != (std::uint64_t{1} << i)) return false;
  return true;
}

}  // namespace

unsigned long mod2_order(const IntMatrix& f) {
  const std::size_t n = f.rows();
  if (!f.is_square() || n == 0 || n > 64) throw PreconditionError("mod 2 order needs a square matrix of size 1..64");
  if (mpz_even_p(determinant(f).get_mpz_t())) throw PreconditionError("matrix is singular modulo 2");
  BitMatrix m(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (mpz_odd_p(f(i, j).get_mpz_t())) m[i] |= std::uint64_t{1} << j;
  // The order divides 2^k lcm(2^d - 1 : d <= n) with 2^k >= n.
  Int bound = 1;
  for (std::size_t d = 1; d <= n; ++d) bound = lcm(bound, (Int(1) << d) - 1);
  unsigned k = 0;
  while ((std::size_t{1} << k) < n) ++k;
  bound <<= k;
  if (!bit_identity(bit_pow(m, bound))) throw Error("internal: mod 2 order bound failed");
  Int order = bound;
  for (const Int& q : prime_divisors(bound))
    while (order % q == 0 && bit_identity(bit_pow(m, order / q))) order /= q;
  if (!order.fits_ulong_p()) throw Error("mod 2 order does not fit in 64 bits");
  return order.get_ui();
}

}  // namespace salem
