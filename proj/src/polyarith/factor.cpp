#include <algorithm>
#include <random>

#include "salem/modpoly.hpp"
#include "salem/polyarith.hpp"

namespace salem {
namespace {

using modp::Poly;

bool poly_less(const IntPolynomial& a, const IntPolynomial& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (int i = a.degree(); i >= 0; --i)
    if (a.coeffs()[i] != b.coeffs()[i]) return a.coeffs()[i] < b.coeffs()[i];
  return false;
}

Poly product_mod(const std::vector<Poly>& fs, std::size_t from, std::size_t to, const Int& m) {
  Poly acc{1};
  for (std::size_t i = from; i < to; ++i) acc = modp::mul(acc, fs[i], m);
  return acc;
}

// Quadratic Hensel lifting of f = lc(f) * a * b (mod p), a and b monic and
// coprime modulo p, to the same factorisation modulo target (a power of p).
std::pair<Poly, Poly> hensel_two(const IntPolynomial& f, const Poly& a, const Poly& b, const Int& p,
                                 const Int& target) {
  const Int lc = f.leading();
  Poly g = modp::scale(a, lc, p);
  Poly h = b;
  const modp::Bezout bz = modp::extended_gcd(g, h, p);
  if (!modp::is_one(bz.g)) throw Error("internal: Hensel factors not coprime");
  Poly s = bz.s, t = bz.t;
  Int m = p;
  while (m < target) {
    const Int m2 = std::min<Int>(Int(m * m), target);
    const Poly fm = modp::reduce(f, m2);
    const Poly e = modp::sub(fm, modp::mul(g, h, m2), m2);
    auto [q, r] = modp::divmod(modp::mul(s, e, m2), h, m2);
    Poly g2 = modp::add(g, modp::add(modp::mul(t, e, m2), modp::mul(q, g, m2), m2), m2);
    Poly h2 = modp::add(h, r, m2);
    const Poly bb = modp::sub(modp::add(modp::mul(s, g2, m2), modp::mul(t, h2, m2), m2), Poly{1}, m2);
    auto [c, d] = modp::divmod(modp::mul(s, bb, m2), h2, m2);
    s = modp::sub(s, d, m2);
    t = modp::sub(modp::sub(t, modp::mul(t, bb, m2), m2), modp::mul(c, g2, m2), m2);
    g = std::move(g2);
    h = std::move(h2);
    m = m2;
  }
  return {modp::monic(g, target), h};
}

void lift_all(const IntPolynomial& f, const std::vector<Poly>& fs, const Int& p, const Int& target,
              std::vector<Poly>& out) {
  if (fs.size() == 1) {
    out.push_back(modp::monic(modp::reduce(f, target), target));
    return;
  }
  const std::size_t half = fs.size() / 2;
  const Poly a = product_mod(fs, 0, half, p);
  const Poly b = product_mod(fs, half, fs.size(), p);
  auto [la, lb] = hensel_two(f, a, b, p, target);
  lift_all(modp::lift_symmetric(la, target), std::vector<Poly>(fs.begin(), fs.begin() + half), p, target, out);
  lift_all(modp::lift_symmetric(lb, target), std::vector<Poly>(fs.begin() + half, fs.end()), p, target, out);
}

// Irreducible factors of a squarefree primitive g with positive leading coefficient.
std::vector<IntPolynomial> zassenhaus(const IntPolynomial& g) {
  const int n = g.degree();
  if (n <= 1) return {g};
  std::mt19937_64 rng(0xfac7);
  Int best_p = 0;
  std::vector<Poly> best;
  int tried = 0;
  for (Int p = 3; tried < 6; p = next_prime(p)) {
    if (mpz_divisible_p(g.leading().get_mpz_t(), p.get_mpz_t())) continue;
    const Poly gp = modp::reduce(g, p);
    if (!modp::is_squarefree(gp, p)) continue;
    auto fs = modp::factor_squarefree(gp, p, rng);
    ++tried;
    if (best.empty() || fs.size() < best.size()) {
      best = std::move(fs);
      best_p = p;
    }
    if (best.size() == 1) return {g};
  }
  // coefficient bound for factors of lc(g) * g
  Int norm2 = 0;
  for (const Int& c : g.coeffs()) norm2 += c * c;
  const Int bound = pow(Int(2), static_cast<unsigned long>(n)) * (isqrt(norm2) + 1) * abs(g.leading());
  Int modulus = best_p;
  while (modulus <= 2 * bound) modulus *= modulus;
  std::vector<Poly> lifted;
  lift_all(g, best, best_p, modulus, lifted);

  std::vector<IntPolynomial> result;
  IntPolynomial rest = g;
  std::vector<Poly> pool = lifted;
  std::size_t size = 1;
  while (2 * size <= pool.size()) {
    bool found = false;
    std::vector<std::size_t> idx(size);
    for (std::size_t i = 0; i < size; ++i) idx[i] = i;
    while (true) {
      Poly prod = modp::reduce(IntVector{rest.leading()}, modulus);
      for (auto i : idx) prod = modp::mul(prod, pool[i], modulus);
      const IntPolynomial cand = primitive_part(modp::lift_symmetric(prod, modulus));
      if (cand.degree() > 0 && divides(cand, rest)) {
        result.push_back(cand);
        rest = exact_quotient(rest, cand);
        std::vector<Poly> next;
        for (std::size_t i = 0, k = 0; i < pool.size(); ++i) {
          if (k < idx.size() && idx[k] == i) {
            ++k;
            continue;
          }
          next.push_back(pool[i]);
        }
        pool = std::move(next);
        found = true;
        break;
      }
      // next combination
      std::size_t k = size;
      while (k > 0 && idx[k - 1] == pool.size() - size + k - 1) --k;
      if (k == 0) break;
      ++idx[k - 1];
      for (std::size_t j = k; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (!found) ++size;
  }
  if (rest.degree() > 0) result.push_back(primitive_part(rest));
  return result;
}

}  // namespace

std::vector<PolyFactor> squarefree_decomposition(const IntPolynomial& p) {
  std::vector<PolyFactor> out;
  if (p.degree() < 1) return out;
  const RatPolynomial f = to_rat(p);
  const RatPolynomial fd = f.derivative();
  RatPolynomial a = gcd(f, fd);
  RatPolynomial b = divmod(f, a).first;
  RatPolynomial c = divmod(fd, a).first;
  RatPolynomial d = c - b.derivative();
  for (unsigned i = 1; b.degree() > 0; ++i) {
    a = gcd(b, d);
    b = divmod(b, a).first;
    c = divmod(d, a).first;
    d = c - b.derivative();
    if (a.degree() > 0) out.push_back({primitive_integer_part(a), i});
  }
  return out;
}

Factorisation factor(const IntPolynomial& p) {
  if (p.is_zero()) throw PreconditionError("cannot factor the zero polynomial");
  Factorisation out;
  out.unit = content(p);
  if (p.leading() < 0) out.unit = -out.unit;
  IntPolynomial f = primitive_part(p);
  std::size_t zeros = 0;
  while (f.coeffs()[zeros] == 0) ++zeros;
  if (zeros > 0) {
    out.factors.push_back({IntPolynomial{0, 1}, static_cast<unsigned>(zeros)});
    f = IntPolynomial(IntVector(f.coeffs().begin() + zeros, f.coeffs().end()));
  }
  for (const auto& [g, mult] : squarefree_decomposition(f))
    for (auto& h : zassenhaus(g)) out.factors.push_back({std::move(h), mult});
  std::sort(out.factors.begin(), out.factors.end(), [](const PolyFactor& a, const PolyFactor& b) {
    if (a.factor == b.factor) return a.multiplicity < b.multiplicity;
    return poly_less(a.factor, b.factor);
  });
  return out;
}

bool is_irreducible(const IntPolynomial& p) {
  if (p.degree() < 1) return false;
  const Factorisation f = factor(primitive_part(p));
  return f.factors.size() == 1 && f.factors[0].multiplicity == 1;
}

}  // namespace salem
