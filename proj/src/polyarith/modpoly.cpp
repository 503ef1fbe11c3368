#include "salem/modpoly.hpp"

#include <algorithm>

namespace salem::modp {
namespace {

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

Int random_below(const Int& p, std::mt19937_64& rng) {
  // p fits comfortably in the range used here; draw 128 random bits and reduce.
  Int r = 0;
  for (int i = 0; i < 2; ++i) {
    r <<= 64;
    r += Int(std::to_string(rng()));
  }
  return mod_floor(r, p);
}

bool less_poly(const Poly& a, const Poly& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = a.size(); i-- > 0;)
    if (a[i] != b[i]) return a[i] < b[i];
  return false;
}

void equal_degree_split(const Poly& f, int d, const Int& p, std::mt19937_64& rng, std::vector<Poly>& out) {
  const int n = degree(f);
  if (n == d) {
    out.push_back(f);
    return;
  }
  const Int e = (pow(p, static_cast<unsigned long>(d)) - 1) / 2;
  while (true) {
    Poly a(n);
    for (auto& c : a) c = random_below(p, rng);
    trim(a);
    if (degree(a) < 1) continue;
    Poly g = gcd(a, f, p);
    if (degree(g) > 0 && degree(g) < n) {
      equal_degree_split(g, d, p, rng, out);
      equal_degree_split(divmod(f, g, p).first, d, p, rng, out);
      return;
    }
    Poly b = powmod(a, e, f, p);
    b = sub(b, Poly{1}, p);
    g = gcd(b, f, p);
    if (degree(g) > 0 && degree(g) < n) {
      equal_degree_split(g, d, p, rng, out);
      equal_degree_split(divmod(f, g, p).first, d, p, rng, out);
      return;
    }
  }
}

}  // namespace

Poly reduce(const IntPolynomial& f, const Int& m) { return reduce(f.coeffs(), m); }

Poly reduce(Poly f, const Int& m) {
  for (auto& c : f) c = mod_floor(c, m);
  trim(f);
  return f;
}

IntPolynomial lift_symmetric(const Poly& f, const Int& m) {
  IntVector c = f;
  const Int half = m / 2;
  for (auto& v : c) {
    v = mod_floor(v, m);
    if (v > half) v -= m;
  }
  return IntPolynomial(std::move(c));
}

int degree(const Poly& f) { return static_cast<int>(f.size()) - 1; }
bool is_one(const Poly& f) { return f.size() == 1 && f[0] == 1; }

Poly add(const Poly& a, const Poly& b, const Int& m) {
  Poly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return reduce(std::move(r), m);
}

Poly sub(const Poly& a, const Poly& b, const Int& m) {
  Poly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  return reduce(std::move(r), m);
}

Poly mul(const Poly& a, const Poly& b, const Int& m) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  return reduce(std::move(r), m);
}

Poly scale(const Poly& a, const Int& s, const Int& m) {
  Poly r = a;
  for (auto& c : r) c *= s;
  return reduce(std::move(r), m);
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b, const Int& m) {
  if (b.empty()) throw PreconditionError("modular polynomial division by zero");
  const int db = degree(b);
  Poly r = a;
  if (degree(a) < db) return {Poly{}, r};
  Poly q(degree(a) - db + 1);
  const Int inv = inverse_mod(b.back(), m);
  for (int i = degree(a); i >= db; --i) {
    r[i] = mod_floor(r[i], m);
    if (r[i] == 0) continue;
    const Int f = mod_floor(Int(r[i] * inv), m);
    q[i - db] = f;
    for (int j = 0; j <= db; ++j) r[i - db + j] -= f * b[j];
  }
  return {reduce(std::move(q), m), reduce(std::move(r), m)};
}

Poly rem(const Poly& a, const Poly& b, const Int& m) { return divmod(a, b, m).second; }

Poly monic(const Poly& a, const Int& m) {
  if (a.empty()) return a;
  return scale(a, inverse_mod(a.back(), m), m);
}

Poly derivative(const Poly& a, const Int& m) {
  if (a.size() <= 1) return {};
  Poly d(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) d[i - 1] = a[i] * Int(static_cast<unsigned long>(i));
  return reduce(std::move(d), m);
}

Poly powmod(Poly base, Int e, const Poly& f, const Int& m) {
  Poly result = rem(Poly{1}, f, m);
  base = rem(base, f, m);
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) result = rem(mul(result, base, m), f, m);
    e >>= 1;
    if (e > 0) base = rem(mul(base, base, m), f, m);
  }
  return result;
}

Poly gcd(Poly a, Poly b, const Int& p) {
  while (!b.empty()) {
    Poly r = rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a, p);
}

Bezout extended_gcd(const Poly& a, const Poly& b, const Int& p) {
  Poly r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
  while (!r1.empty()) {
    auto [q, r] = divmod(r0, r1, p);
    Poly s2 = sub(s0, mul(q, s1, p), p);
    Poly t2 = sub(t0, mul(q, t1, p), p);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.empty()) return {r0, s0, t0};
  const Int inv = inverse_mod(r0.back(), p);
  return {scale(r0, inv, p), scale(s0, inv, p), scale(t0, inv, p)};
}

bool is_squarefree(const Poly& f, const Int& p) {
  if (degree(f) <= 0) return true;
  const Poly d = derivative(f, p);
  if (d.empty()) return false;
  return degree(gcd(f, d, p)) == 0;
}

std::vector<Poly> factor_squarefree(const Poly& f_in, const Int& p, std::mt19937_64& rng) {
  std::vector<Poly> out;
  Poly f = monic(f_in, p);
  if (degree(f) <= 0) return out;
  const Poly x{0, 1};
  Poly h = rem(x, f, p);
  for (int i = 1; degree(f) >= 2 * i; ++i) {
    h = powmod(h, p, f, p);
    const Poly g = gcd(sub(h, x, p), f, p);
    if (degree(g) > 0) {
      equal_degree_split(g, i, p, rng, out);
      f = divmod(f, g, p).first;
      h = rem(h, f, p);
    }
  }
  if (degree(f) > 0) out.push_back(f);
  std::sort(out.begin(), out.end(), less_poly);
  return out;
}

std::vector<int> irreducible_factor_degrees(const Poly& f_in, const Int& p) {
  std::vector<int> degrees;
  Poly f = monic(f_in, p);
  const Poly x{0, 1};
  for (int i = 1; degree(f) > 0; ++i) {
    const Poly h = powmod(x, pow(p, static_cast<unsigned long>(i)), f, p);
    Poly g = gcd(sub(h, x, p), f, p);
    if (degree(g) > 0) {
      // factors of degree < i were removed already, so g's factors have degree i
      degrees.push_back(i);
      while (degree(g) > 0) {
        f = divmod(f, g, p).first;
        g = gcd(g, f, p);
      }
    }
  }
  return degrees;
}

IntVector roots(const IntPolynomial& f_in, const Int& p) {
  Poly f = reduce(f_in, p);
  IntVector out;
  if (f.empty()) throw PreconditionError("roots of the zero polynomial modulo p");
  if (degree(f) == 0) return out;
  f = monic(f, p);
  const Poly x{0, 1};
  Poly g = gcd(sub(powmod(x, p, f, p), x, p), f, p);
  if (degree(g) <= 0) return out;
  if (p == 2) {
    for (int a = 0; a < 2; ++a)
      if (mod_floor(f_in(Int(a)), p) == 0) out.push_back(a);
    return out;
  }
  std::mt19937_64 rng(0x7007);
  std::vector<Poly> lin;
  equal_degree_split(g, 1, p, rng, lin);
  for (const auto& l : lin) out.push_back(mod_floor(Int(-l[0]), p));
  std::sort(out.begin(), out.end());
  return out;
}

unsigned root_multiplicity(const IntPolynomial& f, const Int& a, const Int& p) {
  Poly g = reduce(f, p);
  unsigned k = 0;
  const Poly lin = reduce(Poly{Int(-a), Int(1)}, p);
  while (!g.empty()) {
    auto [q, r] = divmod(g, lin, p);
    if (!r.empty()) break;
    g = std::move(q);
    ++k;
  }
  return k;
}

}  // namespace salem::modp
