#include "salem/number.hpp"

#include <algorithm>
#include <cctype>
#include <random>

namespace salem {
namespace {

bool is_decimal(std::string_view text) {
  std::size_t i = 0;
  if (!text.empty() && (text[0] == '-' || text[0] == '+')) i = 1;
  if (i == text.size()) return false;
  for (; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) return false;
  }
  return true;
}

Int pollard_brent(const Int& n, std::mt19937_64& rng) {
  if (n % 2 == 0) return 2;
  std::uniform_int_distribution<unsigned long> dist(1, 1UL << 40);
  while (true) {
    Int y = Int(dist(rng)) % n;
    const Int c = Int(dist(rng)) % n;
    const Int m = 128;
    Int g = 1, r = 1, q = 1, x, ys;
    auto step = [&](const Int& v) {
      Int w = v * v + c;
      mpz_mod(w.get_mpz_t(), w.get_mpz_t(), n.get_mpz_t());
      return w;
    };
    while (g == 1) {
      x = y;
      for (Int i = 0; i < r; ++i) y = step(y);
      Int k = 0;
      while (k < r && g == 1) {
        ys = y;
        const Int batch = std::min<Int>(m, Int(r - k));
        for (Int i = 0; i < batch; ++i) {
          y = step(y);
          q = q * abs(Int(x - y));
          mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        }
        g = gcd(q, n);
        k += m;
      }
      r *= 2;
    }
    if (g == n) {
      do {
        ys = step(ys);
        g = gcd(abs(Int(x - ys)), n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_into(const Int& n, Factorization& out, std::mt19937_64& rng) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.emplace_back(n, 1);
    return;
  }
  const Int d = pollard_brent(n, rng);
  factor_into(d, out, rng);
  factor_into(n / d, out, rng);
}

}  // namespace

Int parse_int(std::string_view text) {
  if (!is_decimal(text)) {
    throw ParseError("not a decimal integer: '" + std::string(text) + "'");
  }
  std::string s(text);
  if (s[0] == '+') s.erase(0, 1);
  return Int(s, 10);
}

Rat parse_rat(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rat(parse_int(text));
  const Int num = parse_int(text.substr(0, slash));
  const std::string_view den_text = text.substr(slash + 1);
  if (!den_text.empty() && (den_text[0] == '-' || den_text[0] == '+')) {
    throw ParseError("denominator must be unsigned: '" + std::string(text) + "'");
  }
  const Int den = parse_int(den_text);
  if (den == 0) throw ParseError("zero denominator: '" + std::string(text) + "'");
  return make_rat(num, den);
}

std::string to_string(const Int& value) { return value.get_str(10); }

std::string to_string(const Rat& value) {
  if (value.get_den() == 1) return value.get_num().get_str(10);
  return value.get_num().get_str(10) + "/" + value.get_den().get_str(10);
}

Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Int ceil_div(const Int& a, const Int& b) {
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Int mod_floor(const Int& a, const Int& m) {
  Int r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

Int floor(const Rat& value) { return floor_div(value.get_num(), value.get_den()); }
Int ceil(const Rat& value) { return ceil_div(value.get_num(), value.get_den()); }

Int abs(const Int& value) {
  Int r;
  mpz_abs(r.get_mpz_t(), value.get_mpz_t());
  return r;
}

Rat abs(const Rat& value) {
  Rat r;
  mpq_abs(r.get_mpq_t(), value.get_mpq_t());
  return r;
}

int sign(const Int& value) { return mpz_sgn(value.get_mpz_t()); }
int sign(const Rat& value) { return mpq_sgn(value.get_mpq_t()); }

Int gcd(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

Int lcm(const Int& a, const Int& b) {
  Int l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

Int pow(const Int& base, unsigned long exponent) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
  return r;
}

Int isqrt(const Int& value) {
  if (value < 0) throw PreconditionError("isqrt of a negative integer");
  Int r;
  mpz_sqrt(r.get_mpz_t(), value.get_mpz_t());
  return r;
}

bool is_square(const Int& value) {
  return value >= 0 && mpz_perfect_square_p(value.get_mpz_t()) != 0;
}

Int inverse_mod(const Int& a, const Int& m) {
  Int r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0) {
    throw PreconditionError("element " + to_string(a) + " is not invertible modulo " + to_string(m));
  }
  return mod_floor(r, m);
}

Int pow_mod(const Int& base, const Int& exponent, const Int& modulus) {
  if (exponent < 0) return pow_mod(inverse_mod(base, modulus), -exponent, modulus);
  Int r;
  mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exponent.get_mpz_t(), modulus.get_mpz_t());
  return r;
}

Int sqrt_mod_prime_power(const Int& a, const Int& p, unsigned e) {
  if (p == 2 || e == 0) throw PreconditionError("square roots need an odd prime power");
  const Int a0 = mod_floor(a, p);
  if (a0 == 0) throw PreconditionError("square root of a non-unit");
  if (mpz_legendre(a0.get_mpz_t(), p.get_mpz_t()) != 1) return -1;
  // Tonelli-Shanks modulo p
  Int q = p - 1;
  unsigned s = 0;
  while (mpz_even_p(q.get_mpz_t())) {
    q /= 2;
    ++s;
  }
  Int z = 2;
  while (mpz_legendre(z.get_mpz_t(), p.get_mpz_t()) != -1) ++z;
  Int c = pow_mod(z, q, p);
  Int r = pow_mod(a0, Int((q + 1) / 2), p);
  Int t = pow_mod(a0, q, p);
  unsigned m = s;
  while (t != 1) {
    unsigned i = 0;
    for (Int u = t; u != 1; u = mod_floor(Int(u * u), p)) ++i;
    Int b = c;
    for (unsigned k = 0; k + i + 1 < m; ++k) b = mod_floor(Int(b * b), p);
    r = mod_floor(Int(r * b), p);
    c = mod_floor(Int(b * b), p);
    t = mod_floor(Int(t * c), p);
    m = i;
  }
  // Hensel lifting, doubling the precision each step
  const Int target = pow(p, e);
  for (Int mod = p; mod < target;) {
    mod = std::min(Int(mod * mod), target);
    r = mod_floor(Int(r - (r * r - a) * inverse_mod(Int(2 * r), mod)), mod);
  }
  return r;
}

bool is_prime(const Int& n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

Int next_prime(const Int& n) {
  Int r;
  mpz_nextprime(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

unsigned valuation(const Int& n, const Int& p) {
  if (n == 0) throw PreconditionError("valuation of zero");
  unsigned v = 0;
  Int m = abs(n);
  while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
    m /= p;
    ++v;
  }
  return v;
}

Factorization factor_integer(const Int& n) {
  if (n == 0) throw PreconditionError("cannot factor zero");
  Int m = abs(n);
  Factorization raw;
  for (unsigned long p = 2; p < 10000 && p * p <= m; p += (p == 2 ? 1 : 2)) {
    while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      raw.emplace_back(Int(p), 1);
      m /= p;
    }
  }
  std::mt19937_64 rng(0x5a1e);
  factor_into(m, raw, rng);
  std::sort(raw.begin(), raw.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  Factorization merged;
  for (const auto& [p, e] : raw) {
    if (!merged.empty() && merged.back().first == p) {
      merged.back().second += e;
    } else {
      merged.emplace_back(p, e);
    }
  }
  return merged;
}

IntVector prime_divisors(const Int& n) {
  IntVector out;
  for (const auto& [p, e] : factor_integer(n)) out.push_back(p);
  return out;
}

SquareFreeSplit squarefree_split(const Int& n) {
  if (n == 0) throw PreconditionError("square class of zero");
  Int root = 1;
  Int rest = sign(n);
  for (const auto& [p, e] : factor_integer(n)) {
    root *= pow(p, e / 2);
    if (e % 2 == 1) rest *= p;
  }
  return {root, rest};
}

}  // namespace salem
