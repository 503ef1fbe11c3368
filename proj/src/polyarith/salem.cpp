#include <algorithm>
#include <map>
#include <mutex>
#include <set>

#include "salem/polyarith.hpp"

namespace salem {
namespace {

Int binomial(unsigned long n, unsigned long k) {
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

// Polynomial whose roots are the squares of the roots of f (monic f).
IntPolynomial graeffe(const IntPolynomial& f) {
  const IntPolynomial prod = f * f.negated_variable();
  IntVector c(f.degree() + 1);
  for (int j = 0; j <= f.degree(); ++j) c[j] = prod.coeff(2 * j);
  if (f.degree() % 2 == 1)
    for (auto& v : c) v = -v;
  return IntPolynomial(std::move(c));
}

unsigned long euler_phi(unsigned long m) {
  unsigned long r = m;
  for (const auto& [p, e] : factor_integer(Int(m))) {
    const unsigned long q = p.get_ui();
    r = r / q * (q - 1);
  }
  return r;
}

bool is_cyclotomic_irreducible(const IntPolynomial& g) {
  const unsigned long k = g.degree();
  for (unsigned long m = 1; m <= 2 * k * k + 2; ++m) {
    if (euler_phi(m) != k) continue;
    if (cyclotomic(m) == g) return true;
  }
  return false;
}

bool has_cyclotomic_divisor(const IntPolynomial& p) {
  const unsigned long d = p.degree();
  for (unsigned long m = 1; m <= 2 * d * d + 2; ++m)
    if (euler_phi(m) <= d && divides(cyclotomic(m), p)) return true;
  return false;
}

// One root of r above 2, the rest simple and in (-2, 2].
bool salem_trace_pattern(const IntPolynomial& r) {
  const SturmSequence sturm(r);
  return sturm.count_all() == r.degree() && sturm.count_above(Rat(2)) == 1 && sturm.count_at_most(Rat(-2)) == 0;
}

}  // namespace

bool is_reciprocal(const IntPolynomial& p) {
  const auto& c = p.coeffs();
  const std::size_t n = c.size();
  for (std::size_t i = 0; i < n; ++i)
    if (c[i] != c[n - 1 - i]) return false;
  return !p.is_zero();
}

IntPolynomial trace_polynomial(const IntPolynomial& p) {
  if (!is_reciprocal(p)) throw PreconditionError("trace polynomial needs a reciprocal polynomial");
  if (p.degree() % 2 != 0) throw PreconditionError("trace polynomial needs even degree");
  const int m = p.degree() / 2;
  // P_0 = 2, P_1 = y, P_{k+1} = y P_k - P_{k-1}; x^k + x^{-k} = P_k(x + 1/x)
  const IntPolynomial y = IntPolynomial::x();
  IntPolynomial prev = IntPolynomial::constant(2);
  IntPolynomial cur = y;
  IntPolynomial r = IntPolynomial::constant(p.coeff(m));
  for (int k = 1; k <= m; ++k) {
    r += p.coeff(m + k) * cur;
    IntPolynomial next = y * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  if (expand_trace_polynomial(r) != p) throw Error("internal: trace polynomial round trip failed");
  return r;
}

IntPolynomial expand_trace_polynomial(const IntPolynomial& r) {
  const int m = r.degree();
  if (m < 0) return {};
  // sum_j r_j x^{m-j} (x^2 + 1)^j
  const IntPolynomial q{1, 0, 1};
  IntPolynomial acc;
  IntPolynomial qj = IntPolynomial::constant(1);
  for (int j = 0; j <= m; ++j) {
    if (r.coeff(j) != 0) acc += r.coeff(j) * (IntPolynomial::monomial(Int(1), m - j) * qj);
    qj *= q;
  }
  return acc;
}

std::string to_string(SalemRejection reason) {
  switch (reason) {
    case SalemRejection::none: return "none";
    case SalemRejection::constant: return "constant";
    case SalemRejection::not_monic: return "not_monic";
    case SalemRejection::not_reciprocal: return "not_reciprocal";
    case SalemRejection::reducible: return "reducible";
    case SalemRejection::wrong_root_pattern: return "wrong_root_pattern";
  }
  return "unknown";
}

SalemCheck is_salem(const IntPolynomial& p) {
  SalemCheck out;
  auto reject = [&](SalemRejection r, std::string detail) {
    out.reason = r;
    out.detail = std::move(detail);
    return out;
  };
  if (p.degree() < 1) return reject(SalemRejection::constant, "polynomial is constant");
  if (!p.is_monic()) return reject(SalemRejection::not_monic, "leading coefficient is not 1");
  if (!is_reciprocal(p)) return reject(SalemRejection::not_reciprocal, "coefficients are not palindromic");
  // Under the Salem root pattern every factor but the one carrying lambda
  // has all roots on the unit circle and so is cyclotomic (Kronecker);
  // ruling out cyclotomic divisors is then enough and much cheaper.
  const bool pattern = p.degree() % 2 == 0 && salem_trace_pattern(trace_polynomial(p));
  if (pattern ? has_cyclotomic_divisor(p) : !is_irreducible(p))
    return reject(SalemRejection::reducible, "polynomial factors over Q");
  if (p.degree() % 2 != 0)
    return reject(SalemRejection::wrong_root_pattern, "odd-degree reciprocal polynomial has the root -1");
  const IntPolynomial r = trace_polynomial(p);
  const int m = r.degree();
  const SturmSequence sturm(r);
  const int real = sturm.count_all();
  const int above = sturm.count_above(Rat(2));
  const int below = sturm.count_at_most(Rat(-2));
  if (real != m || above != 1 || below != 0) {
    return reject(SalemRejection::wrong_root_pattern,
                  "trace polynomial has " + std::to_string(real) + " of " + std::to_string(m) +
                      " roots real, " + std::to_string(above) + " above 2 and " + std::to_string(below) +
                      " at most -2");
  }
  SalemCertificate cert;
  cert.polynomial = p;
  cert.degree = p.degree();
  cert.trace_polynomial = r;
  cert.quadratic_degenerate = (p.degree() == 2);
  const Rat eps = make_rat(1, Int(1) << 64);
  const RootIsolation ri = isolate_real_roots(r);
  Interval mu = refine_root(r, ri.intervals.back(), eps);
  while (mu.lo <= 2) mu = refine_root(r, mu, mu.width() / 2);
  cert.trace_root = mu;
  const RootIsolation pi = isolate_real_roots(p);
  Interval lam = refine_root(p, pi.intervals.back(), eps);
  while (lam.lo <= 1) lam = refine_root(p, lam, lam.width() / 2);
  cert.lambda = lam;
  out.certificate = std::move(cert);
  return out;
}

SalemCertificate require_salem(const IntPolynomial& p) {
  SalemCheck c = is_salem(p);
  if (!c.accepted())
    throw PreconditionError("not a Salem polynomial (" + to_string(c.reason) + "): " + c.detail);
  return std::move(*c.certificate);
}

IntVector power_sums(const IntPolynomial& p, std::size_t count) {
  if (!p.is_monic()) throw PreconditionError("power sums need a monic polynomial");
  const int d = p.degree();
  IntVector s(count);
  if (count == 0) return s;
  s[0] = d;
  for (std::size_t k = 1; k < count; ++k) {
    Int acc = 0;
    const std::size_t lim = std::min<std::size_t>(k - 1, d);
    for (std::size_t i = 1; i <= lim; ++i) acc -= p.coeffs()[d - i] * s[k - i];
    if (k <= static_cast<std::size_t>(d)) acc -= Int(static_cast<unsigned long>(k)) * p.coeffs()[d - k];
    s[k] = std::move(acc);
  }
  return s;
}

IntPolynomial root_power_polynomial(const IntPolynomial& p, unsigned long n) {
  if (n == 0) throw PreconditionError("power must be positive");
  const std::size_t d = p.degree();
  const IntVector s = power_sums(p, n * d + 1);
  // Newton's identities for the elementary symmetric functions of alpha^n
  IntVector e(d + 1);
  e[0] = 1;
  for (std::size_t k = 1; k <= d; ++k) {
    Int acc = 0;
    for (std::size_t i = 1; i <= k; ++i) {
      const Int term = e[k - i] * s[n * i];
      if (i % 2 == 1) acc += term;
      else acc -= term;
    }
    if (!mpz_divisible_ui_p(acc.get_mpz_t(), k)) throw Error("internal: Newton identity not integral");
    mpz_divexact_ui(acc.get_mpz_t(), acc.get_mpz_t(), k);
    e[k] = std::move(acc);
  }
  IntVector c(d + 1);
  for (std::size_t k = 0; k <= d; ++k) c[d - k] = (k % 2 == 0) ? e[k] : Int(-e[k]);
  return IntPolynomial(std::move(c));
}

IntPolynomial power_min_poly(const IntPolynomial& s, unsigned long n) {
  if (n == 0) throw PreconditionError("power must be positive");
  require_salem(s);
  if (n == 1) return s;
  const IntPolynomial full = root_power_polynomial(s, n);
  const IntPolynomial radical = squarefree_part(full);
  std::optional<IntPolynomial> pick;
  for (const auto& f : factor(radical).factors) {
    if (SturmSequence(f.factor).count_above(Rat(1)) > 0) {
      if (pick) throw Error("internal: several factors with a root above 1");
      pick = f.factor;
    }
  }
  if (!pick) throw Error("internal: no factor with a root above 1");
  return *pick;
}

SquareClassResult square_class_test(const IntPolynomial& s) {
  SquareClassResult out;
  const Int a = s(Int(1));
  const Int b = s(Int(-1));
  out.value = -a * b;
  out.zero = (a == 0 || b == 0);
  out.square = !out.zero && out.value > 0 && is_square(out.value);
  return out;
}

IntPolynomial cyclotomic(unsigned long m) {
  static std::mutex mu;
  static std::map<unsigned long, IntPolynomial> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
  }
  if (m == 0) throw PreconditionError("cyclotomic index must be positive");
  IntPolynomial q = IntPolynomial::monomial(Int(1), m) - IntPolynomial::constant(1);
  for (unsigned long d = 1; d < m; ++d)
    if (m % d == 0) q = exact_quotient(q, cyclotomic(d));
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(m, q);
  return q;
}

bool is_cyclotomic_product(const IntPolynomial& c) {
  if (!c.is_monic()) throw PreconditionError("cyclotomic test needs a monic polynomial");
  if (c.coeff(0) == 0) throw PreconditionError("cyclotomic test needs a nonzero constant term");
  IntPolynomial f = squarefree_part(c);
  std::set<IntVector> seen;
  const int cap = 2 * c.degree() + 16;
  for (int it = 0; it < cap; ++it) {
    const unsigned long d = f.degree();
    for (unsigned long j = 0; j <= d; ++j)
      if (abs(f.coeff(j)) > binomial(d, j)) return false;  // some root has modulus > 1
    if (!seen.insert(f.coeffs()).second) return true;
    f = squarefree_part(graeffe(f));
  }
  // no cycle within the cap: decide factor by factor
  for (const auto& pf : factor(c).factors)
    if (!is_cyclotomic_irreducible(pf.factor)) return false;
  return true;
}

}  // namespace salem
