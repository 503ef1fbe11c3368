#include "salem/polynomial.hpp"

#include <sstream>

#include "salem/linalg.hpp"

namespace salem {

RatPolynomial to_rat(const IntPolynomial& p) {
  std::vector<Rat> c(p.coeffs().size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = Rat(p.coeffs()[i]);
  return RatPolynomial(std::move(c));
}

IntPolynomial primitive_integer_part(const RatPolynomial& p) {
  if (p.is_zero()) return {};
  Int den = 1;
  for (const Rat& v : p.coeffs()) den = lcm(den, v.get_den());
  IntVector c(p.coeffs().size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = Rat(p.coeffs()[i] * den).get_num();
  return primitive_part(IntPolynomial(std::move(c)));
}

Int content(const IntPolynomial& p) {
  Int g = 0;
  for (const Int& v : p.coeffs()) g = gcd(g, v);
  return g;
}

IntPolynomial primitive_part(const IntPolynomial& p) {
  if (p.is_zero()) return {};
  Int g = content(p);
  if (p.leading() < 0) g = -g;
  IntVector c = p.coeffs();
  for (auto& v : c) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
  return IntPolynomial(std::move(c));
}

std::pair<RatPolynomial, RatPolynomial> divmod(const RatPolynomial& a, const RatPolynomial& b) {
  if (b.is_zero()) throw PreconditionError("polynomial division by zero");
  std::vector<Rat> r = a.coeffs();
  const int db = b.degree();
  if (a.degree() < db) return {RatPolynomial{}, a};
  std::vector<Rat> q(a.degree() - db + 1);
  const Rat inv = 1 / b.leading();
  for (int i = a.degree(); i >= db; --i) {
    if (r[i] == 0) continue;
    const Rat f = r[i] * inv;
    q[i - db] = f;
    for (int j = 0; j <= db; ++j) r[i - db + j] -= f * b.coeffs()[j];
  }
  return {RatPolynomial(std::move(q)), RatPolynomial(std::move(r))};
}

RatPolynomial operator%(const RatPolynomial& a, const RatPolynomial& b) { return divmod(a, b).second; }

IntPolynomial exact_quotient(const IntPolynomial& a, const IntPolynomial& b) {
  if (b.is_zero()) throw PreconditionError("polynomial division by zero");
  if (a.is_zero()) return {};
  const int db = b.degree();
  if (a.degree() < db) throw PreconditionError("polynomial does not divide");
  IntVector r = a.coeffs();
  IntVector q(a.degree() - db + 1);
  for (int i = a.degree(); i >= db; --i) {
    if (r[i] == 0) continue;
    if (!mpz_divisible_p(r[i].get_mpz_t(), b.leading().get_mpz_t()))
      throw PreconditionError("polynomial does not divide");
    Int f = r[i];
    mpz_divexact(f.get_mpz_t(), f.get_mpz_t(), b.leading().get_mpz_t());
    for (int j = 0; j <= db; ++j) r[i - db + j] -= f * b.coeffs()[j];
    q[i - db] = std::move(f);
  }
  for (const Int& v : r)
    if (v != 0) throw PreconditionError("polynomial does not divide");
  return IntPolynomial(std::move(q));
}

bool divides(const IntPolynomial& b, const IntPolynomial& a) {
  try {
    exact_quotient(a, b);
    return true;
  } catch (const PreconditionError&) {
    return false;
  }
}

IntPolynomial rem_monic(const IntPolynomial& a, const IntPolynomial& b) {
  if (!b.is_monic()) throw PreconditionError("rem_monic needs a monic divisor");
  IntVector r = a.coeffs();
  const int db = b.degree();
  for (int i = a.degree(); i >= db; --i) {
    if (r[i] == 0) continue;
    const Int f = r[i];
    for (int j = 0; j <= db; ++j) r[i - db + j] -= f * b.coeffs()[j];
  }
  if (static_cast<int>(r.size()) > db) r.resize(db);
  return IntPolynomial(std::move(r));
}

RatPolynomial gcd(const RatPolynomial& a, const RatPolynomial& b) {
  RatPolynomial x = a, y = b;
  while (!y.is_zero()) {
    RatPolynomial r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  if (x.is_zero()) return x;
  return (1 / x.leading()) * x;
}

IntPolynomial gcd(const IntPolynomial& a, const IntPolynomial& b) {
  const RatPolynomial g = gcd(to_rat(a), to_rat(b));
  if (g.is_zero()) return {};
  IntPolynomial out = primitive_integer_part(g);
  return out;
}

IntPolynomial pow(const IntPolynomial& p, unsigned exponent) {
  IntPolynomial result = IntPolynomial::constant(1);
  IntPolynomial base = p;
  while (exponent > 0) {
    if (exponent & 1U) result *= base;
    exponent >>= 1U;
    if (exponent > 0) base *= base;
  }
  return result;
}

IntPolynomial charpoly(const IntMatrix& m) { return IntPolynomial(charpoly_coefficients(m)); }

RatPolynomial rational_charpoly(const RatMatrix& m) { return RatPolynomial(charpoly_coefficients(m)); }

IntPolynomial integral_charpoly(const RatMatrix& m) {
  const RatVector c = charpoly_coefficients(m);
  auto ints = to_int(c);
  if (!ints) throw PreconditionError("characteristic polynomial is not integral");
  return IntPolynomial(std::move(*ints));
}

IntMatrix companion(const IntPolynomial& monic) {
  if (!monic.is_monic() || monic.degree() < 1) throw PreconditionError("companion matrix needs a monic polynomial of positive degree");
  const std::size_t d = monic.degree();
  IntMatrix c(d, d);
  for (std::size_t i = 1; i < d; ++i) c(i, i - 1) = 1;
  for (std::size_t i = 0; i < d; ++i) c(i, d - 1) = -monic.coeffs()[i];
  return c;
}

namespace {

template <class T>
std::string render(const Polynomial<T>& p, const std::string& var) {
  if (p.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (int i = p.degree(); i >= 0; --i) {
    const T& c = p.coeffs()[i];
    if (c == 0) continue;
    const bool neg = sign(c) < 0;
    const T mag = neg ? T(-c) : c;
    if (first) {
      if (neg) out << "-";
    } else {
      out << (neg ? " - " : " + ");
    }
    const bool unit = (mag == 1);
    if (!unit || i == 0) out << to_string(mag);
    if (i > 0) {
      if (!unit) out << "*";
      out << var;
      if (i > 1) out << "^" << i;
    }
    first = false;
  }
  return out.str();
}

}  // namespace

std::string to_string(const IntPolynomial& p, const std::string& var) { return render(p, var); }
std::string to_string(const RatPolynomial& p, const std::string& var) { return render(p, var); }

}  // namespace salem
