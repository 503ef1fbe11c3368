#pragma once

#include <string>
#include <utility>
#include <vector>

#include "salem/matrix.hpp"

namespace salem {

/// Dense univariate polynomial, coefficients in ascending degree order.
/// The stored vector never has a trailing zero; the zero polynomial is empty.
template <class T>
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }
  Polynomial(std::initializer_list<T> coeffs) : c_(coeffs) { trim(); }

  static Polynomial constant(const T& v) { return Polynomial(std::vector<T>{v}); }
  static Polynomial monomial(const T& v, std::size_t degree) {
    std::vector<T> c(degree + 1);
    c[degree] = v;
    return Polynomial(std::move(c));
  }
  static Polynomial x() { return monomial(T(1), 1); }

  bool is_zero() const { return c_.empty(); }
  // Degree of the zero polynomial is reported as -1.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const T& leading() const { return c_.back(); }
  T coeff(std::size_t i) const { return i < c_.size() ? c_[i] : T(0); }
  const std::vector<T>& coeffs() const { return c_; }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }

  T operator()(const T& x) const {
    T acc = 0;
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
  }

  template <class U>
  U eval(const U& x) const {
    U acc = 0;
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + U(c_[i]);
    return acc;
  }

  Polynomial derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<T> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * T(static_cast<long>(i));
    return Polynomial(std::move(d));
  }

  // x^deg * p(1/x)
  Polynomial reversed() const {
    std::vector<T> r(c_.rbegin(), c_.rend());
    return Polynomial(std::move(r));
  }

  // p(-x)
  Polynomial negated_variable() const {
    std::vector<T> r = c_;
    for (std::size_t i = 1; i < r.size(); i += 2) r[i] = -r[i];
    return Polynomial(std::move(r));
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<T> r(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
    return Polynomial(std::move(r));
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    std::vector<T> r(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] -= b.c_[i];
    return Polynomial(std::move(r));
  }
  friend Polynomial operator-(const Polynomial& a) {
    std::vector<T> r = a.c_;
    for (auto& v : r) v = -v;
    return Polynomial(std::move(r));
  }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<T> r(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    }
    return Polynomial(std::move(r));
  }
  friend Polynomial operator*(const T& s, const Polynomial& a) {
    std::vector<T> r = a.c_;
    for (auto& v : r) v *= s;
    return Polynomial(std::move(r));
  }

  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<T> c_;
};

using IntPolynomial = Polynomial<Int>;
using RatPolynomial = Polynomial<Rat>;

RatPolynomial to_rat(const IntPolynomial& p);
// Scale a rational polynomial to a primitive integer polynomial with positive
// leading coefficient.
IntPolynomial primitive_integer_part(const RatPolynomial& p);
Int content(const IntPolynomial& p);
// p / content(p), leading coefficient made positive.
IntPolynomial primitive_part(const IntPolynomial& p);

// Euclidean division over Q; throws on zero divisor.
std::pair<RatPolynomial, RatPolynomial> divmod(const RatPolynomial& a, const RatPolynomial& b);
RatPolynomial operator%(const RatPolynomial& a, const RatPolynomial& b);
// Exact division in Z[x]; nullopt-free: throws PreconditionError when b does not divide a.
IntPolynomial exact_quotient(const IntPolynomial& a, const IntPolynomial& b);
bool divides(const IntPolynomial& b, const IntPolynomial& a);
// Remainder of a modulo a monic b, computed in Z[x].
IntPolynomial rem_monic(const IntPolynomial& a, const IntPolynomial& b);

// Monic gcd over Q (zero if both zero).
RatPolynomial gcd(const RatPolynomial& a, const RatPolynomial& b);
// Primitive integer gcd with positive leading coefficient.
IntPolynomial gcd(const IntPolynomial& a, const IntPolynomial& b);

IntPolynomial pow(const IntPolynomial& p, unsigned exponent);

// Evaluate p at a square matrix (Horner).
template <class T, class M>
Matrix<M> evaluate_at_matrix(const Polynomial<T>& p, const Matrix<M>& m) {
  Matrix<M> acc(m.rows(), m.cols());
  const auto& c = p.coeffs();
  for (std::size_t i = c.size(); i-- > 0;) {
    acc = acc * m;
    for (std::size_t k = 0; k < m.rows(); ++k) acc(k, k) += M(c[i]);
  }
  return acc;
}

IntPolynomial charpoly(const IntMatrix& m);
// Characteristic polynomial of a rational matrix; throws when not integral.
IntPolynomial integral_charpoly(const RatMatrix& m);
RatPolynomial rational_charpoly(const RatMatrix& m);

// Companion matrix acting on column vectors: e_i -> e_{i+1}, last column -coeffs.
IntMatrix companion(const IntPolynomial& monic);

// Human-readable form such as "x^4 - x^3 - x^2 - x + 1".
std::string to_string(const IntPolynomial& p, const std::string& var = "x");
std::string to_string(const RatPolynomial& p, const std::string& var = "x");

}  // namespace salem
