#include "salem/linalg.hpp"

#include <algorithm>

namespace salem {
namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(RatMatrix& a) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && a(p, c) == 0) ++p;
    if (p == a.rows()) continue;
    a.swap_rows(p, r);
    const Rat inv = 1 / a(r, c);
    for (std::size_t j = c; j < a.cols(); ++j) a(r, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || a(i, c) == 0) continue;
      const Rat f = a(i, c);
      for (std::size_t j = c; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

Int round_div(const Int& a, const Int& b) {
  // nearest integer to a / b, b != 0
  Int twice = 2 * a + b;
  Int den = 2 * b;
  return floor_div(twice, den);
}

void row_axpy(IntMatrix& m, std::size_t dst, std::size_t src, const Int& f) {
  // row dst -= f * row src
  if (f == 0) return;
  for (std::size_t j = 0; j < m.cols(); ++j)
    if (m(src, j) != 0) m(dst, j) -= f * m(src, j);
}

void col_axpy(IntMatrix& m, std::size_t dst, std::size_t src, const Int& f) {
  if (f == 0) return;
  for (std::size_t i = 0; i < m.rows(); ++i)
    if (m(i, src) != 0) m(i, dst) -= f * m(i, src);
}

struct Gcdext {
  Int g, x, y;
};

Gcdext gcdext(const Int& a, const Int& b) {
  Gcdext r;
  mpz_gcdext(r.g.get_mpz_t(), r.x.get_mpz_t(), r.y.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

// Replace rows (i, k) by (x*ri + y*rk, (a/g)*rk - (b/g)*ri) where a, b are
// the entries in column c; afterwards row k has a zero in column c.
void combine_rows(IntMatrix& m, std::size_t i, std::size_t k, std::size_t c) {
  const Int a = m(i, c);
  const Int b = m(k, c);
  const Gcdext e = gcdext(a, b);
  const Int ag = a / e.g;
  const Int bg = b / e.g;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    const Int ri = m(i, j);
    const Int rk = m(k, j);
    m(i, j) = e.x * ri + e.y * rk;
    m(k, j) = ag * rk - bg * ri;
  }
}

}  // namespace

Int determinant(const IntMatrix& m) {
  if (!m.is_square()) throw PreconditionError("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  int sgn = 1;
  Int prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sgn = -sgn;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Int v = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        a(i, j) = std::move(v);
      }
    }
    prev = a(k, k);
  }
  return sgn * a(n - 1, n - 1);
}

Rat determinant(const RatMatrix& m) {
  if (!m.is_square()) throw PreconditionError("determinant of a non-square matrix");
  const Int den = denominator(m);
  IntMatrix scaled(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) scaled(i, j) = Rat(m(i, j) * den).get_num();
  Rat d(determinant(scaled));
  for (std::size_t i = 0; i < m.rows(); ++i) d /= den;
  return d;
}

std::size_t rank(const RatMatrix& m) {
  RatMatrix a = m;
  return rref(a).size();
}

std::size_t rank(const IntMatrix& m) { return rank(to_rat(m)); }

std::optional<RatMatrix> inverse(const RatMatrix& m) {
  if (!m.is_square()) throw PreconditionError("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  RatMatrix aug = hstack(m, RatMatrix::identity(n));
  const auto pivots = rref(aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1) return std::nullopt;
  return aug.block(0, n, n, n);
}

RatMatrix inverse_or_throw(const RatMatrix& m) {
  auto inv = inverse(m);
  if (!inv) throw PreconditionError("matrix is singular");
  return *inv;
}

RatMatrix nullspace(const RatMatrix& m) {
  RatMatrix a = m;
  const auto pivots = rref(a);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<RatVector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    RatVector v(m.cols());
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a(r, free);
    basis.push_back(std::move(v));
  }
  RatMatrix out(m.cols(), basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j) out.set_col(j, basis[j]);
  return out;
}

std::optional<RatVector> solve(const RatMatrix& m, const RatVector& b) {
  RatMatrix bm(b.size(), 1, b);
  RatMatrix aug = hstack(m, bm);
  const auto pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
  RatVector x(m.cols());
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(r, m.cols());
  return x;
}

IntMatrix hermite_rows(const IntMatrix& m) {
  IntMatrix a = m;
  std::size_t r = 0;
  std::vector<std::size_t> pivot_cols;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && a(p, c) == 0) ++p;
    if (p == a.rows()) continue;
    a.swap_rows(p, r);
    for (std::size_t k = r + 1; k < a.rows(); ++k)
      if (a(k, c) != 0) combine_rows(a, r, k, c);
    if (a(r, c) < 0)
      for (std::size_t j = 0; j < a.cols(); ++j) a(r, j) = -a(r, j);
    for (std::size_t i = 0; i < r; ++i) row_axpy(a, i, r, floor_div(a(i, c), a(r, c)));
    pivot_cols.push_back(c);
    ++r;
  }
  return a.block(0, 0, r, a.cols());
}

IntMatrix hermite_rows_modular(const IntMatrix& m, const Int& modulus) {
  const std::size_t n = m.cols();
  const Int d = abs(modulus);
  if (d == 0) throw PreconditionError("modular HNF needs a nonzero modulus");
  IntMatrix b(n, n);
  for (std::size_t i = 0; i < n; ++i) b(i, i) = d;
  IntVector v(n), row_c(n);
  for (std::size_t gi = 0; gi < m.rows(); ++gi) {
    for (std::size_t j = 0; j < n; ++j) v[j] = mod_floor(m(gi, j), d);
    for (std::size_t c = 0; c < n; ++c) {
      if (v[c] == 0) continue;
      const Gcdext e = gcdext(b(c, c), v[c]);
      const Int ag = b(c, c) / e.g;
      const Int bg = v[c] / e.g;
      for (std::size_t j = c; j < n; ++j) {
        row_c[j] = e.x * b(c, j) + e.y * v[j];
        v[j] = mod_floor(Int(ag * v[j] - bg * b(c, j)), d);
      }
      b(c, c) = row_c[c];
      for (std::size_t j = c + 1; j < n; ++j) b(c, j) = mod_floor(row_c[j], d);
    }
  }
  for (std::size_t c = 0; c < n; ++c) {
    if (b(c, c) < 0)
      for (std::size_t j = c; j < n; ++j) b(c, j) = -b(c, j);
  }
  for (std::size_t c = n; c-- > 0;)
    for (std::size_t i = 0; i < c; ++i) row_axpy(b, i, c, floor_div(b(i, c), b(c, c)));
  return b;
}

SmithForm smith_form(const IntMatrix& m) {
  IntMatrix a = m;
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  IntMatrix u = IntMatrix::identity(rows);
  IntMatrix v = IntMatrix::identity(cols);
  auto swap_r = [&](std::size_t i, std::size_t j) {
    a.swap_rows(i, j);
    u.swap_rows(i, j);
  };
  auto swap_c = [&](std::size_t i, std::size_t j) {
    a.swap_cols(i, j);
    v.swap_cols(i, j);
  };
  std::size_t t = 0;
  for (; t < std::min(rows, cols); ++t) {
    // smallest nonzero entry of the trailing block becomes the pivot
    std::size_t bi = rows, bj = cols;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (a(i, j) != 0 && (bi == rows || abs(a(i, j)) < abs(a(bi, bj)))) {
          bi = i;
          bj = j;
        }
    if (bi == rows) break;
    swap_r(t, bi);
    swap_c(t, bj);
    while (true) {
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a(i, t) == 0) continue;
        const Int q = round_div(a(i, t), a(t, t));
        row_axpy(a, i, t, q);
        row_axpy(u, i, t, q);
        if (a(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a(t, j) == 0) continue;
        const Int q = round_div(a(t, j), a(t, t));
        col_axpy(a, j, t, q);
        col_axpy(v, j, t, q);
        if (a(t, j) != 0) clean = false;
      }
      if (!clean) {
        std::size_t bi2 = t, bj2 = t;
        for (std::size_t i = t + 1; i < rows; ++i)
          if (a(i, t) != 0 && abs(a(i, t)) < abs(a(bi2, bj2))) {
            bi2 = i;
            bj2 = t;
          }
        for (std::size_t j = t + 1; j < cols; ++j)
          if (a(t, j) != 0 && abs(a(t, j)) < abs(a(bi2, bj2))) {
            bi2 = t;
            bj2 = j;
          }
        if (bi2 != t) swap_r(t, bi2);
        if (bj2 != t) swap_c(t, bj2);
        continue;
      }
      // the pivot must divide the whole trailing block
      std::size_t bad = rows;
      for (std::size_t i = t + 1; i < rows && bad == rows; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (!mpz_divisible_p(a(i, j).get_mpz_t(), a(t, t).get_mpz_t())) {
            bad = i;
            break;
          }
      if (bad == rows) break;
      row_axpy(a, t, bad, Int(-1));
      row_axpy(u, t, bad, Int(-1));
    }
    if (a(t, t) < 0) {
      for (std::size_t j = 0; j < cols; ++j) a(t, j) = -a(t, j);
      for (std::size_t j = 0; j < rows; ++j) u(t, j) = -u(t, j);
    }
  }
  SmithForm out;
  for (std::size_t i = 0; i < t; ++i) out.invariants.push_back(a(i, i));
  out.diagonal = std::move(a);
  out.left = std::move(u);
  out.right = std::move(v);
  return out;
}

IntMatrix integer_kernel(const IntMatrix& m) {
  const SmithForm s = smith_form(m);
  const std::size_t r = s.invariants.size();
  const std::size_t n = m.cols();
  IntMatrix k(n, n - r);
  for (std::size_t j = r; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) k(i, j - r) = s.right(i, j);
  if (k.cols() == 0) return k;
  // canonical basis: column HNF of the kernel
  IntMatrix h = hermite_rows(k.transposed());
  return h.transposed();
}

IntMatrix saturate(const IntMatrix& b) {
  const std::size_t n = b.rows();
  if (b.cols() == 0) return IntMatrix(n, 0);
  const IntMatrix perp = integer_kernel(b.transposed());
  if (perp.cols() == 0) return IntMatrix::identity(n);
  return integer_kernel(perp.transposed());
}

bool is_primitive(const IntMatrix& b) {
  if (b.cols() == 0) return true;
  const SmithForm s = smith_form(b);
  if (s.invariants.size() != b.cols()) return false;
  return std::all_of(s.invariants.begin(), s.invariants.end(), [](const Int& d) { return d == 1; });
}

RatMatrix z_basis(const RatMatrix& g) {
  const Int den = denominator(g);
  IntMatrix rows(g.cols(), g.rows());
  for (std::size_t j = 0; j < g.cols(); ++j)
    for (std::size_t i = 0; i < g.rows(); ++i) rows(j, i) = Rat(g(i, j) * den).get_num();
  const IntMatrix h = hermite_rows(rows);
  RatMatrix out(g.rows(), h.rows());
  for (std::size_t j = 0; j < h.rows(); ++j)
    for (std::size_t i = 0; i < g.rows(); ++i) out(i, j) = make_rat(h(j, i), den);
  return out;
}

RatMatrix z_basis_over_standard(const RatMatrix& g) {
  const std::size_t n = g.rows();
  const Int den = denominator(g);
  IntMatrix rows(g.cols(), n);
  for (std::size_t j = 0; j < g.cols(); ++j)
    for (std::size_t i = 0; i < n; ++i) rows(j, i) = Rat(g(i, j) * den).get_num();
  const IntMatrix h = hermite_rows_modular(rows, den);
  RatMatrix out(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) out(i, j) = make_rat(h(j, i), den);
  return out;
}

RatVector congruence_diagonal(const RatMatrix& sym) {
  if (!sym.is_symmetric()) throw PreconditionError("inertia of a non-symmetric matrix");
  RatMatrix a = sym;
  const std::size_t n = a.rows();
  RatVector diag;
  // Work on the trailing block [k, n); each step splits off one diagonal entry.
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a(p, p) == 0) ++p;
    if (p == n) {
      // all remaining diagonal entries vanish: use e_k + e_j if some a_kj != 0
      std::size_t i = n, j = n;
      for (std::size_t r = k; r < n && i == n; ++r)
        for (std::size_t c = r + 1; c < n; ++c)
          if (a(r, c) != 0) {
            i = r;
            j = c;
            break;
          }
      if (i == n) {
        for (std::size_t r = k; r < n; ++r) diag.push_back(0);
        return diag;
      }
      // replace basis vector i by e_i + e_j: row/col i += row/col j
      for (std::size_t c = k; c < n; ++c) a(i, c) += a(j, c);
      for (std::size_t r = k; r < n; ++r) a(r, i) += a(r, j);
      p = i;
    }
    a.swap_rows(k, p);
    a.swap_cols(k, p);
    const Rat piv = a(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a(i, k) == 0) continue;
      const Rat f = a(i, k) / piv;
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      a(i, k) = 0;
      a(k, i) = 0;
    }
    diag.push_back(piv);
  }
  return diag;
}

Inertia inertia(const RatMatrix& sym) {
  Inertia out;
  for (const Rat& d : congruence_diagonal(sym)) {
    const int s = sign(d);
    if (s > 0) ++out.positive;
    else if (s < 0) ++out.negative;
    else ++out.zero;
  }
  return out;
}

Inertia inertia(const IntMatrix& sym) { return inertia(to_rat(sym)); }

namespace {

template <class T>
std::vector<T> berkowitz(const Matrix<T>& a) {
  if (!a.is_square()) throw PreconditionError("characteristic polynomial of a non-square matrix");
  const std::size_t n = a.rows();
  std::vector<T> poly{T(1)};  // descending coefficients of det(xI - A_k)
  for (std::size_t k = 1; k <= n; ++k) {
    const std::size_t m = k - 1;  // size of the leading block A_m
    std::vector<T> t(k + 1);
    t[0] = 1;
    t[1] = -a(m, m);
    // c_j = A_m^j C where C = column m above the diagonal
    std::vector<T> c(m);
    for (std::size_t i = 0; i < m; ++i) c[i] = a(i, m);
    for (std::size_t j = 2; j <= k; ++j) {
      T s = 0;
      for (std::size_t i = 0; i < m; ++i) s += a(m, i) * c[i];
      t[j] = -s;
      if (j == k) break;
      std::vector<T> next(m);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t l = 0; l < m; ++l)
          if (c[l] != 0) next[i] += a(i, l) * c[l];
      c = std::move(next);
    }
    std::vector<T> out(k + 1);
    for (std::size_t i = 0; i <= k; ++i)
      for (std::size_t j = 0; j < poly.size() && j <= i; ++j) out[i] += t[i - j] * poly[j];
    poly = std::move(out);
  }
  std::reverse(poly.begin(), poly.end());
  return poly;
}

}  // namespace

IntVector charpoly_coefficients(const IntMatrix& m) { return berkowitz(m); }
RatVector charpoly_coefficients(const RatMatrix& m) { return berkowitz(m); }

IntMatrix mod_matrix(const IntMatrix& m, const Int& modulus) {
  IntMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = mod_floor(m(i, j), modulus);
  return out;
}

IntMatrix mul_mod(const IntMatrix& a, const IntMatrix& b, const Int& modulus) {
  return mod_matrix(a * b, modulus);
}

IntMatrix pow_mod(IntMatrix base, Int exponent, const Int& modulus) {
  if (exponent < 0) throw PreconditionError("negative modular matrix power");
  IntMatrix result = mod_matrix(IntMatrix::identity(base.rows()), modulus);
  base = mod_matrix(base, modulus);
  while (exponent > 0) {
    if (mpz_odd_p(exponent.get_mpz_t())) result = mul_mod(result, base, modulus);
    exponent >>= 1;
    if (exponent > 0) base = mul_mod(base, base, modulus);
  }
  return result;
}

RatMatrix to_rat(const IntMatrix& m) {
  RatMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = Rat(m(i, j));
  return out;
}

RatVector to_rat(const IntVector& v) {
  RatVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = Rat(v[i]);
  return out;
}

std::optional<IntMatrix> to_int(const RatMatrix& m) {
  IntMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (!is_integer(m(i, j))) return std::nullopt;
      out(i, j) = m(i, j).get_num();
    }
  return out;
}

std::optional<IntVector> to_int(const RatVector& v) {
  IntVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!is_integer(v[i])) return std::nullopt;
    out[i] = v[i].get_num();
  }
  return out;
}

Int denominator(const RatMatrix& m) {
  Int d = 1;
  for (const Rat& x : m.data()) d = lcm(d, x.get_den());
  return d;
}

Int denominator(const RatVector& v) {
  Int d = 1;
  for (const Rat& x : v) d = lcm(d, x.get_den());
  return d;
}

}  // namespace salem
