#include <algorithm>

#include "salem/isometry.hpp"
#include "salem/polyarith.hpp"

namespace salem {

bool is_isometry(const Lattice& lattice, const RatMatrix& m) {
  if (m.rows() != lattice.rank() || m.cols() != lattice.rank()) return false;
  const RatMatrix g = to_rat(lattice.gram());
  return m.transposed() * g * m == g;
}

bool is_isometry(const Lattice& lattice, const IntMatrix& m) {
  if (m.rows() != lattice.rank() || m.cols() != lattice.rank()) return false;
  return m.transposed() * lattice.gram() * m == lattice.gram();
}

Isometry::Isometry(Lattice lattice, RatMatrix matrix) : lattice_(std::move(lattice)), matrix_(std::move(matrix)) {
  if (!is_isometry(lattice_, matrix_)) throw PreconditionError("matrix is not an isometry of the lattice");
}

IntMatrix Isometry::integral_matrix() const {
  auto m = to_int(matrix_);
  if (!m) throw PreconditionError("isometry is not integral");
  return *m;
}

RatMatrix Isometry::inverse() const {
  const RatMatrix g = to_rat(lattice_.gram());
  return dual_basis(lattice_) * matrix_.transposed() * g;
}

RatPolynomial Isometry::charpoly() const { return rational_charpoly(matrix_); }

RatMatrix evaluate(const TwistElement& a, const Isometry& f) {
  const RatMatrix w = f.matrix() + f.inverse();
  return evaluate_at_matrix(a.polynomial, w);
}

KernelSublattice kernel_sublattice(const Isometry& f, const IntPolynomial& p) {
  if (p.degree() < 1) throw PreconditionError("kernel polynomial must have positive degree");
  if ((f.charpoly() % to_rat(p)).degree() >= 0)
    throw PreconditionError("polynomial does not divide the characteristic polynomial");
  const RatMatrix value = evaluate_at_matrix(p, f.matrix());
  const Int den = denominator(value);
  const IntMatrix k = integer_kernel(*to_int(Rat(den) * value));
  const Sublattice sub = sublattice(f.lattice(), k);
  // f B = B R, solved through the normal equations
  const RatMatrix b = to_rat(k);
  const RatMatrix bt = b.transposed();
  const RatMatrix r = inverse_or_throw(bt * b) * bt * f.matrix() * b;
  if (b * r != f.matrix() * b) throw Error("internal: kernel is not invariant");
  return {sub, r};
}

Twist twist(const Isometry& f, const TwistElement& a) {
  const auto av = to_int(evaluate(a, f));
  if (!av) throw PreconditionError("twist element does not preserve the lattice");
  const IntMatrix g = av->transposed() * f.lattice().gram();
  if (!g.is_symmetric()) throw Error("internal: twisted form is not symmetric");
  if (determinant(g) == 0) throw PreconditionError("twisted form is degenerate");
  Lattice twisted(g);
  return {twisted, Isometry(twisted, f.matrix())};
}

Int twist_norm(const IntPolynomial& trace_poly, const TwistElement& a) {
  if (!trace_poly.is_monic()) throw PreconditionError("trace polynomial must be monic");
  if (a.polynomial.degree() < 0) return 0;
  if (trace_poly.degree() == 0) return 1;
  return resultant(trace_poly, a.polynomial);
}

std::vector<IntMatrix> invariant_symmetric_forms(const RatMatrix& f) {
  const std::size_t n = f.rows();
  if (!f.is_square() || !inverse(f)) throw PreconditionError("invariant forms need an invertible square matrix");
  std::vector<std::pair<std::size_t, std::size_t>> vars;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) vars.emplace_back(i, j);
  RatMatrix eq(vars.size(), vars.size());
  // row (r, s): (f^T G f)_rs - G_rs
  for (std::size_t e = 0; e < vars.size(); ++e) {
    const auto [r, s] = vars[e];
    for (std::size_t v = 0; v < vars.size(); ++v) {
      const auto [i, j] = vars[v];
      Rat c = f(i, r) * f(j, s);
      if (i != j) c += f(j, r) * f(i, s);
      if (i == r && j == s) c -= 1;
      eq(e, v) = c;
    }
  }
  const RatMatrix basis = nullspace(eq);
  std::vector<IntMatrix> out;
  for (std::size_t c = 0; c < basis.cols(); ++c) {
    RatMatrix g(n, n);
    for (std::size_t v = 0; v < vars.size(); ++v) g(vars[v].first, vars[v].second) = g(vars[v].second, vars[v].first) = basis(v, c);
    IntMatrix gi = *to_int(Rat(denominator(g)) * g);
    Int content = 0;
    for (const auto& x : gi.data()) content = gcd(content, x);
    if (content > 1)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) gi(i, j) /= content;
    out.push_back(gi);
  }
  return out;
}

std::vector<IntMatrix> invariant_symmetric_forms(const IntMatrix& f) { return invariant_symmetric_forms(to_rat(f)); }

std::optional<IntMatrix> find_invariant_form(const IntMatrix& f, const Signature& signature, long box) {
  const auto forms = invariant_symmetric_forms(f);
  const std::size_t k = forms.size();
  if (k == 0 || box < 1) return std::nullopt;
  double volume = 1;
  for (std::size_t i = 0; i < k; ++i) volume *= static_cast<double>(2 * box + 1);
  if (volume > 5e7) throw SearchExhausted("invariant form search box is too large");
  for (long r = 1; r <= box; ++r) {
    std::vector<long> c(k, -r);
    while (true) {
      const bool on_shell = std::any_of(c.begin(), c.end(), [&](long x) { return x == r || x == -r; });
      if (on_shell) {
        IntMatrix g(f.rows(), f.rows());
        for (std::size_t i = 0; i < k; ++i)
          if (c[i] != 0) g = g + Int(c[i]) * forms[i];
        bool even = true;
        for (std::size_t i = 0; i < g.rows() && even; ++i) even = mpz_even_p(g(i, i).get_mpz_t());
        if (even && determinant(g) != 0) {
          const Inertia in = inertia(g);
          if (in.positive == signature.positive && in.negative == signature.negative) return g;
        }
      }
      std::size_t i = k;
      while (i-- > 0) {
        if (++c[i] <= r) break;
        c[i] = -r;
      }
      if (i == static_cast<std::size_t>(-1)) break;
    }
  }
  return std::nullopt;
}

}  // namespace salem
