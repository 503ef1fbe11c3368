#include "salem/realize.hpp"

namespace salem {

namespace {

IntMatrix rows(std::initializer_list<std::initializer_list<long>> init) {
  std::vector<IntVector> r;
  for (const auto& row : init) r.emplace_back(row.begin(), row.end());
  return IntMatrix::from_rows(r);
}

// E10 = U + E8 as the root lattice of the T(2,3,7) diagram: a chain of
// nine nodes with one more node attached to the third.
IntMatrix e10_gram() {
  IntMatrix g(10, 10);
  for (std::size_t i = 0; i < 10; ++i) g(i, i) = -2;
  auto link = [&](std::size_t a, std::size_t b) { g(a, b) = g(b, a) = 1; };
  for (std::size_t i = 0; i + 1 < 9; ++i) link(i, i + 1);
  link(2, 9);
  return g;
}

// Product of the simple reflections x -> x + <x, e_i> e_i in node order.
IntMatrix coxeter_element(const IntMatrix& g) {
  const std::size_t n = g.rows();
  IntMatrix c = IntMatrix::identity(n);
  for (std::size_t i = 0; i < n; ++i) {
    IntMatrix s = IntMatrix::identity(n);
    for (std::size_t j = 0; j < n; ++j) s(i, j) += g(j, i);
    c = c * s;
  }
  return c;
}

const IntPolynomial quadratic{1, -3, 1};
const IntPolynomial quartic{1, -1, -1, -1, 1};
const IntPolynomial lehmer{1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1};

}  // namespace

std::vector<Seed> curated_seeds() {
  std::vector<Seed> out;
  const Lattice s2(rows({{2, 3}, {3, 2}}));
  const Lattice minus5(rows({{2, 1}, {1, -2}}));
  out.push_back({"quadratic-torus", SurfaceKind::torus, quadratic, s2, companion(quadratic), minus5});
  out.push_back({"quadratic-k3", SurfaceKind::k3, quadratic, s2, companion(quadratic),
                 direct_sum(minus5, lattices::named("2E8"))});
  const Lattice s4(rows({{-2, -1, -2, -4}, {-1, -2, -1, -2}, {-2, -1, -2, -1}, {-4, -2, -1, -2}}));
  out.push_back({"quartic-k3", SurfaceKind::k3, quartic, s4, companion(quartic), lattices::named("U+E8+3A2")});
  const Lattice e10(e10_gram());
  const IntMatrix cox = coxeter_element(e10.gram());
  out.push_back({"lehmer-enriques", SurfaceKind::enriques, lehmer, e10, cox, std::nullopt});
  return out;
}

std::optional<Seed> find_seed(const IntPolynomial& s, SurfaceKind kind) {
  for (auto& seed : curated_seeds())
    if (seed.salem == s && seed.kind == kind) return seed;
  return std::nullopt;
}

}  // namespace salem
