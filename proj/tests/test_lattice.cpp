#include <algorithm>
#include <map>
#include <random>

#include "doctest.h"
#include "salem/kernels.hpp"
#include "salem/lattice.hpp"

using namespace salem;

namespace {

IntMatrix M(std::vector<std::vector<long>> rows) {
  std::vector<IntVector> r;
  for (auto& row : rows) {
    IntVector v;
    for (long x : row) v.emplace_back(x);
    r.push_back(v);
  }
  return IntMatrix::from_rows(r);
}

IntMatrix diag(std::vector<long> d) {
  IntMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

// Every element of L^v/L as a representative with entries in [0, 1),
// found by scanning the grid (1/|det|) Z^n / Z^n.
std::vector<RatVector> brute_dual_quotient(const Lattice& l) {
  const long d = abs(l.determinant()).get_si();
  const std::size_t n = l.rank();
  std::vector<RatVector> out;
  std::vector<long> c(n, 0);
  const RatMatrix g = to_rat(l.gram());
  while (true) {
    RatVector v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = make_rat(Int(c[i]), Int(d));
    if (to_int(g * v)) out.push_back(v);
    std::size_t i = 0;
    while (i < n && ++c[i] == d) c[i++] = 0;
    if (i == n) break;
  }
  return out;
}

std::map<Rat, long> value_census_brute(const Lattice& l) {
  std::map<Rat, long> census;
  for (const auto& v : brute_dual_quotient(l)) ++census[reduce_mod(l.product(v, v), Int(2))];
  return census;
}

std::map<Rat, long> value_census(const FiniteQuadraticForm& f) {
  std::map<Rat, long> census;
  IntVector c(f.size(), Int(0));
  while (true) {
    ++census[f.value(c)];
    std::size_t i = 0;
    while (i < f.size() && ++c[i] == f.orders[i]) c[i++] = 0;
    if (i == f.size()) break;
  }
  return census;
}

// All vectors of norm m in the box [-r, r]^n.
std::vector<IntVector> brute_norm(const Lattice& l, long m, long r) {
  const std::size_t n = l.rank();
  std::vector<IntVector> out;
  IntVector x(n, Int(-r));
  while (true) {
    if (l.norm(x) == m) out.push_back(x);
    std::size_t i = 0;
    while (i < n && ++x[i] > r) x[i++] = -r;
    if (i == n) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Random negative definite even lattice -2 B^T B.
Lattice random_definite(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<long> d(-2, 2);
  while (true) {
    IntMatrix b(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) b(i, j) = d(rng);
    if (determinant(b) == 0) continue;
    IntMatrix g = b.transposed() * b;
    return Lattice(Int(-2) * g);
  }
}

}  // namespace

TEST_CASE("determinants and signatures of named lattices") {
  CHECK(lattices::hyperbolic_plane().determinant() == -1);
  CHECK(lattices::hyperbolic_plane().signature() == Signature{1, 1});
  CHECK(lattices::e_n(8).determinant() == 1);
  CHECK(lattices::e_n(8).signature() == Signature{0, 8});
  CHECK(abs(lattices::e_n(7).determinant()) == 2);
  CHECK(abs(lattices::e_n(6).determinant()) == 3);
  CHECK(abs(lattices::d_n(4).determinant()) == 4);
  CHECK(abs(lattices::a_n(2).determinant()) == 3);
  CHECK(Lattice(diag({-2, 2})).determinant() == -4);
  const Lattice k3 = lattices::named("3U+2E8");
  CHECK(k3.rank() == 22);
  CHECK(k3.signature() == Signature{3, 19});
  CHECK(k3.determinant() == -1);
  CHECK(k3.is_even());
  CHECK(lattices::named("U+E8").signature() == Signature{1, 9});
  CHECK(lattices::named("3U").signature() == Signature{3, 3});
  CHECK(lattices::named("U(3) + A2(-1)").determinant() == -27);
  CHECK_THROWS_AS(lattices::named("Q7"), ParseError);
  CHECK_THROWS_AS(lattices::named("E9"), PreconditionError);
  CHECK_THROWS_AS(Lattice(M({{1, 2}, {3, 4}})), PreconditionError);
  CHECK_THROWS_AS(Lattice(M({{1, 1}, {1, 1}})), PreconditionError);
}

TEST_CASE("signature and determinant are additive and multiplicative") {
  std::mt19937_64 rng(21);
  const std::vector<Lattice> pool = {lattices::hyperbolic_plane(), lattices::a_n(3), lattices::e_n(6),
                                     Lattice(diag({2, -6})), lattices::d_n(5).scaled(Int(-1))};
  for (std::size_t i = 0; i < pool.size(); ++i)
    for (std::size_t j = 0; j < pool.size(); ++j) {
      const Lattice s = direct_sum(pool[i], pool[j]);
      CHECK(s.determinant() == pool[i].determinant() * pool[j].determinant());
      CHECK(s.signature().positive == pool[i].signature().positive + pool[j].signature().positive);
      CHECK(s.signature().negative == pool[i].signature().negative + pool[j].signature().negative);
    }
}

TEST_CASE("dual basis") {
  CHECK(dual_basis(lattices::hyperbolic_plane()) == to_rat(M({{0, 1}, {1, 0}})));
  CHECK(dual_basis(Lattice(M({{-2}})))(0, 0) == Rat(-1, 2));
  CHECK(to_int(dual_basis(lattices::e_n(8))).has_value());
}

TEST_CASE("discriminant forms") {
  CHECK(discriminant_form(lattices::e_n(8)).is_trivial());
  const auto a1 = discriminant_form(Lattice(M({{-2}})));
  REQUIRE(a1.size() == 1);
  CHECK(a1.orders[0] == 2);
  CHECK(a1.q[0] == Rat(3, 2));
  const Lattice t(M({{22, 33}, {33, 22}}));
  const auto ft = discriminant_form(t);
  CHECK(ft.invariant_factors() == IntVector{Int(11), Int(55)});
  CHECK(ft.order() == abs(t.determinant()));
  // brute force over the dual quotient: order, exponent and value census
  const auto reps = brute_dual_quotient(t);
  CHECK(Int(static_cast<long>(reps.size())) == abs(t.determinant()));
  long eleven_torsion = 0;
  for (const auto& v : reps) {
    RatVector w = v;
    for (auto& x : w) x *= 11;
    if (to_int(w)) ++eleven_torsion;
  }
  CHECK(eleven_torsion == 121);
  CHECK(value_census(ft) == value_census_brute(t));
  CHECK_THROWS_AS(discriminant_form(Lattice(M({{1}}))), PreconditionError);
}

TEST_CASE("order of the discriminant group equals |det|") {
  std::mt19937_64 rng(22);
  std::uniform_int_distribution<long> e(-3, 3);
  int checked = 0;
  while (checked < 25) {
    IntMatrix g(3, 3);
    for (std::size_t i = 0; i < 3; ++i) {
      g(i, i) = 2 * e(rng);
      for (std::size_t j = i + 1; j < 3; ++j) g(i, j) = g(j, i) = e(rng);
    }
    if (determinant(g) == 0 || abs(determinant(g)) > 60) continue;
    const Lattice l(g);
    const auto f = discriminant_form(l);
    CHECK(f.order() == abs(l.determinant()));
    CHECK(value_census(f) == value_census_brute(l));
    // q(x+y) - q(x) - q(y) = 2 b(x, y)
    for (std::size_t i = 0; i < f.size(); ++i)
      for (std::size_t j = 0; j < f.size(); ++j) {
        IntVector x(f.size()), y(f.size()), s(f.size());
        x[i] = 1;
        y[j] = 1;
        s[i] += 1;
        s[j] += 1;
        CHECK(reduce_mod(Rat(f.value(s) - f.value(x) - f.value(y) - 2 * f.bilinear(x, y)), Int(2)) == 0);
      }
    ++checked;
  }
}

TEST_CASE("discriminant form of a direct sum") {
  const Lattice a = lattices::a_n(2), b = Lattice(M({{-2}})), c = lattices::d_n(4);
  for (const auto& [x, y] : {std::pair{a, b}, std::pair{a, c}, std::pair{b, c}}) {
    const auto fs = discriminant_form(direct_sum(x, y));
    const auto fd = direct_sum(discriminant_form(x), discriminant_form(y));
    CHECK(fs.invariant_factors() == fd.invariant_factors());
    CHECK(value_census(fs) == value_census(fd));
    CHECK(find_isometry(fs, fd).has_value());
  }
}

TEST_CASE("p-primary parts") {
  const auto z6 = discriminant_form(direct_sum(Lattice(M({{-2}})), lattices::a_n(2)));
  CHECK(z6.order() == 6);
  const auto two = p_primary_part(z6, Int(2));
  CHECK(two.orders == IntVector{Int(2)});
  CHECK(p_primary_part(z6, Int(5)).is_trivial());
  const auto ft = discriminant_form(Lattice(M({{22, 33}, {33, 22}})));
  const auto eleven = p_primary_part(ft, Int(11));
  CHECK(eleven.orders == IntVector{Int(11), Int(11)});
  CHECK(p_primary_part(ft, Int(5)).orders == IntVector{Int(5)});
  // the primary decomposition is isometric to the original
  CHECK(find_isometry(ft, primary_decomposition(ft)).has_value());
}

TEST_CASE("isometry search") {
  const auto a2 = discriminant_form(lattices::a_n(2));
  const auto a2pos = discriminant_form(lattices::a_n(2).scaled(Int(-1)));
  CHECK(!find_isometry(a2, a2pos).has_value());
  const auto anti = find_anti_isometry(a2, a2pos);
  REQUIRE(anti.has_value());
  CHECK(is_anti_isometry(*anti));
  // U(2) and D4 have isomorphic groups (Z/2)^2 but different forms
  const auto u2 = discriminant_form(lattices::hyperbolic_plane().scaled(Int(2)));
  const auto d4 = discriminant_form(lattices::d_n(4));
  CHECK(u2.invariant_factors() == d4.invariant_factors());
  CHECK(!find_isometry(u2, d4).has_value());
  // hyperbolic form on (Z/11)^2 is its own negative
  const auto u11 = discriminant_form(lattices::hyperbolic_plane().scaled(Int(11)));
  CHECK(find_anti_isometry(u11, u11).has_value());
}

namespace {

// Every homomorphism from a to b given by generator images, checked for
// being a bijective isometry. Only for small groups.
bool brute_isometric(const FiniteQuadraticForm& a, const FiniteQuadraticForm& b) {
  if (a.order() != b.order()) return false;
  std::vector<IntVector> elements;
  IntVector c(b.size());
  while (true) {
    elements.push_back(c);
    std::size_t i = 0;
    for (; i < c.size(); ++i) {
      if (++c[i] < b.orders[i]) break;
      c[i] = 0;
    }
    if (i == c.size()) break;
  }
  std::vector<std::size_t> pick(a.size(), 0);
  while (true) {
    GlueMap m{a, b, IntMatrix(b.size(), a.size())};
    for (std::size_t g = 0; g < a.size(); ++g)
      for (std::size_t k = 0; k < b.size(); ++k) m.images(k, g) = elements[pick[g]][k];
    if (is_homomorphism(m) && preserves_values(m, 1) && is_bijective(m)) return true;
    std::size_t i = 0;
    for (; i < pick.size(); ++i) {
      if (++pick[i] < elements.size()) break;
      pick[i] = 0;
    }
    if (i == pick.size()) return false;
  }
}

}  // namespace

TEST_CASE("odd prime isometries agree with exhaustive matching") {
  std::mt19937 rng(77);
  std::uniform_int_distribution<long> small(-6, 6);
  for (const long p : {3L, 5L}) {
    std::map<IntVector, std::vector<FiniteQuadraticForm>> by_group;
    for (int trial = 0; trial < 400; ++trial) {
      const IntMatrix g = M({{2 * small(rng), small(rng)}, {0, 2 * small(rng)}});
      IntMatrix s = g;
      s(1, 0) = s(0, 1);
      if (determinant(s) == 0) continue;
      const auto part = p_primary_part(discriminant_form(Lattice(s)), Int(p));
      if (part.is_trivial() || part.order() > 125) continue;
      auto& bucket = by_group[part.invariant_factors()];
      if (bucket.size() < 6) bucket.push_back(part);
    }
    int positive = 0, negative = 0;
    for (const auto& [group, forms] : by_group) {
      for (std::size_t i = 0; i < forms.size(); ++i)
        for (std::size_t j = i; j < forms.size(); ++j) {
          const bool expected = brute_isometric(forms[i], forms[j]);
          const auto found = find_isometry(forms[i], forms[j]);
          CHECK(found.has_value() == expected);
          if (found) CHECK(is_bijective(*found));
          (expected ? positive : negative) += 1;
        }
    }
    CHECK(positive > 5);
    CHECK(negative > 5);
  }
  // odd parts far beyond exhaustive reach
  const Int big = next_prime(Int(5000));
  const auto u = p_primary_part(discriminant_form(lattices::hyperbolic_plane().scaled(big * big)), big);
  const auto u_neg = u.negated();
  CHECK(find_isometry(u, u_neg).has_value());
  CHECK(!find_isometry(u, p_primary_part(discriminant_form(Lattice(diag({2L * 5003 * 5003, 2L * 5003 * 5003}))), big))
             .has_value());
}

TEST_CASE("gluing") {
  const Lattice m(M({{-2}})), n(M({{2}}));
  const auto phi = find_anti_isometry(discriminant_form(m), discriminant_form(n));
  REQUIRE(phi);
  const Overlattice g = glue(m, n, *phi);
  CHECK(g.lattice.determinant() == -1);
  CHECK(g.lattice.is_even());
  CHECK(g.lattice.signature() == Signature{1, 1});
  // index^2 = |det M det N|
  CHECK(abs(Rat(1) / determinant(g.basis)) * abs(Rat(1) / determinant(g.basis)) == Rat(4));
  const Lattice e8 = lattices::e_n(8), u = lattices::hyperbolic_plane();
  const auto triv = find_anti_isometry(discriminant_form(e8), discriminant_form(u));
  REQUIRE(triv);
  CHECK(glue(e8, u, *triv).lattice == direct_sum(e8, u));
  // an isometry instead of an anti-isometry is rejected
  const auto a2 = lattices::a_n(2);
  const auto same = find_isometry(discriminant_form(a2), discriminant_form(a2));
  REQUIRE(same);
  CHECK_THROWS_AS(glue(a2, a2, *same), PreconditionError);
}

TEST_CASE("glue then complement round trip") {
  const Lattice a2 = lattices::a_n(2);
  const Lattice a2pos = a2.scaled(Int(-1));
  const auto phi = find_anti_isometry(discriminant_form(a2), discriminant_form(a2pos));
  REQUIRE(phi);
  const Overlattice g = glue(a2, a2pos, *phi);
  CHECK(g.lattice.is_unimodular());
  CHECK(g.lattice.signature() == Signature{2, 2});
  // coordinates of the first summand in the glued basis
  const RatMatrix inv = inverse_or_throw(g.basis);
  IntMatrix s(4, 2);
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 2; ++c) {
      const Rat v = inv(r, c);
      REQUIRE(is_integer(v));
      s(r, c) = v.get_num();
    }
  const Sublattice comp = orthogonal_complement(g.lattice, s);
  CHECK(comp.lattice.determinant() == 3);
  CHECK(comp.lattice.signature() == Signature{2, 0});
  CHECK(enumerate_vectors_of_norm(comp.lattice, Int(2)).size() == 6);
}

TEST_CASE("overlattices from isotropic subgroups") {
  const Lattice l(diag({-2, 2}));
  RatMatrix h(2, 1);
  h(0, 0) = Rat(1, 2);
  h(1, 0) = Rat(1, 2);
  const Overlattice o = overlattice_from_isotropic(l, h);
  CHECK(o.lattice.determinant() == -1);
  CHECK(o.lattice.is_even());
  CHECK(overlattice_from_isotropic(l, RatMatrix(2, 0)).lattice == l);
  const Lattice four(diag({2, 2, 2, 2}));
  RatMatrix all(4, 1);
  for (std::size_t i = 0; i < 4; ++i) all(i, 0) = Rat(1, 2);
  const Overlattice d4 = overlattice_from_isotropic(four, all);
  CHECK(d4.lattice.determinant() == 4);
  CHECK(enumerate_vectors_of_norm(d4.lattice, Int(2)).size() == 24);
  RatMatrix pair(4, 1);
  pair(0, 0) = Rat(1, 2);
  pair(1, 0) = Rat(1, 2);
  CHECK_THROWS_AS(overlattice_from_isotropic(four, pair), PreconditionError);
}

TEST_CASE("orthogonal complements") {
  IntMatrix e1(2, 1);
  e1(0, 0) = 1;
  CHECK_THROWS_AS(orthogonal_complement(lattices::hyperbolic_plane(), e1), PreconditionError);
  const Sublattice c = orthogonal_complement(Lattice(diag({-2, 2})), e1);
  CHECK(c.lattice.gram() == M({{2}}));
  IntMatrix two(2, 1);
  two(0, 0) = 2;
  try {
    orthogonal_complement(Lattice(diag({-2, 2})), two);
    FAIL("non-primitive basis accepted");
  } catch (const NotPrimitive& e) {
    CHECK(e.saturation() == e1);
  }
}

TEST_CASE("complement forms are anti-isometric in unimodular lattices") {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<long> d(-3, 3);
  int done = 0;
  for (const char* name : {"3U", "U+E8"}) {
    const Lattice l = lattices::named(name);
    int here = 0;
    while (here < 4) {
      const std::size_t k = 1 + static_cast<std::size_t>(here % 2);
      IntMatrix b(l.rank(), k);
      for (std::size_t i = 0; i < l.rank(); ++i)
        for (std::size_t j = 0; j < k; ++j) b(i, j) = d(rng);
      if (rank(b) != k) continue;
      b = saturate(b);
      const IntMatrix gs = l.restricted_gram(b);
      if (determinant(gs) == 0 || abs(determinant(gs)) > 400) continue;
      const Lattice sl(gs);
      const Sublattice comp = orthogonal_complement(l, b);
      CHECK(comp.lattice.rank() + k == l.rank());
      CHECK(abs(comp.lattice.determinant()) == abs(sl.determinant()));
      CHECK(find_anti_isometry(discriminant_form(sl), discriminant_form(comp.lattice)).has_value());
      ++here;
      ++done;
    }
  }
  CHECK(done == 8);
}

TEST_CASE("vector enumeration") {
  const Lattice e8 = lattices::e_n(8);
  CHECK(enumerate_vectors_of_norm(e8, Int(-2)).size() == 240);
  CHECK(enumerate_vectors_of_norm(e8, Int(-4)).size() == 2160);
  CHECK(enumerate_vectors_of_norm(Lattice(M({{-2}})), Int(-2)) == std::vector<IntVector>{{Int(-1)}, {Int(1)}});
  CHECK(enumerate_vectors_of_norm(Lattice(M({{22, 33}, {33, 22}})), Int(-2)).empty());
  CHECK_THROWS_AS(enumerate_vectors_of_norm(lattices::hyperbolic_plane(), Int(-2)), PreconditionError);
  CHECK(enumerate_vectors_of_norm(lattices::e_n(6), Int(-2)) == brute_norm(lattices::e_n(6), -2, 3));
  CHECK(enumerate_vectors_of_norm(lattices::d_n(4), Int(-2)).size() == 24);
  CHECK(enumerate_vectors_of_norm(lattices::e_n(7), Int(-2)).size() == 126);
}

TEST_CASE("enumeration agrees with a box search under both backends") {
  std::mt19937_64 rng(24);
  int compared = 0;
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 2 + static_cast<std::size_t>(t % 3);
    const Lattice l = random_definite(rng, n);
    for (long m : {-2L, -4L, -8L, -12L}) {
      // coordinates of vectors of norm >= -12 are bounded by sqrt(12 * max (G^-1)_ii)
      const RatMatrix inv = dual_basis(l);
      Rat worst = 0;
      for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, abs(inv(i, i)));
      const long r = isqrt(ceil(Rat(worst * 12))).get_si() + 1;
      if (r > 8) continue;
      const auto expect = brute_norm(l, m, r);
      ++compared;
      for (auto backend : {kernels::Backend::scalar, kernels::Backend::avx2}) {
        kernels::set_backend(backend);
        CHECK(enumerate_vectors_of_norm(l, Int(m)) == expect);
      }
    }
  }
  CHECK(compared >= 40);
  kernels::set_backend(kernels::avx2_available() ? kernels::Backend::avx2 : kernels::Backend::scalar);
}

TEST_CASE("local symbols") {
  CHECK(legendre(Int(5), Int(11)) == 1);
  CHECK(legendre(Int(22), Int(11)) == 0);
  CHECK_THROWS_AS(legendre(Int(3), Int(2)), PreconditionError);
  CHECK(hilbert(Rat(-1), Rat(-1), Int(0)) == -1);
  CHECK(hilbert(Rat(-1), Rat(-1), Int(2)) == -1);
  CHECK(hilbert(Rat(2), Rat(3), Int(3)) == -1);
  CHECK(hilbert(Rat(3), Rat(5), Int(3)) == -1);
  CHECK(hilbert(Rat(3), Rat(5), Int(5)) == -1);
  CHECK(hilbert(Rat(3), Rat(5), Int(2)) == 1);
  // Euler's criterion
  std::mt19937_64 rng(25);
  const std::vector<long> primes = {3, 5, 7, 11, 13, 101, 673, 7919};
  for (int t = 0; t < 200; ++t) {
    const Int p(primes[static_cast<std::size_t>(t) % primes.size()]);
    const Int a(static_cast<long>(rng() % 100000) - 50000);
    const Int e = pow_mod(mod_floor(a, p), Int((p - 1) / 2), p);
    const int expect = e == 0 ? 0 : (e == 1 ? 1 : -1);
    CHECK(legendre(a, p) == expect);
  }
  // product formula over all places
  for (int t = 0; t < 100; ++t) {
    const Rat a = make_rat(Int(static_cast<long>(rng() % 2000) - 1000), Int(static_cast<long>(rng() % 50) + 1));
    const Rat b = make_rat(Int(static_cast<long>(rng() % 2000) - 1000), Int(static_cast<long>(rng() % 50) + 1));
    if (a == 0 || b == 0) continue;
    int prod = hilbert(a, b, Int(0)) * hilbert(a, b, Int(2));
    Int all = a.get_num() * a.get_den() * b.get_num() * b.get_den();
    for (const auto& p : prime_divisors(all))
      if (p != 2) prod *= hilbert(a, b, p);
    CHECK(prod == 1);
  }
  CHECK(hasse({Rat(-1), Rat(-1), Rat(1)}, Int(0)) == -1);
}
