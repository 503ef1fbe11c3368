#include <map>

#include "salem/isometry.hpp"
#include "salem/modpoly.hpp"
#include "salem/polyarith.hpp"

namespace salem {
namespace {

using PrimePowers = std::map<Int, unsigned>;

void merge_max(PrimePowers& into, const Factorization& f) {
  for (const auto& [p, e] : f) into[p] = std::max(into[p], e);
}

// q^d - 1 factored through its cyclotomic pieces Phi_j(q), j | d.
Factorization factor_power_minus_one(const Int& q, unsigned d) {
  PrimePowers acc;
  for (unsigned j = 1; j <= d; ++j) {
    if (d % j != 0) continue;
    const IntPolynomial phi = cyclotomic(j);
    for (const auto& [p, e] : factor_integer(phi(q))) acc[p] += e;
  }
  return {acc.begin(), acc.end()};
}

struct ModuleData {
  RatMatrix basis;      // Z[f]L in lattice coordinates
  RatMatrix to_module;  // inverse of basis (integral)
  IntMatrix f_module;   // f in module coordinates
  Int index;
};

ModuleData module_closure(const Isometry& f) {
  const std::size_t n = f.lattice().rank();
  RatMatrix gens(n, n * n);
  RatMatrix power = RatMatrix::identity(n);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) gens(r, k * n + c) = power(r, c);
    power = f.matrix() * power;
  }
  ModuleData m;
  m.basis = z_basis(gens);
  if (m.basis.cols() != n) throw Error("internal: module closure has wrong rank");
  m.to_module = inverse_or_throw(m.basis);
  const auto fm = to_int(m.to_module * f.matrix() * m.basis);
  if (!fm) throw Error("internal: f does not preserve Z[f]L");
  m.f_module = *fm;
  m.index = abs(determinant(*to_int(m.to_module)));
  return m;
}

// Multiple of the order of f on M / kM from the factor degrees of the
// characteristic polynomial modulo each prime dividing k.
PrimePowers order_bound(const IntPolynomial& charpoly, const Int& k, std::size_t n) {
  PrimePowers bound;
  for (const auto& [q, e] : factor_integer(k)) {
    const auto degrees = modp::irreducible_factor_degrees(modp::reduce(charpoly, q), q);
    for (int d : degrees) merge_max(bound, factor_power_minus_one(q, static_cast<unsigned>(d)));
    // unipotent part: q^t >= largest Jordan block, then e - 1 more lifts
    unsigned t = 0;
    for (Int qt = 1; qt < Int(static_cast<unsigned long>(n)); qt *= q) ++t;
    if (t + e - 1 > 0) bound[q] = std::max(bound[q], t + e - 1);
  }
  return bound;
}

Int expand(const PrimePowers& f) {
  Int n = 1;
  for (const auto& [p, e] : f) n *= pow(p, e);
  return n;
}

struct Search {
  Int exponent;
  Int bound;
  Int index;
};

Search least_integral_exponent(const Isometry& f) {
  const IntPolynomial chi = integral_charpoly(f.matrix());
  if (f.is_integral()) return {Int(1), Int(1), Int(1)};
  const ModuleData m = module_closure(f);
  const std::size_t n = f.lattice().rank();
  PrimePowers bound = order_bound(chi, m.index, n);
  const Int cap = expand(bound);
  const IntMatrix id = mod_matrix(IntMatrix::identity(n), m.index);
  if (pow_mod(m.f_module, cap, m.index) != id) throw Error("internal: order bound does not kill f on M/kM");
  // L in module coordinates; f^e preserves L iff basis * (F^e C mod k) is integral
  const IntMatrix c = *to_int(m.to_module);
  auto preserves = [&](const Int& e) {
    const IntMatrix image = mod_matrix(pow_mod(m.f_module, e, m.index) * c, m.index);
    return to_int(m.basis * to_rat(image)).has_value();
  };
  if (!preserves(cap)) throw Error("internal: order bound does not preserve the lattice");
  Int exponent = cap;
  for (const auto& [p, e] : bound) {
    for (unsigned i = 0; i < e; ++i) {
      const Int smaller = exponent / p;
      if (!preserves(smaller)) break;
      exponent = smaller;
    }
  }
  return {exponent, cap, m.index};
}

}  // namespace

Int integral_power_exponent(const Isometry& f) { return least_integral_exponent(f).exponent; }

PowerResult power_to_integral(const Isometry& f) {
  const Search s = least_integral_exponent(f);
  const auto power = to_int(matrix_power(f.matrix(), s.exponent));
  if (!power) throw Error("internal: f^n is not integral");
  if (!is_isometry(f.lattice(), *power)) throw Error("internal: f^n is not an isometry");
  return {s.exponent, *power, s.index, s.bound};
}

}  // namespace salem
