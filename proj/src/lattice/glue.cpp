#include "salem/lattice.hpp"

namespace salem {

Overlattice overlattice_from_isotropic(const Lattice& m, const RatMatrix& generators) {
  if (!m.is_even()) throw PreconditionError("overlattices are built over even lattices");
  if (generators.rows() != m.rank()) throw PreconditionError("generators do not match the lattice rank");
  const RatMatrix g = to_rat(m.gram());
  if (!to_int(g * generators)) throw PreconditionError("generators are not in the dual lattice");
  const RatMatrix values = generators.transposed() * g * generators;
  for (std::size_t i = 0; i < generators.cols(); ++i) {
    if (!is_integer(values(i, i)) || mpz_odd_p(values(i, i).get_num_mpz_t()))
      throw PreconditionError("subgroup is not isotropic: q(h) = " + to_string(reduce_mod(values(i, i), Int(2))));
    for (std::size_t j = i + 1; j < generators.cols(); ++j)
      if (!is_integer(values(i, j)))
        throw PreconditionError("subgroup is not isotropic: b(h, h') = " + to_string(reduce_mod(values(i, j), Int(1))));
  }
  const RatMatrix basis = z_basis_over_standard(generators);
  const auto gram = to_int(basis.transposed() * g * basis);
  if (!gram) throw Error("internal: isotropic overlattice is not integral");
  return {Lattice(*gram), basis};
}

Overlattice glue(const Lattice& m, const Lattice& n, const GlueMap& phi) {
  if (phi.source.lifts.rows() != m.rank() || phi.source.lifts.cols() != phi.source.size())
    throw PreconditionError("glue map source needs lifts in the first lattice");
  if (phi.target.lifts.rows() != n.rank() || phi.target.lifts.cols() != phi.target.size())
    throw PreconditionError("glue map target needs lifts in the second lattice");
  if (!is_anti_isometry(phi)) throw PreconditionError("glue map is not an anti-isometry");
  if (phi.source.order() != abs(m.determinant()) || phi.target.order() != abs(n.determinant()))
    throw PreconditionError("glue map must be defined on the full discriminant groups");
  const std::size_t k = phi.source.size();
  RatMatrix gens(m.rank() + n.rank(), k);
  for (std::size_t i = 0; i < k; ++i) {
    const RatVector x = phi.source.lifts.col(i);
    const RatVector y = phi.target.lift(phi.images.col(i));
    for (std::size_t r = 0; r < m.rank(); ++r) gens(r, i) = x[r];
    for (std::size_t r = 0; r < n.rank(); ++r) gens(m.rank() + r, i) = y[r];
  }
  Overlattice out;
  try {
    out = overlattice_from_isotropic(direct_sum(m, n), gens);
  } catch (const PreconditionError& e) {
    throw PreconditionError(std::string("glue map does not define an even overlattice: ") + e.what());
  }
  if (!out.lattice.is_unimodular()) throw PreconditionError("glued lattice is not unimodular");
  return out;
}

Sublattice sublattice(const Lattice& lattice, const IntMatrix& basis) {
  const IntMatrix gram = lattice.restricted_gram(basis);
  if (determinant(gram) == 0) throw PreconditionError("sublattice is degenerate");
  return {Lattice(gram), basis};
}

Sublattice orthogonal_complement(const Lattice& lattice, const IntMatrix& s) {
  if (s.rows() != lattice.rank()) throw PreconditionError("sublattice basis does not match the lattice rank");
  if (rank(s) != s.cols()) throw PreconditionError("sublattice basis is linearly dependent");
  if (!is_primitive(s)) throw NotPrimitive("sublattice is not primitive", saturate(s));
  if (determinant(lattice.restricted_gram(s)) == 0) throw PreconditionError("sublattice is degenerate");
  const IntMatrix k = integer_kernel(s.transposed() * lattice.gram());
  if (k.cols() == 0) return {Lattice(), IntMatrix(lattice.rank(), 0)};
  return sublattice(lattice, k);
}

}  // namespace salem
