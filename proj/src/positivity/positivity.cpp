#include <algorithm>

#include "salem/positivity.hpp"
#include "salem/polyarith.hpp"

namespace salem {

std::string to_string(PositivityStatus status) {
  switch (status) {
    case PositivityStatus::positive: return "positive";
    case PositivityStatus::not_positive: return "not_positive";
    case PositivityStatus::inconclusive: return "inconclusive";
  }
  return "?";
}

std::string to_string(PositivityMethod method) {
  switch (method) {
    case PositivityMethod::determinant_bound: return "determinant_bound";
    case PositivityMethod::exhaustive_search: return "exhaustive_search";
    case PositivityMethod::cyclic_only: return "cyclic_only";
  }
  return "?";
}

std::string to_string(WitnessKind kind) {
  return kind == WitnessKind::cyclic ? "cyclic" : "geodesic-crossing";
}

std::vector<IntVector> cyclic_roots(const Isometry& f, long orbit_bound) {
  const IntMatrix m = f.integral_matrix();
  const Factorisation fac = factor(charpoly(m));
  IntPolynomial cyclo{1};
  const IntPolynomial x_minus_one{-1, 1};
  for (const auto& pf : fac.factors) {
    if (pf.factor == x_minus_one || !is_cyclotomic_product(pf.factor)) continue;
    cyclo = cyclo * pow(pf.factor, pf.multiplicity);
  }
  if (cyclo.degree() < 1) return {};
  const KernelSublattice k = kernel_sublattice(f, cyclo);
  const Lattice& kl = k.sublattice.lattice;
  const Signature sig = kl.signature();
  if (sig.positive != 0 && sig.negative != 0)
    throw PreconditionError("cyclotomic kernel is indefinite; cyclic roots cannot be enumerated");
  std::vector<IntVector> out;
  if (sig.positive != 0) return out;  // no vectors of norm -2
  for (const auto& c : enumerate_vectors_of_norm(kl, Int(-2))) {
    const IntVector r = k.sublattice.basis * c;
    IntVector sum = r, cur = r;
    for (long i = 1; i < orbit_bound; ++i) {
      cur = m * cur;
      for (std::size_t j = 0; j < sum.size(); ++j) sum[j] += cur[j];
      if (std::all_of(sum.begin(), sum.end(), [](const Int& x) { return x == 0; })) {
        out.push_back(r);
        break;
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

SalemCertificate salem_charpoly(const Isometry& f) {
  const IntPolynomial s = integral_charpoly(f.matrix());
  const SalemCheck check = is_salem(s);
  if (!check.accepted())
    throw PreconditionError("characteristic polynomial is not an irreducible Salem polynomial (" +
                            to_string(check.reason) + ")");
  return *check.certificate;
}

void require_hyperbolic(const Lattice& l) {
  const Signature sig = l.signature();
  if (sig.positive != 1) throw PreconditionError("lattice is not hyperbolic");
}

}  // namespace

ObstructionReport determinant_bound_test(const Isometry& f) {
  require_hyperbolic(f.lattice());
  const SalemCertificate cert = salem_charpoly(f);
  ObstructionReport report;
  report.method = PositivityMethod::determinant_bound;
  report.lattice_determinant = f.lattice().determinant();
  report.salem_discriminant = discriminant(cert.polynomial);
  const Int lhs = abs(report.lattice_determinant);
  const Int rhs = 4 * abs(report.salem_discriminant);
  if (lhs > rhs) {
    report.status = PositivityStatus::positive;
    report.notes.push_back("|det S| = " + to_string(lhs) + " > 4 |disc s| = " + to_string(rhs));
  } else {
    report.status = PositivityStatus::inconclusive;
    report.notes.push_back("|det S| = " + to_string(lhs) + " <= 4 |disc s| = " + to_string(rhs));
  }
  return report;
}

ObstructionReport is_positive(const Isometry& f, const SearchOptions& options, long orbit_bound) {
  const Signature sig = f.lattice().signature();
  if (sig.positive == 0) {
    ObstructionReport report;
    report.method = PositivityMethod::cyclic_only;
    report.lattice_determinant = f.lattice().determinant();
    for (auto& r : cyclic_roots(f, orbit_bound)) report.witnesses.push_back({std::move(r), WitnessKind::cyclic});
    report.candidates = report.witnesses.size();
    report.status = report.witnesses.empty() ? PositivityStatus::positive : PositivityStatus::not_positive;
    return report;
  }
  if (sig.positive != 1) throw PreconditionError("positivity needs a hyperbolic or negative definite lattice");
  ObstructionReport bound = determinant_bound_test(f);
  if (bound.status == PositivityStatus::positive) return bound;
  ObstructionReport search = obstructing_root_search(f, options);
  search.notes.insert(search.notes.begin(), bound.notes.begin(), bound.notes.end());
  return search;
}

}  // namespace salem
