#include "internal.hpp"
#include "salem/realize.hpp"

namespace salem {

namespace {

std::string sig_string(const Signature& s) {
  return "(" + std::to_string(s.positive) + "," + std::to_string(s.negative) + ")";
}

// Some x with x.x > 0, by rational congruence diagonalisation.
std::optional<RatVector> positive_vector(const Lattice& l) {
  const std::size_t n = l.rank();
  const RatMatrix g = to_rat(l.gram());
  std::vector<RatVector> basis;
  for (std::size_t i = 0; i < n; ++i) {
    RatVector e(n);
    e[i] = 1;
    basis.push_back(e);
  }
  auto prod = [&](const RatVector& x, const RatVector& y) { return l.product(x, y); };
  while (!basis.empty()) {
    // a vector of nonzero norm: a basis vector or a sum of two
    std::optional<RatVector> v;
    for (const auto& b : basis)
      if (prod(b, b) != 0) {
        v = b;
        break;
      }
    if (!v) {
      for (std::size_t i = 0; i < basis.size() && !v; ++i)
        for (std::size_t j = i + 1; j < basis.size() && !v; ++j)
          if (prod(basis[i], basis[j]) != 0) {
            v = basis[i];
            for (std::size_t k = 0; k < n; ++k) (*v)[k] += basis[j][k];
          }
      if (!v) return std::nullopt;
    }
    const Rat vv = prod(*v, *v);
    if (vv > 0) return v;
    // project onto v^perp and keep an independent subset
    std::vector<RatVector> rest;
    for (const auto& b : basis) {
      RatVector w = b;
      const Rat c = prod(b, *v) / vv;
      for (std::size_t k = 0; k < n; ++k) w[k] -= c * (*v)[k];
      RatMatrix m(n, rest.size() + 1);
      for (std::size_t j = 0; j <= rest.size(); ++j)
        for (std::size_t k = 0; k < n; ++k) m(k, j) = j < rest.size() ? rest[j][k] : w[k];
      if (rank(m) == rest.size() + 1) rest.push_back(w);
    }
    basis = rest;
  }
  return std::nullopt;
}

}  // namespace

VerificationReport verify_certificate(const RealizationCertificate& c, const SearchOptions& search) {
  VerificationReport rep;
  auto item = [&](std::string name, bool ok, std::string detail) {
    rep.items.push_back({std::move(name), ok, std::move(detail)});
    return ok;
  };
  auto guarded = [&](const std::string& name, auto&& body) {
    try {
      body();
    } catch (const std::exception& e) {
      item(name, false, std::string("exception: ") + e.what());
    }
  };

  item("version", c.version == 1, "version " + std::to_string(c.version));
  const SurfaceClass surface = SurfaceClass::of(c.kind);
  const Lattice& l = c.lattice;
  const std::size_t n = l.rank();

  guarded("ambient lattice", [&] {
    const bool ok = static_cast<int>(n) == surface.b2 && l.is_even() && l.is_unimodular() &&
                    l.signature() == surface.signature();
    item("ambient lattice", ok,
         "rank " + std::to_string(n) + ", " + (l.is_even() ? "even" : "odd") + ", det " + to_string(l.determinant()) +
             ", signature " + sig_string(l.signature()) + "; " + surface.lattice_name + " needs " +
             sig_string(surface.signature()));
  });

  bool isometry_ok = false;
  guarded("isometry", [&] {
    const bool shape = c.isometry.rows() == n && c.isometry.cols() == n;
    isometry_ok = shape && is_isometry(l, c.isometry) && abs(determinant(c.isometry)) == 1;
    item("isometry", isometry_ok, isometry_ok ? "f^T G f = G, det f = +-1" : "f does not preserve the Gram matrix");
  });
  if (!isometry_ok) {
    rep.passed = false;
    return rep;
  }
  const IntMatrix& f = c.isometry;

  int d = 0;
  guarded("salem power", [&] {
    auto digits = [](const IntPolynomial& q) {
      std::size_t m = 1;
      for (const auto& a : q.coeffs()) m = std::max(m, mpz_sizeinbase(a.get_mpz_t(), 10));
      return m;
    };
    d = require_salem(c.salem).degree;
    const IntPolynomial expect = power_min_poly(c.salem, c.power);
    item("salem power", expect == c.salem_power,
         "s_" + std::to_string(c.power) + " has degree " + std::to_string(expect.degree()) + ", largest coefficient " +
             std::to_string(digits(expect)) + " digits");
  });

  guarded("characteristic polynomial", [&] {
    const int fixed = surface.b2 - d;
    const IntPolynomial expect = c.salem_power * pow(IntPolynomial{-1, 1}, static_cast<unsigned>(fixed));
    item("characteristic polynomial", d > 0 && charpoly(f) == expect,
         "expected s_n(x) (x-1)^" + std::to_string(fixed));
  });

  bool kernel_ok = false;
  guarded("kernel", [&] {
    const IntMatrix& k = c.kernel_basis;
    const bool shape = k.rows() == n && static_cast<int>(k.cols()) == d;
    const IntMatrix sk = shape ? evaluate_at_matrix(c.salem_power, f) * k : IntMatrix();
    const bool annihilated = shape && sk.is_zero();
    const bool primitive = shape && is_primitive(k);
    const Signature sig = shape ? Lattice(l.restricted_gram(k)).signature() : Signature{};
    const Signature want = c.projective ? Signature{1, d - 1} : Signature{3, d - 3};
    kernel_ok = annihilated && primitive && sig == c.kernel_signature && sig == want;
    item("kernel", kernel_ok,
         std::string(annihilated ? "s_n(f) K = 0" : "s_n(f) K != 0") + ", " +
             (primitive ? "primitive" : "not primitive") + ", signature " + sig_string(sig) + " (" +
             (c.projective ? "projective" : "non-projective") + " needs " + sig_string(want) + ")");
  });

  guarded("fixed complement", [&] {
    if (!kernel_ok) {
      item("fixed complement", false, "kernel check failed");
      return;
    }
    if (static_cast<int>(n) == d) {
      item("fixed complement", true, "kernel is the whole lattice");
      return;
    }
    const Sublattice r = orthogonal_complement(l, c.kernel_basis);
    item("fixed complement", f * r.basis == r.basis, "f is the identity on the orthogonal complement");
  });

  if (c.kind != SurfaceKind::k3) {
    guarded("mod 2", [&] {
      const bool triv = mod2_trivial(f);
      const bool recorded = c.mod2_order && *c.mod2_order == 1;
      item("mod 2", triv && recorded, triv ? "f = id mod 2" : "f is not the identity mod 2");
    });
  }
  if (c.kind == SurfaceKind::enriques) {
    guarded("positive cone", [&] {
      const auto x = positive_vector(l);
      const bool ok = x && l.product(*x, to_rat(f) * *x) > 0;
      item("positive cone", ok, ok ? "<x, f x> > 0 for a positive x" : "f swaps the positive cones");
    });
  }

  if (c.kind == SurfaceKind::k3 && c.projective) {
    guarded("positivity", [&] {
      if (!c.positivity) {
        item("positivity", false, "missing evidence");
        return;
      }
      const PositivityEvidence& ev = *c.positivity;
      const Lattice s(l.restricted_gram(c.kernel_basis));
      const auto restricted = detail::restrict_to(to_rat(f), to_rat(c.kernel_basis));
      const bool matches = restricted && is_isometry(s, ev.base) && charpoly(ev.base) == c.salem &&
                           matrix_power(ev.base, Int(ev.exponent)) == *to_int(*restricted);
      if (!matches) {
        item("positivity", false, "base isometry does not power to f on the kernel");
        return;
      }
      const ObstructionReport again = is_positive(Isometry(s, ev.base), search);
      item("positivity", again.status == PositivityStatus::positive,
           "base is " + to_string(again.status) + " by " + to_string(again.method) + "; f = base^" +
               std::to_string(ev.exponent) + " on the kernel");
    });
  }

  if (c.glue) {
    guarded("glue", [&] {
      const GlueEvidence& g = *c.glue;
      const IntPolynomial r = trace_polynomial(c.salem);
      const Int norm = twist_norm(r, g.t);
      const bool norm_ok = abs(norm) == pow(g.p, g.l) && mod_floor(g.t.polynomial(g.trace_root), g.p) == 0;
      const Lattice s(l.restricted_gram(c.kernel_basis));
      const bool det_ok = abs(s.determinant()) == abs(g.seed_determinant) * pow(g.p, 2 * g.l * g.n);
      const bool comp_ok = g.complement_basis.rows() == n &&
                           l.restricted_gram(g.complement_basis) == g.complement.gram() &&
                           (c.kernel_basis.transposed() * l.gram() * g.complement_basis).is_zero() &&
                           g.complement.rank() + s.rank() == n;
      const bool forms_ok =
          comp_ok && find_anti_isometry(discriminant_form(s), discriminant_form(g.complement)).has_value();
      item("glue", norm_ok && det_ok && comp_ok && forms_ok,
           std::string("|N(t)| = p^l ") + (norm_ok ? "ok" : "fails") + ", |det S| = |det S0| p^(2ln) " +
               (det_ok ? "ok" : "fails") + ", complement " + (comp_ok ? "ok" : "fails") + ", q_S = -q_R " +
               (forms_ok ? "ok" : "fails"));
    });
  }

  rep.passed = !rep.items.empty();
  for (const auto& it : rep.items) rep.passed = rep.passed && it.passed;
  return rep;
}

}  // namespace salem
