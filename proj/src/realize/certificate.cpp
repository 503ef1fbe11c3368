#include "internal.hpp"
#include "salem/realize.hpp"

namespace salem {

namespace detail {

std::optional<RatMatrix> restrict_to(const RatMatrix& f, const RatMatrix& k) {
  const RatMatrix kt = k.transposed();
  const auto gram = inverse(kt * k);
  if (!gram) return std::nullopt;
  const RatMatrix fk = f * k;
  RatMatrix m = *gram * kt * fk;
  if (k * m != fk) return std::nullopt;
  return m;
}

IntMatrix summand_basis(const RatMatrix& to_overlattice, std::size_t offset, std::size_t size) {
  const std::size_t n = to_overlattice.rows();
  RatMatrix cols(n, size);
  for (std::size_t j = 0; j < size; ++j) cols(offset + j, j) = 1;
  const auto b = to_int(to_overlattice * cols);
  if (!b) throw Error("internal: summand is not contained in the overlattice");
  return *b;
}

}  // namespace detail

namespace {

// Runs one pipeline stage, prefixing failures with its name.
template <class F>
auto stage(const std::string& name, F&& body) {
  try {
    return body();
  } catch (const SearchExhausted& e) {
    throw SearchExhausted(name + ": " + e.what());
  } catch (const PreconditionError& e) {
    throw PreconditionError(name + ": " + e.what());
  } catch (const Error& e) {
    throw Error(name + ": " + e.what());
  }
}

struct Prepared {
  Lattice kernel;                       // S, possibly twisted
  std::optional<Lattice> complement;    // R'
  std::optional<GlueMap> phi;
  std::optional<GlueEvidence> glue;     // set when twisted
};

Prepared twisted_seed(const Seed& seed, const BuildOptions& options) {
  const Isometry f(seed.kernel, seed.isometry);
  const Signature sig = seed.kernel.signature();
  const Int det_r = -seed.complement_base->determinant();  // det U = -1
  Int lower = abs(discriminant(seed.salem));
  for (int attempt = 0; attempt < options.prime_attempts; ++attempt) {
    const SplitPrime sp = find_split_prime(seed.salem, det_r, lower, options.prime_cap);
    lower = sp.p;
    const auto norm = find_norm_element(seed.salem, sp, options.l_max, options.norm_box);
    if (!norm) continue;
    for (unsigned n : {1u, 2u}) {
      for (int sign : {1, -1}) {
        const IntPolynomial a = Int(sign) * pow(norm->t.polynomial, n);
        const Twist tw = twist(f, TwistElement{a});
        if (tw.lattice.signature() != sig) continue;
        const Lattice rprime =
            direct_sum(lattices::hyperbolic_plane().scaled(pow(sp.p, norm->l * n)), *seed.complement_base);
        auto phi = find_anti_isometry(discriminant_form(tw.lattice), discriminant_form(rprime));
        if (!phi) continue;
        GlueEvidence ev;
        ev.p = sp.p;
        ev.trace_root = sp.trace_root;
        ev.t = TwistElement{Int(sign) * norm->t.polynomial};
        ev.l = norm->l;
        ev.n = n;
        ev.seed_determinant = seed.kernel.determinant();
        ev.complement = rprime;
        return {tw.lattice, rprime, std::move(phi), std::move(ev)};
      }
    }
  }
  throw SearchExhausted("no split prime with a usable norm element in " + std::to_string(options.prime_attempts) +
                        " attempts");
}

}  // namespace

RealizationCertificate build_certificate(const Seed& seed, const BuildOptions& options) {
  const SurfaceClass surface = SurfaceClass::of(seed.kind);
  const auto [salem_cert, projective] = stage("seed", [&] {
    SalemCertificate cert = require_salem(seed.salem);
    const int d = cert.degree;
    if (!is_isometry(seed.kernel, seed.isometry)) throw PreconditionError("matrix is not an isometry of the kernel");
    if (charpoly(seed.isometry) != seed.salem)
      throw PreconditionError("isometry has characteristic polynomial " + to_string(charpoly(seed.isometry)));
    if (!seed.kernel.is_even()) throw PreconditionError("kernel lattice is odd");
    const Signature sig = seed.kernel.signature();
    bool proj;
    if (sig == Signature{1, d - 1})
      proj = true;
    else if (sig == Signature{3, d - 3} && seed.kind != SurfaceKind::enriques)
      proj = false;
    else
      throw PreconditionError("kernel lattice is not hyperbolic (signature (" + std::to_string(sig.positive) + "," +
                              std::to_string(sig.negative) + "))");
    const std::size_t total = seed.kernel.rank() + (seed.complement_base ? 2 + seed.complement_base->rank() : 0);
    if (total != static_cast<std::size_t>(surface.b2))
      throw PreconditionError("ranks add up to " + std::to_string(total) + ", not b2 = " + std::to_string(surface.b2));
    if (seed.complement_base && !seed.complement_base->is_even()) throw PreconditionError("complement is odd");
    return std::pair{cert, proj};
  });

  const bool twist_needed = seed.kind == SurfaceKind::k3 && projective && seed.complement_base;
  Prepared prep = stage("twist", [&] {
    if (twist_needed) return twisted_seed(seed, options);
    Prepared p{seed.kernel, std::nullopt, std::nullopt, std::nullopt};
    if (seed.complement_base) {
      p.complement = direct_sum(lattices::hyperbolic_plane(), *seed.complement_base);
      p.phi = find_anti_isometry(discriminant_form(p.kernel), discriminant_form(*p.complement));
      if (!p.phi) throw PreconditionError("discriminant forms of S and R are not anti-isometric");
    }
    return p;
  });

  const std::size_t s_rank = prep.kernel.rank();
  struct Ambient {
    Lattice lattice;
    RatMatrix to_overlattice;  // direct sum coordinates -> overlattice coordinates
    RatMatrix f;
  };
  const Ambient amb = stage("glue", [&] {
    Lattice l = prep.kernel;
    RatMatrix basis = RatMatrix::identity(s_rank);
    RatMatrix big = to_rat(seed.isometry);
    if (prep.complement) {
      const Overlattice ov = glue(prep.kernel, *prep.complement, *prep.phi);
      l = ov.lattice;
      basis = ov.basis;
      big = direct_sum(big, RatMatrix::identity(prep.complement->rank()));
    }
    if (!l.is_even() || !l.is_unimodular() || l.signature() != surface.signature())
      throw Error("glued lattice is not even unimodular of the signature of " + surface.lattice_name);
    const RatMatrix inv = inverse_or_throw(basis);
    return Ambient{l, inv, inv * big * basis};
  });

  RealizationCertificate c;
  const auto [exponent, power] = stage("power", [&] {
    const PowerResult pr = power_to_integral(Isometry(amb.lattice, amb.f));
    if (!pr.exponent.fits_ulong_p()) throw Error("integral exponent too large");
    unsigned long k = pr.exponent.get_ui();
    IntMatrix fk = pr.power;
    if (seed.kind != SurfaceKind::k3 && options.enforce_mod2) {
      const unsigned long m2 = mod2_order(fk);
      fk = matrix_power(fk, Int(m2));
      k *= m2;
    }
    return std::pair{k, fk};
  });

  return stage("certificate", [&] {
    c.salem = seed.salem;
    c.power = exponent;
    c.salem_power = power_min_poly(seed.salem, exponent);
    c.kind = seed.kind;
    c.projective = projective;
    c.lattice = amb.lattice;
    c.isometry = power;
    c.kernel_basis = detail::summand_basis(amb.to_overlattice, 0, s_rank);
    c.kernel_signature = prep.kernel.signature();
    if (seed.kind == SurfaceKind::k3 && projective) {
      PositivityEvidence ev;
      ev.base = seed.isometry;
      ev.exponent = exponent;
      ev.report = is_positive(Isometry(prep.kernel, seed.isometry), options.search);
      if (ev.report.status != PositivityStatus::positive)
        throw Error("isometry of the kernel is " + to_string(ev.report.status));
      c.positivity = std::move(ev);
    }
    if (seed.kind != SurfaceKind::k3) c.mod2_order = mod2_order(power);
    if (prep.glue) {
      prep.glue->complement_basis = detail::summand_basis(amb.to_overlattice, s_rank, prep.complement->rank());
      c.glue = prep.glue;
    }
    return c;
  });
}

RealizationCertificate build_k3_certificate(const IntPolynomial& s, const BuildOptions& options) {
  const auto seed = find_seed(s, SurfaceKind::k3);
  if (!seed) throw PreconditionError("no seed: no curated K3 seed for " + to_string(s));
  return build_certificate(*seed, options);
}

RealizationCertificate power_certificate(const RealizationCertificate& c, unsigned long m) {
  if (m == 0) throw PreconditionError("power must be positive");
  RealizationCertificate out = c;
  out.power = c.power * m;
  out.salem_power = power_min_poly(c.salem, out.power);
  out.isometry = matrix_power(c.isometry, Int(m));
  if (out.positivity) out.positivity->exponent *= m;
  if (out.mod2_order) out.mod2_order = mod2_order(out.isometry);
  return out;
}

}  // namespace salem
