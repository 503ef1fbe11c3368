#include "salem/isometry.hpp"
#include "salem/modpoly.hpp"
#include "salem/polyarith.hpp"

namespace salem {

bool splits_in_extension(const IntPolynomial& trace_poly, const TwistElement& t, const Int& p) {
  if (p == 2 || !is_prime(p)) throw PreconditionError("splitting test needs an odd prime");
  for (const auto& w0 : modp::roots(trace_poly, p)) {
    if (mod_floor(t.polynomial(w0), p) != 0) continue;
    if (legendre(Int(w0 * w0 - 4), p) == 1) return true;
  }
  return false;
}

TwistSplitReport twist_split_certificate(const Isometry& f, const TwistElement& t, unsigned n, const Int& p) {
  const Lattice& l = f.lattice();
  const IntPolynomial s = integral_charpoly(f.matrix());
  std::vector<std::string> violations;
  if (n == 0) violations.push_back("n must be positive");
  if (!is_prime(p)) violations.push_back("p = " + to_string(p) + " is not prime");
  if (!l.is_even()) violations.push_back("lattice is not even");
  const SalemCheck check = is_salem(s);
  TwistSplitReport report;
  if (!check.accepted()) {
    violations.push_back("characteristic polynomial is not Salem (" + to_string(check.reason) + ")");
  } else {
    report.norm = twist_norm(check.certificate->trace_polynomial, t);
    if (abs(report.norm) != p)
      violations.push_back("norm of t is " + to_string(report.norm) + ", not +-" + to_string(p));
    if (is_prime(p) && p != 2 && abs(report.norm) == p &&
        !splits_in_extension(check.certificate->trace_polynomial, t, p))
      violations.push_back("the prime generated by t does not split in Q(f)");
    const Int excluded = 2 * l.determinant() * discriminant(s);
    if (is_prime(p) && excluded % p == 0)
      violations.push_back(to_string(p) + " divides 2 det L disc s = " + to_string(excluded));
  }
  if (!violations.empty()) {
    std::string msg = "twist_split hypotheses violated: ";
    for (std::size_t i = 0; i < violations.size(); ++i) msg += (i ? "; " : "") + violations[i];
    throw PreconditionError(msg);
  }
  const Twist tw = twist(f, TwistElement{pow(t.polynomial, n)});
  report.twisted = tw.lattice;
  report.twisted_determinant = tw.lattice.determinant();
  report.p_valuation = valuation(report.twisted_determinant, p);
  const Int p2n = pow(p, 2 * n);
  report.global_determinant_ok = abs(report.twisted_determinant) == abs(l.determinant()) * p2n;
  report.p_form = p_primary_part(discriminant_form(tw.lattice), p);
  const FiniteQuadraticForm hyperbolic =
      p_primary_part(discriminant_form(lattices::hyperbolic_plane().scaled(pow(p, n))), p);
  report.hyperbolic_ok = find_isometry(report.p_form, hyperbolic).has_value();
  if (report.p_valuation != 2 * n) report.notes.push_back("p-part of the determinant is not p^(2n)");
  if (!report.global_determinant_ok) report.notes.push_back("|det| differs from |det L| p^(2n)");
  if (!report.hyperbolic_ok) report.notes.push_back("p-primary form is not hyperbolic of scale 1/p^n");
  report.passed = report.p_valuation == 2 * n && report.global_determinant_ok && report.hyperbolic_ok;
  return report;
}

}  // namespace salem
