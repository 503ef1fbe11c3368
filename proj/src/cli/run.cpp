#include "salem/cli.hpp"

#include <functional>

#include "CLI11.hpp"
#include "salem/io.hpp"

namespace salem::cli {

namespace {

using io::Json;

struct Config {
  std::string format = "json";
  std::string input;
  std::string surface = "k3";
  std::string lattice_name;
  std::string seed_path;
  std::string label;
  bool projective = false;
  long prime_cap = 100'000'000;
  long box = 0;  // 0: subcommand default
  long orbit_bound = 120;
};

struct Outcome {
  int code = 0;
  Json doc;
  std::vector<std::string> text;
};

std::string yes_no(bool b) { return b ? "yes" : "no"; }

Outcome certify_salem(const Config& cfg) {
  const IntPolynomial p = io::parse_polynomial_document(io::read_file(cfg.input));
  const SalemCheck check = is_salem(p);
  Outcome o{check.accepted() ? 0 : 1, io::to_json(check), {}};
  o.text.push_back("polynomial: " + to_string(p));
  o.text.push_back("salem: " + yes_no(check.accepted()));
  if (check.accepted()) {
    o.text.push_back("degree: " + std::to_string(check.certificate->degree));
    o.text.push_back("trace polynomial: " + to_string(check.certificate->trace_polynomial, "y"));
  } else {
    o.text.push_back("reason: " + to_string(check.reason) + (check.detail.empty() ? "" : " (" + check.detail + ")"));
  }
  return o;
}

Outcome realizable(const Config& cfg) {
  const IntPolynomial p = io::parse_polynomial_document(io::read_file(cfg.input));
  const SurfaceClass c = SurfaceClass::of(parse_surface_kind(cfg.surface));
  const Decision d = stable_realizable(p, c, cfg.projective);
  Json doc = io::to_json(d);
  doc["surface"] = cfg.surface;
  doc["projective"] = cfg.projective;
  return {d.yes ? 0 : 1, doc, {"realizable: " + yes_no(d.yes), "reason: " + d.reason}};
}

Outcome rational(const Config& cfg) {
  const IntPolynomial p = io::parse_polynomial_document(io::read_file(cfg.input));
  const RationalCriterion r = rational_isometry_criterion(p, lattices::named(cfg.lattice_name));
  Json doc{{"exists", r.exists},
           {"clause", r.clause},
           {"hyperbolic_kernel", r.hyperbolic_kernel},
           {"kernel_signature_three", r.kernel_signature_three},
           {"reason", r.reason},
           {"lattice", cfg.lattice_name}};
  return {r.exists ? 0 : 1, doc, {"exists: " + yes_no(r.exists), "reason: " + r.reason}};
}

Outcome build(const Config& cfg) {
  const IntPolynomial p = io::parse_polynomial_document(io::read_file(cfg.input));
  Seed seed;
  if (!cfg.seed_path.empty()) {
    seed = io::parse_seed(io::read_file(cfg.seed_path));
    if (seed.salem != p) throw PreconditionError("seed is for " + to_string(seed.salem) + ", not " + to_string(p));
  } else {
    const auto found = find_seed(p, parse_surface_kind(cfg.surface));
    if (!found) throw PreconditionError("no seed: no curated " + cfg.surface + " seed for " + to_string(p));
    seed = *found;
  }
  BuildOptions opt;
  opt.prime_cap = Int(cfg.prime_cap);
  if (cfg.box > 0) opt.norm_box = cfg.box;
  const RealizationCertificate c = build_certificate(seed, opt);
  const VerificationReport rep = verify_certificate(c, opt.search);
  Outcome o{rep.passed ? 0 : 1, io::certificate_document(c), {}};
  o.text.push_back("surface: " + to_string(c.kind) + (c.projective ? " (projective)" : ""));
  o.text.push_back("power: " + std::to_string(c.power));
  o.text.push_back("s_n: " + to_string(c.salem_power));
  if (c.glue) o.text.push_back("prime: " + to_string(c.glue->p) + ", t = " + to_string(c.glue->t.polynomial, "w"));
  if (c.positivity) o.text.push_back("positivity: " + to_string(c.positivity->report.method));
  o.text.push_back("verified: " + yes_no(rep.passed));
  return o;
}

Outcome verify(const Config& cfg) {
  const RealizationCertificate c = io::parse_certificate(io::read_file(cfg.input));
  SearchOptions search;
  if (cfg.box > 0) search.max_box_volume = cfg.box;
  const VerificationReport rep = verify_certificate(c, search);
  Outcome o{rep.passed ? 0 : 1, io::to_json(rep), {}};
  for (const auto& it : rep.items) o.text.push_back((it.passed ? "ok   " : "FAIL ") + it.name + ": " + it.detail);
  o.text.push_back("verified: " + yes_no(rep.passed));
  return o;
}

Outcome positivity(const Config& cfg) {
  const io::IsometryDocument d = io::parse_isometry_document(io::read_file(cfg.input));
  SearchOptions search;
  if (cfg.box > 0) search.max_box_volume = cfg.box;
  const ObstructionReport r = is_positive(Isometry(d.lattice, d.isometry), search, cfg.orbit_bound);
  const int code = r.status == PositivityStatus::positive ? 0 : r.status == PositivityStatus::not_positive ? 1 : 2;
  Outcome o{code, io::to_json(r), {}};
  o.text.push_back("status: " + to_string(r.status));
  o.text.push_back("method: " + to_string(r.method));
  for (const auto& w : r.witnesses) {
    std::string v;
    for (const auto& x : w.root) v += (v.empty() ? "" : " ") + to_string(x);
    o.text.push_back("witness (" + to_string(w.kind) + "): " + v);
  }
  for (const auto& n : r.notes) o.text.push_back("note: " + n);
  return o;
}

Outcome do_twist(const Config& cfg) {
  const io::IsometryDocument d = io::parse_isometry_document(io::read_file(cfg.input));
  if (!d.element) throw ParseError("$.element: missing field");
  const Twist t = twist(Isometry(d.lattice, d.isometry), TwistElement{*d.element});
  return {0, io::isometry_document(t.lattice, t.isometry.matrix()), {"twisted determinant: " + to_string(t.lattice.determinant())}};
}

Outcome power_integral(const Config& cfg) {
  const io::IsometryDocument d = io::parse_isometry_document(io::read_file(cfg.input));
  const PowerResult r = power_to_integral(Isometry(d.lattice, d.isometry));
  return {0, io::to_json(r), {"exponent: " + to_string(r.exponent), "module index: " + to_string(r.module_index)}};
}

Outcome twist_split(const Config& cfg) {
  const io::IsometryDocument d = io::parse_isometry_document(io::read_file(cfg.input));
  if (!d.element) throw ParseError("$.element: missing field");
  if (!d.p) throw ParseError("$.p: missing field");
  const TwistSplitReport r =
      twist_split_certificate(Isometry(d.lattice, d.isometry), TwistElement{*d.element}, d.n.value_or(1), *d.p);
  Outcome o{r.passed ? 0 : 1, io::to_json(r), {}};
  o.text.push_back("passed: " + yes_no(r.passed));
  o.text.push_back("twisted determinant: " + to_string(r.twisted_determinant));
  for (const auto& n : r.notes) o.text.push_back("note: " + n);
  return o;
}

Outcome seeds(const Config& cfg) {
  const auto all = curated_seeds();
  if (cfg.label.empty()) {
    Json list = Json::array();
    Outcome o;
    for (const auto& s : all) {
      list.push_back(Json{{"label", s.label}, {"surface", to_string(s.kind)}, {"salem", io::to_json(s.salem)}});
      o.text.push_back(s.label + ": " + to_string(s.kind) + ", " + to_string(s.salem));
    }
    o.doc = list;
    return o;
  }
  for (const auto& s : all)
    if (s.label == cfg.label) return {0, io::seed_document(s), {io::dump(io::seed_document(s))}};
  throw PreconditionError("no seed labelled '" + cfg.label + "'");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Salem numbers as dynamical degrees: lattice-side decisions and certificates", "salem"};
  app.require_subcommand(1);
  Config cfg;
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "text"}));

  std::function<Outcome(const Config&)> action;
  auto sub = [&](const char* name, const char* help, std::function<Outcome(const Config&)> fn) {
    CLI::App* s = app.add_subcommand(name, help);
    s->fallthrough();
    s->callback([&action, fn] { action = fn; });
    return s;
  };
  auto input = [&](CLI::App* s, const char* what) { s->add_option("input", cfg.input, what)->required(); };
  auto positive = CLI::PositiveNumber;

  CLI::App* s = sub("certify-salem", "Check that a polynomial is a Salem polynomial", certify_salem);
  input(s, "polynomial JSON");
  s = sub("realizable", "Decide stable realizability for a surface class", realizable);
  input(s, "polynomial JSON");
  s->add_option("--class", cfg.surface, "torus, k3 or enriques")->required()->check(CLI::IsMember({"torus", "k3", "enriques"}));
  s->add_flag("--projective", cfg.projective, "Require a projective surface");
  s = sub("rational-criterion", "Decide existence of a rational isometry", rational);
  input(s, "polynomial JSON");
  s->add_option("--lattice", cfg.lattice_name, "3U, U+E8 or 3U+2E8")->required();
  s = sub("build-certificate", "Build and verify a realization certificate", build);
  input(s, "polynomial JSON");
  s->add_option("--seed", cfg.seed_path, "Seed JSON (default: curated seed)");
  s->add_option("--class", cfg.surface, "Class used to look up a curated seed")->check(CLI::IsMember({"torus", "k3", "enriques"}));
  s->add_option("--prime-cap", cfg.prime_cap, "Largest prime tried")->check(positive);
  s->add_option("--box", cfg.box, "Coefficient bound for norm elements (default 40)")->check(positive);
  s = sub("verify", "Re-check every item of a certificate", verify);
  input(s, "certificate JSON");
  s->add_option("--box", cfg.box, "Largest root search box volume")->check(positive);
  s = sub("positivity", "Decide positivity of an isometry", positivity);
  input(s, "isometry JSON");
  s->add_option("--box", cfg.box, "Largest root search box volume (default 200000000)")->check(positive);
  s->add_option("--orbit-bound", cfg.orbit_bound, "Longest orbit sum for cyclic roots")->check(positive);
  s = sub("twist", "Twist a lattice by an element of Z[f + 1/f]", do_twist);
  input(s, "isometry JSON with element");
  s = sub("power-integral", "Least power of a rational isometry preserving the lattice", power_integral);
  input(s, "isometry JSON");
  s = sub("twist-split-check", "Check the p-part of a twist by t^n", twist_split);
  input(s, "isometry JSON with element, p and n");
  s = sub("seeds", "List curated seeds or print one", seeds);
  s->add_option("label", cfg.label, "Seed label");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);  // --help
    err << "error: " << e.what() << "\n";
    return 2;
  }
  try {
    const Outcome o = action(cfg);
    if (cfg.format == "json")
      out << io::dump(o.doc);
    else
      for (const auto& line : o.text) out << line << "\n";
    return o.code;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    if (cfg.format == "json") out << io::dump(Json{{"error", e.what()}});
    return 2;
  }
}

}  // namespace salem::cli
