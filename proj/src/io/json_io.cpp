#include "salem/io.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace salem::io {

namespace {

const Int json_safe = Int(1) << 53;

// Object reader that remembers which keys were consumed.
class Fields {
 public:
  Fields(const Json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j.is_object()) throw ParseError(path_ + ": expected an object");
  }
  const Json& required(const std::string& key) {
    seen_.insert(key);
    if (!j_.contains(key)) throw ParseError(at(key) + ": missing field");
    return j_.at(key);
  }
  const Json* optional(const std::string& key) {
    seen_.insert(key);
    if (!j_.contains(key) || j_.at(key).is_null()) return nullptr;
    return &j_.at(key);
  }
  std::string at(const std::string& key) const { return path_ + "." + key; }
  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it)
      if (!seen_.count(it.key())) throw ParseError(at(it.key()) + ": unknown field");
  }

 private:
  const Json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

std::string index(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

unsigned long ulong_from(const Json& j, const std::string& path) {
  const Int v = int_from(j, path);
  if (v < 1 || !v.fits_ulong_p()) throw ParseError(path + ": expected a positive integer");
  return v.get_ui();
}

bool bool_from(const Json& j, const std::string& path) {
  if (!j.is_boolean()) throw ParseError(path + ": expected true or false");
  return j.get<bool>();
}

std::string string_from(const Json& j, const std::string& path) {
  if (!j.is_string()) throw ParseError(path + ": expected a string");
  return j.get<std::string>();
}

Signature signature_from(const Json& j, const std::string& path) {
  const IntVector v = int_vector_from(j, path);
  if (v.size() != 2 || v[0] < 0 || v[1] < 0 || !v[0].fits_sint_p() || !v[1].fits_sint_p())
    throw ParseError(path + ": expected [positive, negative]");
  return {static_cast<int>(v[0].get_si()), static_cast<int>(v[1].get_si())};
}

template <class F>
auto checked(const std::string& path, F&& body) {
  try {
    return body();
  } catch (const Error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

PositivityStatus status_from(const std::string& s, const std::string& path) {
  for (auto v : {PositivityStatus::positive, PositivityStatus::not_positive, PositivityStatus::inconclusive})
    if (to_string(v) == s) return v;
  throw ParseError(path + ": unknown status '" + s + "'");
}

PositivityMethod method_from(const std::string& s, const std::string& path) {
  for (auto v : {PositivityMethod::determinant_bound, PositivityMethod::exhaustive_search,
                 PositivityMethod::cyclic_only})
    if (to_string(v) == s) return v;
  throw ParseError(path + ": unknown method '" + s + "'");
}

WitnessKind kind_from(const std::string& s, const std::string& path) {
  for (auto v : {WitnessKind::cyclic, WitnessKind::geodesic_crossing})
    if (to_string(v) == s) return v;
  throw ParseError(path + ": unknown witness kind '" + s + "'");
}

Json signature_json(const Signature& s) { return Json::array({s.positive, s.negative}); }

}  // namespace

Json to_json(const Int& x) {
  if (abs(x) < json_safe) return Json(x.get_si());
  return Json(to_string(x));
}

Json to_json(const Rat& x) {
  if (is_integer(x)) return to_json(Int(x.get_num()));
  return Json(to_string(x));
}

Json to_json(const IntVector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

Json to_json(const IntMatrix& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    out.push_back(row);
  }
  return out;
}

Json to_json(const RatMatrix& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    out.push_back(row);
  }
  return out;
}

Json to_json(const IntPolynomial& p) { return to_json(IntVector(p.coeffs())); }

Int int_from(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return j.is_number_unsigned() ? Int(std::to_string(j.get<std::uint64_t>()))
                                                           : Int(std::to_string(j.get<std::int64_t>()));
  if (j.is_string()) return checked(path, [&] { return parse_int(j.get<std::string>()); });
  throw ParseError(path + ": expected an integer");
}

Rat rat_from(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return Rat(int_from(j, path));
  if (j.is_string()) return checked(path, [&] { return parse_rat(j.get<std::string>()); });
  throw ParseError(path + ": expected a rational number");
}

IntVector int_vector_from(const Json& j, const std::string& path) {
  if (!j.is_array()) throw ParseError(path + ": expected an array");
  IntVector v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(int_from(j[i], index(path, i)));
  return v;
}

namespace {

template <class T, class Read>
Matrix<T> matrix_from(const Json& j, const std::string& path, Read read) {
  if (!j.is_array() || j.empty()) throw ParseError(path + ": expected a non-empty array of rows");
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  Matrix<T> m(j.size(), cols);
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string row = index(path, i);
    if (!j[i].is_array() || j[i].size() != cols) throw ParseError(row + ": rows must be arrays of equal length");
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = read(j[i][k], index(row, k));
  }
  return m;
}

}  // namespace

IntMatrix int_matrix_from(const Json& j, const std::string& path) { return matrix_from<Int>(j, path, int_from); }

RatMatrix rat_matrix_from(const Json& j, const std::string& path) { return matrix_from<Rat>(j, path, rat_from); }

IntPolynomial polynomial_from(const Json& j, const std::string& path) {
  const IntVector c = int_vector_from(j, path);
  if (c.empty()) throw ParseError(path + ": empty coefficient list");
  return IntPolynomial(c);
}

Lattice lattice_from(const Json& j, const std::string& path) {
  if (j.is_string()) return checked(path, [&] { return lattices::named(j.get<std::string>()); });
  const IntMatrix g = int_matrix_from(j, path);
  return checked(path, [&] { return Lattice(g); });
}

Json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return Json::parse(buf.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": malformed JSON: " + e.what());
  }
}

namespace {

// Two-space indentation, but arrays of scalars (vectors, matrix rows) stay
// on one line.
void write(const Json& j, int depth, std::string& out) {
  const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
  const std::string close(static_cast<std::size_t>(2 * depth), ' ');
  if (j.is_object() && !j.empty()) {
    out += "{\n";
    bool first = true;
    for (auto it = j.begin(); it != j.end(); ++it) {
      out += (first ? "" : ",\n") + pad + Json(it.key()).dump() + ": ";
      write(it.value(), depth + 1, out);
      first = false;
    }
    out += "\n" + close + "}";
  } else if (j.is_array() && !j.empty() && std::any_of(j.begin(), j.end(), [](const Json& x) { return x.is_structured(); })) {
    out += "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      out += (i ? ",\n" : "") + pad;
      write(j[i], depth + 1, out);
    }
    out += "\n" + close + "]";
  } else if (j.is_array()) {
    out += "[";
    for (std::size_t i = 0; i < j.size(); ++i) out += (i ? ", " : "") + j[i].dump();
    out += "]";
  } else {
    out += j.dump();
  }
}

}  // namespace

std::string dump(const Json& j) {
  std::string out;
  write(j, 0, out);
  return out + "\n";
}

IntPolynomial parse_polynomial_document(const Json& j) {
  Fields f(j, "$");
  const IntPolynomial p = polynomial_from(f.required("coefficients"), f.at("coefficients"));
  if (const Json* label = f.optional("label")) string_from(*label, f.at("label"));
  f.finish();
  return p;
}

Json polynomial_document(const IntPolynomial& p, const std::string& label) {
  Json j{{"coefficients", to_json(p)}};
  if (!label.empty()) j["label"] = label;
  return j;
}

IsometryDocument parse_isometry_document(const Json& j) {
  Fields f(j, "$");
  IsometryDocument d;
  d.lattice = lattice_from(f.required("gram"), f.at("gram"));
  d.isometry = rat_matrix_from(f.required("isometry"), f.at("isometry"));
  if (const Json* e = f.optional("element")) d.element = polynomial_from(*e, f.at("element"));
  if (const Json* p = f.optional("p")) d.p = int_from(*p, f.at("p"));
  if (const Json* n = f.optional("n")) d.n = static_cast<unsigned>(ulong_from(*n, f.at("n")));
  f.finish();
  if (d.isometry.rows() != d.lattice.rank() || d.isometry.cols() != d.lattice.rank())
    throw ParseError("$.isometry: size does not match the Gram matrix");
  return d;
}

Json isometry_document(const Lattice& l, const RatMatrix& f) {
  return Json{{"gram", to_json(l.gram())}, {"isometry", to_json(f)}};
}

Seed parse_seed(const Json& j) {
  Fields f(j, "$");
  Seed s;
  if (int_from(f.required("version"), f.at("version")) != 1) throw ParseError("$.version: unsupported version");
  s.label = string_from(f.required("label"), f.at("label"));
  const std::string surface = string_from(f.required("surface"), f.at("surface"));
  s.kind = checked(f.at("surface"), [&] { return parse_surface_kind(surface); });
  s.salem = polynomial_from(f.required("salem"), f.at("salem"));
  s.kernel = lattice_from(f.required("kernel"), f.at("kernel"));
  s.isometry = int_matrix_from(f.required("isometry"), f.at("isometry"));
  if (const Json* c = f.optional("complement")) s.complement_base = lattice_from(*c, f.at("complement"));
  f.finish();
  return s;
}

Json seed_document(const Seed& seed) {
  Json j{{"version", 1},
         {"label", seed.label},
         {"surface", to_string(seed.kind)},
         {"salem", to_json(seed.salem)},
         {"kernel", to_json(seed.kernel.gram())},
         {"isometry", to_json(seed.isometry)}};
  j["complement"] = seed.complement_base ? to_json(seed.complement_base->gram()) : Json(nullptr);
  return j;
}

Json to_json(const ObstructionReport& r) {
  Json w = Json::array();
  for (const auto& x : r.witnesses) w.push_back(Json{{"root", to_json(x.root)}, {"kind", to_string(x.kind)}});
  return Json{{"status", to_string(r.status)},
              {"method", to_string(r.method)},
              {"witnesses", w},
              {"box", to_json(r.box)},
              {"lattice_determinant", to_json(r.lattice_determinant)},
              {"salem_discriminant", to_json(r.salem_discriminant)},
              {"candidates", r.candidates},
              {"notes", r.notes}};
}

ObstructionReport parse_obstruction_report(const Json& j, const std::string& path) {
  Fields f(j, path);
  ObstructionReport r;
  r.status = status_from(string_from(f.required("status"), f.at("status")), f.at("status"));
  r.method = method_from(string_from(f.required("method"), f.at("method")), f.at("method"));
  const Json& w = f.required("witnesses");
  if (!w.is_array()) throw ParseError(f.at("witnesses") + ": expected an array");
  for (std::size_t i = 0; i < w.size(); ++i) {
    Fields wf(w[i], index(f.at("witnesses"), i));
    RootWitness rw;
    rw.root = int_vector_from(wf.required("root"), wf.at("root"));
    rw.kind = kind_from(string_from(wf.required("kind"), wf.at("kind")), wf.at("kind"));
    wf.finish();
    r.witnesses.push_back(std::move(rw));
  }
  r.box = int_vector_from(f.required("box"), f.at("box"));
  r.lattice_determinant = int_from(f.required("lattice_determinant"), f.at("lattice_determinant"));
  r.salem_discriminant = int_from(f.required("salem_discriminant"), f.at("salem_discriminant"));
  const Int cand = int_from(f.required("candidates"), f.at("candidates"));
  if (cand < 0 || !cand.fits_ulong_p()) throw ParseError(f.at("candidates") + ": expected a count");
  r.candidates = cand.get_ui();
  const Json& notes = f.required("notes");
  if (!notes.is_array()) throw ParseError(f.at("notes") + ": expected an array");
  for (std::size_t i = 0; i < notes.size(); ++i) r.notes.push_back(string_from(notes[i], index(f.at("notes"), i)));
  f.finish();
  return r;
}

RealizationCertificate parse_certificate(const Json& j) {
  Fields f(j, "$");
  RealizationCertificate c;
  const Int version = int_from(f.required("version"), f.at("version"));
  if (version != 1) throw ParseError("$.version: unsupported certificate version " + to_string(version));
  c.version = 1;
  c.salem = polynomial_from(f.required("salem"), f.at("salem"));
  c.power = ulong_from(f.required("power"), f.at("power"));
  c.salem_power = polynomial_from(f.required("salem_power"), f.at("salem_power"));
  const std::string surface = string_from(f.required("surface"), f.at("surface"));
  c.kind = checked(f.at("surface"), [&] { return parse_surface_kind(surface); });
  c.projective = bool_from(f.required("projective"), f.at("projective"));
  c.lattice = lattice_from(f.required("lattice"), f.at("lattice"));
  c.isometry = int_matrix_from(f.required("isometry"), f.at("isometry"));
  c.kernel_basis = int_matrix_from(f.required("kernel_basis"), f.at("kernel_basis"));
  c.kernel_signature = signature_from(f.required("kernel_signature"), f.at("kernel_signature"));
  if (const Json* p = f.optional("positivity")) {
    Fields pf(*p, f.at("positivity"));
    PositivityEvidence ev;
    ev.base = int_matrix_from(pf.required("base"), pf.at("base"));
    ev.exponent = ulong_from(pf.required("exponent"), pf.at("exponent"));
    ev.report = parse_obstruction_report(pf.required("report"), pf.at("report"));
    pf.finish();
    c.positivity = std::move(ev);
  }
  if (const Json* m = f.optional("mod2_order")) c.mod2_order = ulong_from(*m, f.at("mod2_order"));
  if (const Json* g = f.optional("glue")) {
    Fields gf(*g, f.at("glue"));
    GlueEvidence ev;
    ev.p = int_from(gf.required("p"), gf.at("p"));
    ev.trace_root = int_from(gf.required("trace_root"), gf.at("trace_root"));
    ev.t = TwistElement{polynomial_from(gf.required("t"), gf.at("t"))};
    ev.l = static_cast<unsigned>(ulong_from(gf.required("l"), gf.at("l")));
    ev.n = static_cast<unsigned>(ulong_from(gf.required("n"), gf.at("n")));
    ev.seed_determinant = int_from(gf.required("seed_determinant"), gf.at("seed_determinant"));
    ev.complement_basis = int_matrix_from(gf.required("complement_basis"), gf.at("complement_basis"));
    ev.complement = lattice_from(gf.required("complement"), gf.at("complement"));
    gf.finish();
    c.glue = std::move(ev);
  }
  f.finish();
  return c;
}

Json certificate_document(const RealizationCertificate& c) {
  Json j{{"version", c.version},
         {"salem", to_json(c.salem)},
         {"power", c.power},
         {"salem_power", to_json(c.salem_power)},
         {"surface", to_string(c.kind)},
         {"projective", c.projective},
         {"lattice", to_json(c.lattice.gram())},
         {"isometry", to_json(c.isometry)},
         {"kernel_basis", to_json(c.kernel_basis)},
         {"kernel_signature", signature_json(c.kernel_signature)}};
  if (c.positivity)
    j["positivity"] = Json{{"base", to_json(c.positivity->base)},
                           {"exponent", c.positivity->exponent},
                           {"report", to_json(c.positivity->report)}};
  if (c.mod2_order) j["mod2_order"] = *c.mod2_order;
  if (c.glue) {
    const GlueEvidence& g = *c.glue;
    j["glue"] = Json{{"p", to_json(g.p)},
                     {"trace_root", to_json(g.trace_root)},
                     {"t", to_json(g.t.polynomial)},
                     {"l", g.l},
                     {"n", g.n},
                     {"seed_determinant", to_json(g.seed_determinant)},
                     {"complement_basis", to_json(g.complement_basis)},
                     {"complement", to_json(g.complement.gram())}};
  }
  return j;
}

Json to_json(const SalemCheck& check) {
  Json j{{"accepted", check.accepted()}, {"reason", to_string(check.reason)}, {"detail", check.detail}};
  if (check.certificate) {
    const SalemCertificate& c = *check.certificate;
    j["degree"] = c.degree;
    j["trace_polynomial"] = to_json(c.trace_polynomial);
    j["lambda"] = Json::array({to_json(c.lambda.lo), to_json(c.lambda.hi)});
    j["lambda_approx"] = (c.lambda.lo.get_d() + c.lambda.hi.get_d()) / 2;
  }
  return j;
}

Json to_json(const Decision& d) { return Json{{"realizable", d.yes}, {"clause", d.clause}, {"reason", d.reason}}; }

Json to_json(const VerificationReport& r) {
  Json items = Json::array();
  for (const auto& it : r.items) items.push_back(Json{{"name", it.name}, {"passed", it.passed}, {"detail", it.detail}});
  return Json{{"verified", r.passed}, {"items", items}};
}

Json to_json(const TwistSplitReport& r) {
  return Json{{"passed", r.passed},
              {"norm", to_json(r.norm)},
              {"twisted_determinant", to_json(r.twisted_determinant)},
              {"p_valuation", r.p_valuation},
              {"global_determinant_ok", r.global_determinant_ok},
              {"hyperbolic_ok", r.hyperbolic_ok},
              {"p_part_orders", to_json(r.p_form.orders)},
              {"twisted_gram", to_json(r.twisted.gram())},
              {"notes", r.notes}};
}

Json to_json(const PowerResult& r) {
  return Json{{"exponent", to_json(r.exponent)},
              {"power", to_json(r.power)},
              {"module_index", to_json(r.module_index)},
              {"exponent_bound", to_json(r.exponent_bound)}};
}

}  // namespace salem::io
