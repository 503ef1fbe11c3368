#pragma once

// JSON documents for polynomials, lattices, isometries, seeds, reports and
// certificates. Parsing is strict: unknown fields are errors, and every
// ParseError names the offending field path. Objects are written with
// sorted keys, so equal values give byte-identical output.

#include <string>

#include "json.hpp"
#include "salem/realize.hpp"

namespace salem::io {

using Json = nlohmann::json;

// Integers below 2^53 in magnitude are JSON numbers, larger ones decimal
// strings; rationals are "p/q" strings unless integral.
Json to_json(const Int& x);
Json to_json(const Rat& x);
Json to_json(const IntVector& v);
Json to_json(const IntMatrix& m);
Json to_json(const RatMatrix& m);
Json to_json(const IntPolynomial& p);  // ascending coefficients

Int int_from(const Json& j, const std::string& path);
Rat rat_from(const Json& j, const std::string& path);
IntVector int_vector_from(const Json& j, const std::string& path);
IntMatrix int_matrix_from(const Json& j, const std::string& path);
RatMatrix rat_matrix_from(const Json& j, const std::string& path);
IntPolynomial polynomial_from(const Json& j, const std::string& path);
// A Gram matrix or a name such as "U+E8+3A2".
Lattice lattice_from(const Json& j, const std::string& path);

// Reads a file and parses it as JSON; ParseError on failure.
Json read_file(const std::string& path);
// Two-space indented with scalar arrays on one line, sorted keys,
// trailing newline.
std::string dump(const Json& j);

// {"coefficients": [...], "label"?: string}
IntPolynomial parse_polynomial_document(const Json& j);
Json polynomial_document(const IntPolynomial& p, const std::string& label = "");

// {"gram": ..., "isometry": ..., "element"?: [...], "p"?: int, "n"?: int}
struct IsometryDocument {
  Lattice lattice;
  RatMatrix isometry;
  std::optional<IntPolynomial> element;
  std::optional<Int> p;
  std::optional<unsigned> n;
};
IsometryDocument parse_isometry_document(const Json& j);
Json isometry_document(const Lattice& l, const RatMatrix& f);

Seed parse_seed(const Json& j);
Json seed_document(const Seed& seed);

RealizationCertificate parse_certificate(const Json& j);
Json certificate_document(const RealizationCertificate& c);

Json to_json(const SalemCheck& check);
Json to_json(const Decision& d);
Json to_json(const ObstructionReport& r);
ObstructionReport parse_obstruction_report(const Json& j, const std::string& path);
Json to_json(const VerificationReport& r);
Json to_json(const TwistSplitReport& r);
Json to_json(const PowerResult& r);

}  // namespace salem::io
