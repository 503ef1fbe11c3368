#include <cctype>

#include "salem/lattice.hpp"

namespace salem {

Lattice::Lattice(IntMatrix gram) : gram_(std::move(gram)) {
  if (!gram_.is_square()) throw PreconditionError("Gram matrix must be square");
  if (!gram_.is_symmetric()) throw PreconditionError("Gram matrix must be symmetric");
  det_ = salem::determinant(gram_);
  if (det_ == 0) throw PreconditionError("Gram matrix is degenerate");
}

Signature Lattice::signature() const {
  const Inertia in = inertia(gram_);
  return {in.positive, in.negative};
}

bool Lattice::is_even() const {
  for (std::size_t i = 0; i < rank(); ++i)
    if (mpz_odd_p(gram_(i, i).get_mpz_t())) return false;
  return true;
}

bool Lattice::is_definite() const {
  const Signature s = signature();
  return s.positive == 0 || s.negative == 0;
}

Int Lattice::product(const IntVector& x, const IntVector& y) const {
  if (x.size() != rank() || y.size() != rank()) throw PreconditionError("vector length does not match rank");
  return bilinear(gram_, x, y);
}

Rat Lattice::product(const RatVector& x, const RatVector& y) const {
  if (x.size() != rank() || y.size() != rank()) throw PreconditionError("vector length does not match rank");
  return bilinear(to_rat(gram_), x, y);
}

Lattice Lattice::scaled(const Int& factor) const {
  if (factor == 0) throw PreconditionError("cannot scale a lattice by zero");
  return Lattice(factor * gram_);
}

IntMatrix Lattice::restricted_gram(const IntMatrix& basis) const {
  if (basis.rows() != rank()) throw PreconditionError("basis vectors do not match rank");
  return basis.transposed() * gram_ * basis;
}

Int determinant(const Lattice& lattice) { return lattice.determinant(); }
Signature signature(const Lattice& lattice) { return lattice.signature(); }

Lattice direct_sum(const Lattice& a, const Lattice& b) {
  if (a.rank() == 0) return b;
  if (b.rank() == 0) return a;
  return Lattice(direct_sum(a.gram(), b.gram()));
}

RatMatrix dual_basis(const Lattice& lattice) { return inverse_or_throw(to_rat(lattice.gram())); }

namespace lattices {
namespace {

Lattice from_edges(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  IntMatrix g(n, n);
  for (std::size_t i = 0; i < n; ++i) g(i, i) = -2;
  for (auto [i, j] : edges) g(i, j) = g(j, i) = 1;
  return Lattice(g);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::size_t parse_count(std::string_view digits, std::string_view whole) {
  if (digits.empty()) throw ParseError("missing index in lattice name '" + std::string(whole) + "'");
  std::size_t n = 0;
  for (char c : digits) {
    if (!std::isdigit(static_cast<unsigned char>(c)) || n > 1000)
      throw ParseError("bad number in lattice name '" + std::string(whole) + "'");
    n = n * 10 + static_cast<std::size_t>(c - '0');
  }
  return n;
}

Lattice named_term(std::string_view term) {
  const std::string_view whole = term;
  std::size_t multiplicity = 1;
  std::size_t pos = 0;
  while (pos < term.size() && std::isdigit(static_cast<unsigned char>(term[pos]))) ++pos;
  if (pos > 0) {
    multiplicity = parse_count(term.substr(0, pos), whole);
    term.remove_prefix(pos);
  }
  Int scale = 1;
  if (!term.empty() && term.back() == ')') {
    const std::size_t open = term.find('(');
    if (open == std::string_view::npos) throw ParseError("unbalanced parenthesis in '" + std::string(whole) + "'");
    scale = parse_int(term.substr(open + 1, term.size() - open - 2));
    if (scale == 0) throw ParseError("zero scale in '" + std::string(whole) + "'");
    term = term.substr(0, open);
  }
  term = trim(term);
  if (term.empty() || multiplicity == 0) throw ParseError("empty lattice term in '" + std::string(whole) + "'");
  Lattice base;
  const char kind = static_cast<char>(std::toupper(static_cast<unsigned char>(term.front())));
  const std::string_view index = term.substr(1);
  if (kind == 'U' && index.empty()) {
    base = hyperbolic_plane();
  } else if (kind == 'A') {
    base = a_n(parse_count(index, whole));
  } else if (kind == 'D') {
    base = d_n(parse_count(index, whole));
  } else if (kind == 'E') {
    base = e_n(parse_count(index, whole));
  } else {
    throw ParseError("unknown lattice '" + std::string(whole) + "'");
  }
  if (scale != 1) base = base.scaled(scale);
  Lattice result;
  for (std::size_t i = 0; i < multiplicity; ++i) result = direct_sum(result, base);
  return result;
}

}  // namespace

Lattice hyperbolic_plane() { return Lattice(IntMatrix::from_rows({{Int(0), Int(1)}, {Int(1), Int(0)}})); }

Lattice a_n(std::size_t n) {
  if (n == 0) throw PreconditionError("A_n needs n >= 1");
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return from_edges(n, edges);
}

Lattice d_n(std::size_t n) {
  if (n < 4) throw PreconditionError("D_n needs n >= 4");
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i + 2 < n; ++i) edges.emplace_back(i, i + 1);
  edges.emplace_back(n - 3, n - 1);
  return from_edges(n, edges);
}

Lattice e_n(std::size_t n) {
  if (n < 6 || n > 8) throw PreconditionError("E_n needs n in {6, 7, 8}");
  // chain of n-1 nodes with the extra node attached to the third
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i + 2 < n; ++i) edges.emplace_back(i, i + 1);
  edges.emplace_back(2, n - 1);
  return from_edges(n, edges);
}

Lattice named(std::string_view name) {
  name = trim(name);
  if (name.empty()) throw ParseError("empty lattice name");
  Lattice result;
  std::size_t depth = 0, start = 0;
  for (std::size_t i = 0; i <= name.size(); ++i) {
    if (i < name.size()) {
      if (name[i] == '(') ++depth;
      if (name[i] == ')') {
        if (depth == 0) throw ParseError("unbalanced parenthesis in lattice name");
        --depth;
      }
      if (!(name[i] == '+' && depth == 0)) continue;
    }
    result = direct_sum(result, named_term(trim(name.substr(start, i - start))));
    start = i + 1;
  }
  return result;
}

}  // namespace lattices
}  // namespace salem
