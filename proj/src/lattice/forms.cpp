#include <algorithm>
#include <map>
#include <numeric>

#include "salem/lattice.hpp"

namespace salem {

Rat reduce_mod(const Rat& value, const Int& modulus) {
  const Rat m(modulus);
  const Rat k(floor(Rat(value / m)));
  return Rat(value - k * m);
}

Int FiniteQuadraticForm::order() const {
  Int n = 1;
  for (const auto& d : orders) n *= d;
  return n;
}

IntVector FiniteQuadraticForm::invariant_factors() const {
  IntMatrix d(size(), size());
  for (std::size_t i = 0; i < size(); ++i) d(i, i) = orders[i];
  IntVector out;
  for (const auto& f : smith_form(d).invariants)
    if (f != 1) out.push_back(f);
  return out;
}

IntVector FiniteQuadraticForm::reduce(const IntVector& coeffs) const {
  if (coeffs.size() != size()) throw PreconditionError("coefficient vector does not match the form");
  IntVector out(size());
  for (std::size_t i = 0; i < size(); ++i) out[i] = mod_floor(coeffs[i], orders[i]);
  return out;
}

Rat FiniteQuadraticForm::value(const IntVector& c) const {
  if (c.size() != size()) throw PreconditionError("coefficient vector does not match the form");
  Rat v = 0;
  for (std::size_t i = 0; i < size(); ++i) {
    v += Rat(c[i] * c[i]) * q[i];
    for (std::size_t j = i + 1; j < size(); ++j) v += Rat(2 * c[i] * c[j]) * b(i, j);
  }
  return reduce_mod(v, Int(2));
}

Rat FiniteQuadraticForm::bilinear(const IntVector& x, const IntVector& y) const {
  if (x.size() != size() || y.size() != size()) throw PreconditionError("coefficient vector does not match the form");
  Rat v = 0;
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = 0; j < size(); ++j) v += Rat(x[i] * y[j]) * b(i, j);
  return reduce_mod(v, Int(1));
}

RatVector FiniteQuadraticForm::lift(const IntVector& coeffs) const {
  if (lifts.cols() != size()) throw PreconditionError("form carries no lifts");
  return lifts * to_rat(coeffs);
}

FiniteQuadraticForm FiniteQuadraticForm::negated() const {
  FiniteQuadraticForm out = *this;
  for (auto& v : out.q) v = reduce_mod(Rat(-v), Int(2));
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = 0; j < size(); ++j) out.b(i, j) = reduce_mod(Rat(-b(i, j)), Int(1));
  return out;
}

FiniteQuadraticForm form_from_lifts(const Lattice& lattice, const RatMatrix& lifts) {
  if (!lattice.is_even()) throw PreconditionError("discriminant forms need an even lattice");
  if (lifts.rows() != lattice.rank()) throw PreconditionError("lifts do not match the lattice rank");
  const RatMatrix g = to_rat(lattice.gram());
  const RatMatrix gl = g * lifts;
  if (!to_int(gl)) throw PreconditionError("lifts are not in the dual lattice");
  const std::size_t k = lifts.cols();
  FiniteQuadraticForm f;
  f.lifts = lifts;
  f.q.resize(k);
  f.b = RatMatrix(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    const Int d = denominator(lifts.col(i));
    if (d == 1) throw PreconditionError("lift lies in the lattice");
    f.orders.push_back(d);
  }
  const RatMatrix values = lifts.transposed() * gl;
  for (std::size_t i = 0; i < k; ++i) {
    f.q[i] = reduce_mod(values(i, i), Int(2));
    for (std::size_t j = 0; j < k; ++j) f.b(i, j) = reduce_mod(values(i, j), Int(1));
  }
  // independence: the generated group must have order prod(orders)
  const Rat index_inv = determinant(z_basis_over_standard(lifts));
  if (Rat(1) / abs(index_inv) != Rat(f.order())) throw PreconditionError("lifts are not independent modulo the lattice");
  return f;
}

FiniteQuadraticForm discriminant_form(const Lattice& lattice) {
  if (!lattice.is_even()) throw PreconditionError("discriminant forms need an even lattice");
  const SmithForm s = smith_form(lattice.gram());
  const std::size_t n = lattice.rank();
  std::vector<RatVector> cols;
  for (std::size_t i = 0; i < n; ++i) {
    const Int& d = s.diagonal(i, i);
    if (abs(d) == 1) continue;
    RatVector v(n);
    for (std::size_t r = 0; r < n; ++r) v[r] = make_rat(s.right(r, i), abs(d));
    cols.push_back(v);
  }
  if (cols.empty()) {
    FiniteQuadraticForm f;
    f.b = RatMatrix(0, 0);
    f.lifts = RatMatrix(n, 0);
    return f;
  }
  return form_from_lifts(lattice, RatMatrix::from_columns(cols));
}

namespace {

FiniteQuadraticForm empty_like(const FiniteQuadraticForm& form) {
  FiniteQuadraticForm f;
  f.b = RatMatrix(0, 0);
  if (form.lifts.cols() == form.size()) f.lifts = RatMatrix(form.lifts.rows(), 0);
  return f;
}

// Generators of several forms living in the same ambient space.
FiniteQuadraticForm concatenate(const std::vector<FiniteQuadraticForm>& parts, const FiniteQuadraticForm& like) {
  FiniteQuadraticForm out = empty_like(like);
  std::size_t k = 0;
  for (const auto& p : parts) k += p.size();
  out.b = RatMatrix(k, k);
  const bool with_lifts = like.lifts.cols() == like.size();
  std::vector<RatVector> lift_cols;
  std::size_t at = 0;
  for (const auto& p : parts) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      out.orders.push_back(p.orders[i]);
      out.q.push_back(p.q[i]);
      for (std::size_t j = 0; j < p.size(); ++j) out.b(at + i, at + j) = p.b(i, j);
      if (with_lifts) lift_cols.push_back(p.lifts.col(i));
    }
    at += p.size();
  }
  if (with_lifts && !lift_cols.empty()) out.lifts = RatMatrix::from_columns(lift_cols);
  return out;
}

}  // namespace

FiniteQuadraticForm p_primary_part(const FiniteQuadraticForm& form, const Int& p) {
  if (!is_prime(p)) throw PreconditionError("p_primary_part needs a prime");
  std::vector<std::size_t> keep;
  IntVector mult;
  FiniteQuadraticForm out = empty_like(form);
  for (std::size_t i = 0; i < form.size(); ++i) {
    const unsigned e = valuation(form.orders[i], p);
    if (e == 0) continue;
    const Int pe = pow(p, e);
    keep.push_back(i);
    mult.push_back(form.orders[i] / pe);
    out.orders.push_back(pe);
  }
  const std::size_t k = keep.size();
  out.q.resize(k);
  out.b = RatMatrix(k, k);
  std::vector<RatVector> lift_cols;
  for (std::size_t a = 0; a < k; ++a) {
    const std::size_t i = keep[a];
    out.q[a] = reduce_mod(Rat(Rat(mult[a] * mult[a]) * form.q[i]), Int(2));
    for (std::size_t c = 0; c < k; ++c)
      out.b(a, c) = reduce_mod(Rat(Rat(mult[a] * mult[c]) * form.b(i, keep[c])), Int(1));
    if (form.lifts.cols() == form.size()) {
      RatVector v = form.lifts.col(i);
      for (auto& x : v) x *= mult[a];
      lift_cols.push_back(v);
    }
  }
  if (!lift_cols.empty()) out.lifts = RatMatrix::from_columns(lift_cols);
  return out;
}

FiniteQuadraticForm primary_decomposition(const FiniteQuadraticForm& form) {
  std::vector<FiniteQuadraticForm> parts;
  for (const auto& p : prime_divisors(form.order())) parts.push_back(p_primary_part(form, p));
  return concatenate(parts, form);
}

FiniteQuadraticForm direct_sum(const FiniteQuadraticForm& a, const FiniteQuadraticForm& b) {
  FiniteQuadraticForm out;
  out.orders = a.orders;
  out.orders.insert(out.orders.end(), b.orders.begin(), b.orders.end());
  out.q = a.q;
  out.q.insert(out.q.end(), b.q.begin(), b.q.end());
  out.b = direct_sum(a.b, b.b);
  if (a.lifts.cols() == a.size() && b.lifts.cols() == b.size() && (a.lifts.rows() + b.lifts.rows()) > 0)
    out.lifts = direct_sum(a.lifts, b.lifts);
  return out;
}

Int subgroup_order(const IntVector& orders, const IntMatrix& gens) {
  const std::size_t k = orders.size();
  if (gens.rows() != k) throw PreconditionError("generator coordinates do not match the group");
  if (k == 0) return 1;
  IntMatrix rows(gens.cols() + k, k);
  for (std::size_t c = 0; c < gens.cols(); ++c)
    for (std::size_t r = 0; r < k; ++r) rows(c, r) = gens(r, c);
  Int total = 1;
  for (std::size_t i = 0; i < k; ++i) {
    rows(gens.cols() + i, i) = orders[i];
    total *= orders[i];
  }
  const IntMatrix h = hermite_rows(rows);
  Int index = 1;
  for (std::size_t i = 0; i < k; ++i) index *= h(i, i);
  return total / abs(index);
}

bool is_homomorphism(const GlueMap& map) {
  const auto& s = map.source;
  const auto& t = map.target;
  if (map.images.rows() != t.size() || map.images.cols() != s.size()) return false;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = 0; j < t.size(); ++j)
      if ((s.orders[i] * map.images(j, i)) % t.orders[j] != 0) return false;
  return true;
}

bool is_bijective(const GlueMap& map) {
  if (map.source.order() != map.target.order()) return false;
  if (map.images.rows() != map.target.size() || map.images.cols() != map.source.size()) return false;
  return subgroup_order(map.target.orders, map.images) == map.target.order();
}

bool preserves_values(const GlueMap& map, int sign) {
  const auto& s = map.source;
  const auto& t = map.target;
  if (map.images.rows() != t.size() || map.images.cols() != s.size()) return false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const IntVector xi = map.images.col(i);
    if (t.value(xi) != reduce_mod(Rat(sign * s.q[i]), Int(2))) return false;
    for (std::size_t j = i + 1; j < s.size(); ++j)
      if (t.bilinear(xi, map.images.col(j)) != reduce_mod(Rat(sign * s.b(i, j)), Int(1))) return false;
  }
  return true;
}

bool is_anti_isometry(const GlueMap& map) {
  return is_homomorphism(map) && is_bijective(map) && preserves_values(map, -1);
}

namespace {

// Exhaustive generator matching on p-groups. Values are scaled by a common
// denominator so that the inner loops stay in machine integers.
class PrimarySearch {
 public:
  PrimarySearch(const FiniteQuadraticForm& a, const FiniteQuadraticForm& b) : a_(a), b_(b) {
    Int den = 2;
    auto absorb = [&](const Rat& r) { den = lcm(den, Int(r.get_den())); };
    for (const auto* f : {&a_, &b_}) {
      for (const auto& v : f->q) absorb(v);
      for (std::size_t i = 0; i < f->size(); ++i)
        for (std::size_t j = 0; j < f->size(); ++j) absorb(f->b(i, j));
    }
    if (!den.fits_slong_p() || den > (Int(1) << 30)) throw SearchExhausted("finite form denominators too large");
    scale_ = den.get_si();
    k_ = b_.size();
    for (std::size_t j = 0; j < k_; ++j) {
      if (!b_.orders[j].fits_slong_p()) throw SearchExhausted("finite form too large");
      radix_.push_back(b_.orders[j].get_si());
      qs_.push_back(scaled(b_.q[j], 2));
    }
    bs_.assign(k_ * k_, 0);
    for (std::size_t i = 0; i < k_; ++i)
      for (std::size_t j = 0; j < k_; ++j) bs_[i * k_ + j] = scaled(b_.b(i, j), 1);
  }

  std::optional<IntMatrix> run(std::size_t node_budget) {
    budget_ = node_budget;
    const std::size_t n = a_.size();
    chosen_.assign(n, {});
    if (n == 0) return IntMatrix(k_, 0);
    if (search(0)) {
      IntMatrix m(k_, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < k_; ++j) m(j, i) = chosen_[i][j];
      return m;
    }
    return std::nullopt;
  }

  // Number of elements of the target with each (order, value) pair.
  std::map<std::pair<long, long>, long> census() {
    std::map<std::pair<long, long>, long> out;
    for_each_element([&](const std::vector<long>& y) {
      ++out[{order_of(y), value_of(y)}];
      return true;
    });
    return out;
  }

 private:
  long scaled(const Rat& r, long modulus) const {
    const Rat s = r * Rat(scale_);
    if (!is_integer(s)) throw Error("finite form value not on the scaled grid");
    return mod_floor(Int(s.get_num()), Int(modulus * scale_)).get_si();
  }

  long value_of(const std::vector<long>& y) const {
    const Int128 m = 2 * static_cast<Int128>(scale_);
    Int128 acc = 0;
    for (std::size_t i = 0; i < k_; ++i) {
      if (y[i] == 0) continue;
      acc += (static_cast<Int128>(y[i]) * y[i] % m) * qs_[i] % m;
      for (std::size_t j = i + 1; j < k_; ++j)
        acc += 2 * ((static_cast<Int128>(y[i]) * y[j] % m) * bs_[i * k_ + j] % m);
      acc %= m;
    }
    return static_cast<long>(acc % m);
  }

  long bilinear_of(const std::vector<long>& y, const std::vector<long>& w) const {
    const Int128 m = scale_;
    Int128 acc = 0;
    for (std::size_t i = 0; i < k_; ++i) acc = (acc + static_cast<Int128>(y[i]) * w[i]) % m;
    return static_cast<long>(acc);
  }

  // w_i = sum_j z_j b_ij (scaled), so that b(y, z) = y . w
  std::vector<long> pairing_row(const std::vector<long>& z) const {
    std::vector<long> w(k_);
    for (std::size_t i = 0; i < k_; ++i) {
      Int128 acc = 0;
      for (std::size_t j = 0; j < k_; ++j) acc = (acc + static_cast<Int128>(z[j]) * bs_[i * k_ + j]) % scale_;
      w[i] = static_cast<long>(acc);
    }
    return w;
  }

  long order_of(const std::vector<long>& y) const {
    long best = 1;
    for (std::size_t i = 0; i < k_; ++i) {
      if (y[i] == 0) continue;
      const long o = radix_[i] / std::gcd(y[i], radix_[i]);
      best = std::max(best, o);
    }
    return best;
  }

  template <class F>
  void for_each_element(F&& f) const {
    std::vector<long> y(k_, 0);
    while (true) {
      if (!f(y)) return;
      std::size_t i = 0;
      while (i < k_) {
        if (++y[i] < radix_[i]) break;
        y[i] = 0;
        ++i;
      }
      if (i == k_) return;
    }
  }

  const std::vector<std::vector<long>>& candidates(long order, long value) {
    auto key = std::make_pair(order, value);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    std::vector<std::vector<long>> list;
    for_each_element([&](const std::vector<long>& y) {
      if (order_of(y) == order && value_of(y) == value) list.push_back(y);
      return true;
    });
    return cache_.emplace(key, std::move(list)).first->second;
  }

  bool search(std::size_t level) {
    if (level == a_.size()) return true;
    const long order = a_.orders[level].get_si();
    const long value = scaled(a_.q[level], 2);
    std::vector<std::vector<long>> rows;
    std::vector<long> wanted;
    for (std::size_t j = 0; j < level; ++j) {
      rows.push_back(pairing_row(chosen_[j]));
      wanted.push_back(scaled(a_.b(level, j), 1));
    }
    for (const auto& y : candidates(order, value)) {
      if (budget_ == 0) throw SearchExhausted("finite form isometry search exceeded its budget");
      --budget_;
      bool ok = true;
      for (std::size_t j = 0; j < level && ok; ++j) ok = bilinear_of(y, rows[j]) == wanted[j];
      if (!ok) continue;
      chosen_[level] = y;
      if (!independent(level + 1)) continue;
      if (search(level + 1)) return true;
    }
    return false;
  }

  bool independent(std::size_t count) const {
    IntMatrix gens(k_, count);
    Int expected = 1;
    for (std::size_t i = 0; i < count; ++i) {
      expected *= a_.orders[i];
      for (std::size_t j = 0; j < k_; ++j) gens(j, i) = chosen_[i][j];
    }
    return subgroup_order(b_.orders, gens) == expected;
  }

  const FiniteQuadraticForm& a_;
  const FiniteQuadraticForm& b_;
  long scale_ = 1;
  std::size_t k_ = 0;
  std::vector<long> radix_;
  std::vector<long> qs_;
  std::vector<long> bs_;
  std::vector<std::vector<long>> chosen_;
  std::map<std::pair<long, long>, std::vector<std::vector<long>>> cache_;
  std::size_t budget_ = 0;
};

// Orthogonal splitting of a form on an odd p-group into cyclic pieces.
// Each piece is a generator of order p^e with b(g, g) = unit / p^e.
struct CyclicPiece {
  IntVector coords;
  unsigned exponent;
  Int unit;  // modulo p^exponent
};

class OddJordan {
 public:
  OddJordan(const FiniteQuadraticForm& f, const Int& p) : f_(f), p_(p) {
    std::vector<IntVector> gens;
    std::vector<unsigned> exps;
    for (std::size_t i = 0; i < f.size(); ++i) {
      IntVector e(f.size());
      e[i] = 1;
      gens.push_back(e);
      exps.push_back(valuation(f.orders[i], p));
    }
    while (!gens.empty()) {
      const unsigned top = *std::max_element(exps.begin(), exps.end());
      const Int pe = pow(p, top);
      auto scaled = [&](const IntVector& x, const IntVector& y) {
        return mod_floor(Int(Rat(f_.bilinear(x, y) * Rat(pe)).get_num()), pe);
      };
      std::optional<std::size_t> pick;
      for (std::size_t i = 0; i < gens.size() && !pick; ++i)
        if (exps[i] == top && scaled(gens[i], gens[i]) % p != 0) pick = i;
      for (std::size_t i = 0; i < gens.size() && !pick; ++i)
        for (std::size_t j = i + 1; j < gens.size() && !pick; ++j)
          if (exps[i] == top && exps[j] == top && scaled(gens[i], gens[j]) % p != 0) {
            for (std::size_t k = 0; k < f.size(); ++k) gens[i][k] += gens[j][k];
            gens[i] = f_.reduce(gens[i]);
            pick = i;
          }
      if (!pick) throw PreconditionError("finite quadratic form is degenerate");
      const IntVector g = gens[*pick];
      const Int u = scaled(g, g);
      const Int uinv = inverse_mod(u, pe);
      gens.erase(gens.begin() + static_cast<long>(*pick));
      exps.erase(exps.begin() + static_cast<long>(*pick));
      for (auto& h : gens) {
        const Int c = mod_floor(Int(scaled(h, g) * uinv), pe);
        for (std::size_t k = 0; k < f.size(); ++k) h[k] -= c * g[k];
        h = f_.reduce(h);
      }
      pieces_[top].push_back({g, top, u});
    }
    for (auto& [e, block] : pieces_) normalize(block, e);
  }

  // Rank and determinant square class for each scale.
  std::map<unsigned, std::pair<std::size_t, int>> invariants() const {
    std::map<unsigned, std::pair<std::size_t, int>> out;
    for (const auto& [e, block] : pieces_) {
      Int det = 1;
      for (const auto& piece : block) det = mod_floor(Int(det * piece.unit), p_);
      out[e] = {block.size(), legendre(det, p_)};
    }
    return out;
  }

  const std::map<unsigned, std::vector<CyclicPiece>>& pieces() const { return pieces_; }

  // Coordinates of x in the orthogonal basis, scale by scale.
  Int coordinate(const IntVector& x, const CyclicPiece& piece) const {
    const Int pe = pow(p_, piece.exponent);
    const Int s = mod_floor(Int(Rat(f_.bilinear(x, piece.coords) * Rat(pe)).get_num()), pe);
    return mod_floor(Int(s * inverse_mod(piece.unit, pe)), pe);
  }

 private:
  // Rewrites a block of one scale as diag(1, ..., 1, d).
  void normalize(std::vector<CyclicPiece>& block, unsigned e) {
    const Int pe = pow(p_, e);
    auto value = [&](const IntVector& x) {
      return mod_floor(Int(Rat(f_.bilinear(x, x) * Rat(pe)).get_num()), pe);
    };
    auto combine = [&](const IntVector& x, const Int& cx, const IntVector& y, const Int& cy) {
      IntVector out(f_.size());
      for (std::size_t k = 0; k < out.size(); ++k) out[k] = cx * x[k] + cy * y[k];
      return f_.reduce(out);
    };
    for (std::size_t i = 0; i + 1 < block.size(); ++i) {
      CyclicPiece& a = block[i];
      CyclicPiece& b = block[i + 1];
      const Int r = sqrt_mod_prime_power(inverse_mod(a.unit, pe), p_, e);
      if (r >= 0) {
        a.coords = combine(a.coords, r, a.coords, 0);
        a.unit = 1;
        continue;
      }
      // solve u x^2 + v y^2 = 1 with y a unit; some x works since u is not a square
      bool done = false;
      for (Int x = 0; x < p_ && !done; ++x) {
        const Int rhs = mod_floor(Int((1 - a.unit * x * x) * inverse_mod(b.unit, pe)), pe);
        if (rhs % p_ == 0) continue;
        const Int y = sqrt_mod_prime_power(rhs, p_, e);
        if (y < 0) continue;
        const IntVector v = combine(a.coords, x, b.coords, y);
        const IntVector w = combine(a.coords, mod_floor(Int(-b.unit * y), pe), b.coords, mod_floor(Int(a.unit * x), pe));
        a.coords = v;
        a.unit = value(v);
        b.coords = w;
        b.unit = value(w);
        done = true;
      }
      if (!done || a.unit != 1) throw Error("internal: odd Jordan normalisation failed");
    }
  }

  const FiniteQuadraticForm& f_;
  Int p_;
  std::map<unsigned, std::vector<CyclicPiece>> pieces_;
};

// Isometry between forms on odd p-groups through their Jordan splittings.
std::optional<IntMatrix> odd_isometry(const FiniteQuadraticForm& a, const FiniteQuadraticForm& b, const Int& p) {
  const OddJordan ja(a, p), jb(b, p);
  if (ja.invariants() != jb.invariants()) return std::nullopt;
  // target images of the source pieces
  std::vector<std::pair<CyclicPiece, IntVector>> pairs;
  for (const auto& [e, block] : ja.pieces()) {
    const auto& other = jb.pieces().at(e);
    const Int pe = pow(p, e);
    for (std::size_t i = 0; i < block.size(); ++i) {
      Int scale = 1;
      if (block[i].unit != other[i].unit) {
        scale = sqrt_mod_prime_power(Int(block[i].unit * inverse_mod(other[i].unit, pe)), p, e);
        if (scale < 0) throw Error("internal: Jordan invariants agree but units differ in class");
      }
      IntVector image(b.size());
      for (std::size_t k = 0; k < b.size(); ++k) image[k] = scale * other[i].coords[k];
      pairs.emplace_back(block[i], b.reduce(image));
    }
  }
  IntMatrix m(b.size(), a.size());
  for (std::size_t g = 0; g < a.size(); ++g) {
    IntVector e(a.size());
    e[g] = 1;
    IntVector image(b.size());
    for (const auto& [piece, target] : pairs) {
      const Int c = ja.coordinate(e, piece);
      for (std::size_t k = 0; k < b.size(); ++k) image[k] += c * target[k];
    }
    image = b.reduce(image);
    for (std::size_t k = 0; k < b.size(); ++k) m(k, g) = image[k];
  }
  return m;
}

}  // namespace

std::optional<GlueMap> find_isometry(const FiniteQuadraticForm& a, const FiniteQuadraticForm& b,
                                     const Int& max_part_order) {
  if (a.order() != b.order()) return std::nullopt;
  const FiniteQuadraticForm da = primary_decomposition(a);
  const FiniteQuadraticForm db = primary_decomposition(b);
  GlueMap map{da, db, IntMatrix(db.size(), da.size())};
  std::size_t row = 0, col = 0;
  for (const auto& p : prime_divisors(a.order())) {
    const FiniteQuadraticForm pa = p_primary_part(a, p);
    const FiniteQuadraticForm pb = p_primary_part(b, p);
    if (pa.invariant_factors() != pb.invariant_factors()) return std::nullopt;
    std::optional<IntMatrix> part;
    if (p != 2) {
      part = odd_isometry(pa, pb, p);
    } else {
      if (pb.order() > max_part_order)
        throw SearchExhausted("p-primary part too large for isometry search");
      PrimarySearch search(pa, pb);
      if (search.census() != PrimarySearch(pb, pa).census()) return std::nullopt;
      part = search.run(50'000'000);
    }
    if (!part) return std::nullopt;
    for (std::size_t i = 0; i < pa.size(); ++i)
      for (std::size_t j = 0; j < pb.size(); ++j) map.images(row + j, col + i) = (*part)(j, i);
    row += pb.size();
    col += pa.size();
  }
  if (!is_homomorphism(map) || !is_bijective(map) || !preserves_values(map, 1))
    throw Error("internal: isometry search produced an invalid map");
  return map;
}

std::optional<GlueMap> find_anti_isometry(const FiniteQuadraticForm& a, const FiniteQuadraticForm& b,
                                          const Int& max_part_order) {
  auto map = find_isometry(a, b.negated(), max_part_order);
  if (!map) return std::nullopt;
  map->target = primary_decomposition(b);
  return map;
}

}  // namespace salem
