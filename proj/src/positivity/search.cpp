#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numeric>
#include <set>

#include "salem/kernels.hpp"
#include "salem/polyarith.hpp"
#include "salem/positivity.hpp"

namespace salem {
namespace {

using Complex = std::complex<long double>;
using DMatrix = std::vector<std::vector<long double>>;

long double to_ld(const Rat& r) { return static_cast<long double>(r.get_d()); }

// Solves a x = b by Gaussian elimination with partial pivoting.
std::vector<Complex> solve_complex(std::vector<std::vector<Complex>> a, std::vector<Complex> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    std::swap(a[col], a[piv]);
    std::swap(b[col], b[piv]);
    if (std::abs(a[col][col]) == 0) throw Error("singular shifted matrix in eigenvector refinement");
    for (std::size_t r = col + 1; r < n; ++r) {
      const Complex m = a[r][col] / a[col][col];
      if (m == Complex(0)) continue;
      for (std::size_t c = col; c < n; ++c) a[r][c] -= m * a[col][c];
      b[r] -= m * b[col];
    }
  }
  std::vector<Complex> x(n);
  for (std::size_t i = n; i-- > 0;) {
    Complex acc = b[i];
    for (std::size_t c = i + 1; c < n; ++c) acc -= a[i][c] * x[c];
    x[i] = acc / a[i][i];
  }
  return x;
}

// Eigenvector of F for a simple eigenvalue alpha by shifted inverse iteration.
std::vector<Complex> eigenvector(const DMatrix& f, Complex alpha) {
  const std::size_t n = f.size();
  const Complex shift = alpha + Complex(1e-11L * (1 + std::abs(alpha)), 3e-12L);
  std::vector<std::vector<Complex>> a(n, std::vector<Complex>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = Complex(f[i][j]) - (i == j ? shift : Complex(0));
  std::vector<Complex> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = Complex(1.0L + 0.37L * static_cast<long double>(i), 0.11L * static_cast<long double>(i % 3));
  for (int it = 0; it < 4; ++it) {
    x = solve_complex(a, x);
    long double norm = 0;
    for (const auto& v : x) norm = std::max(norm, std::abs(v));
    for (auto& v : x) v /= norm;
  }
  return x;
}

Complex pairing(const DMatrix& g, const std::vector<Complex>& x, const std::vector<Complex>& y) {
  Complex acc = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) acc += x[i] * Complex(g[i][j]) * y[j];
  return acc;
}

// Half-widths of an integer box containing, for every geodesic-crossing
// root orbit, the representative with |x1| <= |x2| < lambda^2 |x1|.
std::vector<long> fundamental_box(const Isometry& f, const SalemCertificate& cert, double inflation) {
  const std::size_t n = f.lattice().rank();
  const IntMatrix fi = f.integral_matrix();
  DMatrix fm(n, std::vector<long double>(n)), gm(n, std::vector<long double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      fm[i][j] = static_cast<long double>(fi(i, j).get_d());
      gm[i][j] = static_cast<long double>(f.lattice().gram()(i, j).get_d());
    }
  const IntPolynomial& tp = cert.trace_polynomial;
  const RootIsolation iso = isolate_real_roots(tp);
  const Rat eps = make_rat(Int(1), pow(Int(10), 30));
  std::vector<long double> taus;
  for (const auto& iv : iso.intervals) {
    const Interval fine = refine_root(tp, iv, eps);
    taus.push_back(to_ld(Rat((fine.lo + fine.hi) / 2)));
  }
  std::sort(taus.begin(), taus.end());
  const long double tau = taus.back();
  const long double lambda = (tau + std::sqrt(tau * tau - 4)) / 2;
  auto u1 = eigenvector(fm, Complex(lambda));
  auto u2 = eigenvector(fm, Complex(1 / lambda));
  for (auto& v : u1) v = Complex(v.real());
  for (auto& v : u2) v = Complex(v.real());
  const Complex c12 = pairing(gm, u1, u2);
  if (std::abs(c12) < 1e-30L) throw Error("eigenvectors of lambda and 1/lambda are orthogonal");
  for (auto& v : u2) v /= c12;
  std::vector<long double> bound(n, 0);
  for (std::size_t j = 0; j < n; ++j) bound[j] = std::abs(u1[j]) + lambda * std::abs(u2[j]);
  std::vector<long double> spread(n, 0);
  for (std::size_t k = 0; k + 1 < taus.size(); ++k) {
    const long double t = taus[k];
    if (std::abs(t) >= 2) throw PreconditionError("trace polynomial has a second root outside [-2, 2]");
    const Complex alpha(t / 2, std::sqrt(4 - t * t) / 2);
    auto v = eigenvector(fm, alpha);
    std::vector<Complex> vb(n);
    for (std::size_t i = 0; i < n; ++i) vb[i] = std::conj(v[i]);
    const long double h = pairing(gm, v, vb).real();
    if (!(h < 0)) throw PreconditionError("lattice is not hyperbolic along the unit-circle eigenspaces");
    const long double scale = 1 / std::sqrt(-h);
    for (std::size_t j = 0; j < n; ++j) spread[j] += std::norm(v[j] * scale);
  }
  std::vector<long> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    const long double b = (bound[j] + 2 * std::sqrt(spread[j])) * static_cast<long double>(inflation) + 1e-6L;
    if (!(b < 1e12L)) throw SearchExhausted("root search box is unbounded");
    out[j] = static_cast<long>(std::floor(b));
  }
  return out;
}

// pi(r)^2 = P(tau) / r'(tau) with P(y) = sum_j c_j(y) <w^j r, r>, where
// r(y) / (y - tau) = sum_j c_j(tau) y^j and w = f + f^-1.
class GeodesicSign {
 public:
  GeodesicSign(const Isometry& f, const SalemCertificate& cert) : tp_(cert.trace_polynomial), tau_(cert.trace_root) {
    const auto inv = to_int(f.inverse());
    if (!inv) throw PreconditionError("isometry is not integral");
    const IntMatrix w = f.integral_matrix() + *inv;
    const int m = tp_.degree();
    IntMatrix power = IntMatrix::identity(f.lattice().rank());
    for (int j = 0; j < m; ++j) {
      gw_.push_back(f.lattice().gram() * power);
      power = w * power;
    }
    coeff_.assign(static_cast<std::size_t>(m), IntPolynomial{});
    if (m < 1) throw PreconditionError("trace polynomial is constant");
    coeff_[m - 1] = IntPolynomial{tp_.coeff(static_cast<std::size_t>(m))};
    const IntPolynomial tau{0, 1};
    for (int j = m - 1; j > 0; --j) coeff_[j - 1] = IntPolynomial{tp_.coeff(static_cast<std::size_t>(j))} + tau * coeff_[j];
  }

  int sign(const IntVector& r) {
    IntPolynomial p;
    for (std::size_t j = 0; j < gw_.size(); ++j) p = p + dot(r, IntVector(gw_[j] * r)) * coeff_[j];
    if (p.degree() < 0) return 0;
    if (p.degree() == 0) return p.coeff(0) > 0 ? 1 : -1;
    Interval iv = tau_;
    const SturmSequence sturm(p);
    for (int it = 0; it < 400; ++it) {
      const int sl = sign_at(p, iv.lo);
      if (sl != 0 && sturm.count(iv.lo, iv.hi) == 0) {
        tau_ = iv;  // keep the refinement for later calls
        return sl;
      }
      iv = refine_root(tp_, iv, Rat(iv.width() / 16));
    }
    throw Error("interval refinement failed to separate the geodesic norm from zero");
  }

 private:
  IntPolynomial tp_;
  Interval tau_;
  std::vector<IntMatrix> gw_;
  std::vector<IntPolynomial> coeff_;
};

using kernels::Int128;
__extension__ typedef unsigned __int128 UInt128;

bool fits64(const Int128& v) { return v >= INT64_MIN && v <= INT64_MAX; }

// Integer vectors x in the box with x.x = -2, solving the last two
// coordinates through the discriminant of a binary quadratic.
class RootBoxSearch {
 public:
  RootBoxSearch(const IntMatrix& gram, std::vector<long> box) : n_(gram.rows()), box_(std::move(box)) {
    perm_.resize(n_);
    std::iota(perm_.begin(), perm_.end(), 0);
    // put a coordinate with non-zero diagonal last when one exists
    for (std::size_t j = n_; j-- > 0;)
      if (gram(j, j) != 0) {
        std::swap(perm_[j], perm_[n_ - 1]);
        break;
      }
    g_.assign(n_ * n_, 0);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) {
        const Int& v = gram(perm_[i], perm_[j]);
        if (!v.fits_slong_p() || abs(v) > (Int(1) << 40)) throw SearchExhausted("Gram entries too large for root search");
        g_[i * n_ + j] = v.get_si();
      }
    pbox_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) pbox_[i] = box_[perm_[i]];
  }

  std::vector<IntVector> run(long max_volume) {
    long double volume = 1;
    for (std::size_t i = 0; i + 2 < n_; ++i) volume *= static_cast<long double>(2 * pbox_[i] + 1);
    if (volume > static_cast<long double>(max_volume)) throw SearchExhausted("root search box exceeds the volume cap");
    std::vector<long> x(n_, 0);
    const std::size_t pre = n_ >= 2 ? n_ - 2 : 0;
    for (std::size_t i = 0; i < pre; ++i) x[i] = -pbox_[i];
    while (true) {
      solve_tail(x);
      std::size_t i = 0;
      for (; i < pre; ++i) {
        if (++x[i] <= pbox_[i]) break;
        x[i] = -pbox_[i];
      }
      if (i == pre) break;
    }
    std::sort(out_.begin(), out_.end());
    out_.erase(std::unique(out_.begin(), out_.end()), out_.end());
    return out_;
  }

 private:
  long g(std::size_t i, std::size_t j) const { return g_[i * n_ + j]; }

  void emit(const std::vector<long>& x) {
    IntVector r(n_);
    for (std::size_t i = 0; i < n_; ++i) r[perm_[i]] = x[i];
    out_.push_back(r);
  }

  void solve_tail(std::vector<long>& x) {
    if (n_ == 1) {
      if (g(0, 0) != 0 && -2 % g(0, 0) == 0) {
        const long q = -2 / g(0, 0);
        const long s = std::lround(std::sqrt(static_cast<double>(q)));
        if (q >= 0 && s * s == q && s <= pbox_[0])
          for (long v : {s, -s}) {
            x[0] = v;
            emit(x);
          }
      }
      return;
    }
    const std::size_t a = n_ - 2, b = n_ - 1;
    Int128 gamma0 = 0, beta_a = 0, beta_b = 0;
    for (std::size_t i = 0; i < a; ++i) {
      if (x[i] == 0) continue;
      for (std::size_t j = 0; j < a; ++j) gamma0 += static_cast<Int128>(g(i, j)) * x[i] * x[j];
      beta_a += static_cast<Int128>(g(a, i)) * x[i];
      beta_b += static_cast<Int128>(g(b, i)) * x[i];
    }
    const long gaa = g(a, a), gab = g(a, b), c = g(b, b);
    const long za = pbox_[a], tb = pbox_[b];
    if (c == 0) {
      for (long z = -za; z <= za; ++z) {
        const Int128 lin = 2 * (beta_b + static_cast<Int128>(gab) * z);
        const Int128 rhs = -(gamma0 + 2 + 2 * beta_a * z + static_cast<Int128>(gaa) * z * z);
        x[a] = z;
        if (lin == 0) {
          if (rhs == 0)
            for (long t = -tb; t <= tb; ++t) {
              x[b] = t;
              emit(x);
            }
        } else if (rhs % lin == 0) {
          const Int128 t = rhs / lin;
          if (t >= -tb && t <= tb) {
            x[b] = static_cast<long>(t);
            emit(x);
          }
        }
      }
      return;
    }
    // c t^2 + 2 (beta_b + gab z) t + (gamma0 + 2 beta_a z + gaa z^2 + 2) = 0
    const Int128 d0 = beta_b * beta_b - static_cast<Int128>(c) * (gamma0 + 2);
    const Int128 d1 = 2 * (beta_b * gab - static_cast<Int128>(c) * beta_a);
    const Int128 d2 = static_cast<Int128>(gab) * gab - static_cast<Int128>(c) * gaa;
    hits_.clear();
    if (fits64(d0) && fits64(d1) && fits64(d2) &&
        kernels::square_scan_fits(static_cast<int64_t>(d0), static_cast<int64_t>(d1), static_cast<int64_t>(d2), -za, za)) {
      kernels::square_scan(static_cast<int64_t>(d0), static_cast<int64_t>(d1), static_cast<int64_t>(d2), -za, za, hits_);
    } else {
      for (long z = -za; z <= za; ++z) {
        const Int disc = to_int128(d0) + to_int128(d1) * z + to_int128(d2) * z * z;
        if (disc < 0 || !is_square(disc)) continue;
        const Int root = isqrt(disc);
        if (!root.fits_slong_p()) continue;
        hits_.push_back({z, root.get_si()});
      }
    }
    for (const auto& h : hits_) {
      const Int128 base = -(beta_b + static_cast<Int128>(gab) * h.t);
      x[a] = h.t;
      for (int sgn : {1, -1}) {
        if (sgn == -1 && h.root == 0) break;
        const Int128 num = base + sgn * static_cast<Int128>(h.root);
        if (num % c != 0) continue;
        const Int128 t = num / c;
        if (t < -tb || t > tb) continue;
        x[b] = static_cast<long>(t);
        emit(x);
      }
    }
  }

  static Int to_int128(Int128 v) {
    const bool neg = v < 0;
    const auto u = static_cast<UInt128>(neg ? -v : v);
    Int out(static_cast<unsigned long>(u >> 64));
    out <<= 64;
    out += static_cast<unsigned long>(u & 0xffffffffffffffffULL);
    return neg ? Int(-out) : out;
  }

  std::size_t n_;
  std::vector<long> box_, pbox_;
  std::vector<std::size_t> perm_;
  std::vector<long> g_;
  std::vector<kernels::SquareHit> hits_;
  std::vector<IntVector> out_;
};

// Groups witnesses into f-orbits (within cap steps) and keeps the
// lexicographically smallest member of each.
std::vector<IntVector> orbit_representatives(const std::vector<IntVector>& roots, const IntMatrix& f,
                                             const IntMatrix& finv, std::size_t cap) {
  std::map<IntVector, std::size_t> index;
  for (std::size_t i = 0; i < roots.size(); ++i) index[roots[i]] = i;
  std::vector<std::size_t> parent(roots.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < roots.size(); ++i)
    for (const IntMatrix* m : {&f, &finv}) {
      IntVector cur = roots[i];
      for (std::size_t k = 0; k < cap; ++k) {
        cur = *m * cur;
        const auto it = index.find(cur);
        if (it != index.end()) parent[find(it->second)] = find(i);
      }
    }
  std::map<std::size_t, IntVector> best;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    const std::size_t r = find(i);
    auto it = best.find(r);
    if (it == best.end() || roots[i] < it->second) best[r] = roots[i];
  }
  std::vector<IntVector> out;
  for (auto& [r, v] : best) out.push_back(v);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

int geodesic_norm_sign(const Isometry& f, const IntVector& r) {
  GeodesicSign sign(f, require_salem(integral_charpoly(f.matrix())));
  return sign.sign(r);
}

ObstructionReport obstructing_root_search(const Isometry& f, const SearchOptions& options) {
  const Lattice& l = f.lattice();
  if (l.signature().positive != 1) throw PreconditionError("root search needs a hyperbolic lattice");
  const IntPolynomial s = integral_charpoly(f.matrix());
  const SalemCheck check = is_salem(s);
  if (!check.accepted())
    throw PreconditionError("characteristic polynomial is not an irreducible Salem polynomial (" +
                            to_string(check.reason) + ")");
  const SalemCertificate& cert = *check.certificate;
  const IntMatrix fm = f.integral_matrix();
  const IntMatrix finv = *to_int(f.inverse());
  ObstructionReport report;
  report.method = PositivityMethod::exhaustive_search;
  report.lattice_determinant = l.determinant();
  report.salem_discriminant = discriminant(s);
  const std::vector<long> box = fundamental_box(f, cert, options.inflation);
  for (long b : box) report.box.emplace_back(b);
  if (Int(2) % value_ideal(l) != 0) {
    report.status = PositivityStatus::positive;
    report.notes.push_back("no roots: every norm is a multiple of " + to_string(value_ideal(l)));
    return report;
  }
  RootBoxSearch search(l.gram(), box);
  std::vector<IntVector> crossing;
  GeodesicSign sign(f, cert);
  for (const auto& r : search.run(options.max_box_volume)) {
    if (bilinear(l.gram(), r, r) != -2) throw Error("internal: root search produced a non-root");
    if (sign.sign(r) < 0) crossing.push_back(r);
  }
  report.candidates = crossing.size();
  const std::vector<IntVector> reps =
      options.reduce_orbits ? orbit_representatives(crossing, fm, finv, 10 * l.rank()) : crossing;
  for (const auto& r : reps) report.witnesses.push_back({r, WitnessKind::geodesic_crossing});
  report.status = report.witnesses.empty() ? PositivityStatus::positive : PositivityStatus::not_positive;
  return report;
}

}  // namespace salem
