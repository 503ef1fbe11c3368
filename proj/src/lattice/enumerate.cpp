#include <algorithm>

#include "salem/kernels.hpp"
#include "salem/lattice.hpp"

namespace salem {

Int value_ideal(const Lattice& lattice) {
  Int g = 0;
  const IntMatrix& a = lattice.gram();
  for (std::size_t i = 0; i < lattice.rank(); ++i) {
    g = gcd(g, a(i, i));
    for (std::size_t j = i + 1; j < lattice.rank(); ++j) g = gcd(g, Int(2 * a(i, j)));
  }
  return g;
}

namespace {

struct Range {
  Int lo, hi;
};

// Integers x with (x - c)^2 <= t.
Range ellipse_range(const Rat& c, const Rat& t) {
  const Int s = isqrt(floor(t));
  Int hi = floor(c) + s + 1;
  while (hi >= ceil(c) - s - 1 && Rat((hi - c) * (hi - c)) > t) --hi;
  Int lo = ceil(c) - s - 1;
  while (lo <= hi && Rat((lo - c) * (lo - c)) > t) ++lo;
  return {lo, hi};
}

bool fits_long(const Int& v) { return v.fits_slong_p(); }

// Fincke-Pohst on a positive definite form, with the last two
// coordinates solved through a perfect-square scan.
class NormEnumerator {
 public:
  NormEnumerator(const IntMatrix& a, const Int& target, std::size_t limit)
      : a_(a), n_(a.rows()), target_(target), limit_(limit), x_(n_) {
    RatMatrix w = to_rat(a);
    d_.resize(n_);
    mu_ = RatMatrix(n_, n_);
    for (std::size_t i = 0; i < n_; ++i) {
      d_[i] = w(i, i);
      for (std::size_t j = i + 1; j < n_; ++j) mu_(i, j) = w(i, j) / d_[i];
      for (std::size_t j = i + 1; j < n_; ++j)
        for (std::size_t k = i + 1; k < n_; ++k) w(j, k) -= d_[i] * mu_(i, j) * mu_(i, k);
    }
  }

  std::vector<IntVector> run() {
    if (n_ == 1) {
      const Int& a00 = a_(0, 0);
      if (target_ % a00 == 0 && is_square(Int(target_ / a00))) {
        const Int r = isqrt(Int(target_ / a00));
        out_.push_back({Int(-r)});
        if (r != 0) out_.push_back({r});
      }
    } else {
      descend(n_ - 1, Rat(target_));
    }
    std::sort(out_.begin(), out_.end());
    out_.erase(std::unique(out_.begin(), out_.end()), out_.end());
    return out_;
  }

 private:
  Rat center(std::size_t i) const {
    Rat c = 0;
    for (std::size_t j = i + 1; j < n_; ++j) c -= mu_(i, j) * x_[j];
    return c;
  }

  void descend(std::size_t level, const Rat& budget) {
    const Rat c = center(level);
    const Range r = ellipse_range(c, budget / d_[level]);
    if (level == 1) {
      solve_last_two(r);
      return;
    }
    for (Int v = r.lo; v <= r.hi; ++v) {
      x_[level] = v;
      const Rat diff = v - c;
      descend(level - 1, budget - d_[level] * diff * diff);
    }
    x_[level] = 0;
  }

  void record(const Int& x0, const Int& x1) {
    x_[0] = x0;
    x_[1] = x1;
    out_.push_back(x_);
    if (out_.size() > limit_) throw SearchExhausted("vector enumeration exceeded its result limit");
  }

  // With z = (x_2, ...) fixed, x.x = T becomes a quadratic in x_0 whose
  // discriminant is a quadratic in x_1.
  void solve_last_two(const Range& r1) {
    Int u0 = 0, u1 = 0, w = 0;
    for (std::size_t j = 2; j < n_; ++j) {
      u0 += a_(0, j) * x_[j];
      u1 += a_(1, j) * x_[j];
      for (std::size_t k = 2; k < n_; ++k) w += x_[j] * a_(j, k) * x_[k];
    }
    const Int& a00 = a_(0, 0);
    const Int& a01 = a_(0, 1);
    const Int c2 = a01 * a01 - a00 * a_(1, 1);
    const Int c1 = 2 * (a01 * u0 - a00 * u1);
    const Int c0 = u0 * u0 - a00 * (w - target_);
    auto emit = [&](const Int& x1, const Int& s) {
      const Int beta = a01 * x1 + u0;
      for (int sgn : {1, -1}) {
        if (sgn == -1 && s == 0) break;
        const Int num = -beta + sgn * s;
        if (num % a00 == 0) record(num / a00, x1);
      }
    };
    if (fits_long(c0) && fits_long(c1) && fits_long(c2) && fits_long(r1.lo) && fits_long(r1.hi) &&
        kernels::square_scan_fits(c0.get_si(), c1.get_si(), c2.get_si(), r1.lo.get_si(), r1.hi.get_si())) {
      hits_.clear();
      kernels::square_scan(c0.get_si(), c1.get_si(), c2.get_si(), r1.lo.get_si(), r1.hi.get_si(), hits_);
      for (const auto& h : hits_) emit(Int(static_cast<long>(h.t)), Int(static_cast<long>(h.root)));
      return;
    }
    for (Int x1 = r1.lo; x1 <= r1.hi; ++x1) {
      const Int disc = c0 + c1 * x1 + c2 * x1 * x1;
      if (disc >= 0 && is_square(disc)) emit(x1, isqrt(disc));
    }
  }

  const IntMatrix& a_;
  std::size_t n_;
  Int target_;
  std::size_t limit_;
  IntVector x_;
  RatVector d_;
  RatMatrix mu_;
  std::vector<IntVector> out_;
  std::vector<kernels::SquareHit> hits_;
};

}  // namespace

std::vector<IntVector> enumerate_vectors_of_norm(const Lattice& lattice, const Int& m, std::size_t limit) {
  const std::size_t n = lattice.rank();
  if (m == 0) return {IntVector(n)};
  if (n == 0) return {};
  if (m % value_ideal(lattice) != 0) return {};
  const Signature sig = lattice.signature();
  if (sig.positive != 0 && sig.negative != 0) throw PreconditionError("vector enumeration needs a definite lattice");
  const bool negative = sig.negative != 0;
  const Int target = negative ? Int(-m) : m;
  if (target < 0) return {};
  const IntMatrix a = negative ? IntMatrix(-lattice.gram()) : lattice.gram();
  return NormEnumerator(a, target, limit).run();
}

}  // namespace salem
