#include <algorithm>

#include "salem/polyarith.hpp"

namespace salem {
namespace {

// Scale by a positive rational so the result is a primitive integer polynomial.
IntPolynomial positive_primitive(const RatPolynomial& p) {
  if (p.is_zero()) return {};
  Int den = 1;
  for (const Rat& v : p.coeffs()) den = lcm(den, v.get_den());
  IntVector c(p.coeffs().size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = Rat(p.coeffs()[i] * den).get_num();
  IntPolynomial q(std::move(c));
  const Int g = content(q);
  IntVector out = q.coeffs();
  for (auto& v : out) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
  return IntPolynomial(std::move(out));
}

}  // namespace

Int resultant(const IntPolynomial& p, const IntPolynomial& q) {
  if (p.is_zero() || q.is_zero()) throw PreconditionError("resultant of a zero polynomial");
  RatPolynomial a = to_rat(p);
  RatPolynomial b = to_rat(q);
  Rat acc = 1;
  while (true) {
    const int m = a.degree();
    const int n = b.degree();
    if (n == 0) {
      Rat lc = b.leading();
      for (int i = 0; i < m; ++i) acc *= lc;
      break;
    }
    if (m == 0) {
      Rat lc = a.leading();
      for (int i = 0; i < n; ++i) acc *= lc;
      break;
    }
    RatPolynomial r = a % b;
    if (r.is_zero()) return 0;
    const int k = r.degree();
    if ((static_cast<long>(m) * n) % 2 == 1) acc = -acc;
    const Rat lc = b.leading();
    for (int i = 0; i < m - k; ++i) acc *= lc;
    a = std::move(b);
    b = std::move(r);
  }
  if (!is_integer(acc)) throw Error("internal: non-integral resultant");
  return acc.get_num();
}

Int discriminant(const IntPolynomial& p) {
  if (p.is_zero() || p.degree() < 1) throw PreconditionError("discriminant needs degree >= 1");
  if (!p.is_monic()) throw PreconditionError("discriminant is only defined here for monic polynomials");
  const long d = p.degree();
  if (d == 1) return 1;
  Int r = resultant(p, p.derivative());
  if ((d * (d - 1) / 2) % 2 == 1) r = -r;
  return r;
}

int sign_at(const IntPolynomial& p, const Rat& x) {
  if (p.is_zero()) return 0;
  const Int& n = x.get_num();
  const Int& d = x.get_den();
  Int acc = p.leading();
  Int dpow = 1;
  for (int i = p.degree() - 1; i >= 0; --i) {
    dpow *= d;
    acc = acc * n + p.coeffs()[i] * dpow;
  }
  return sign(acc);
}

IntPolynomial squarefree_part(const IntPolynomial& p) {
  if (p.degree() <= 0) return primitive_part(p);
  const IntPolynomial g = gcd(p, p.derivative());
  return primitive_part(exact_quotient(primitive_part(p), g));
}

SturmSequence::SturmSequence(const IntPolynomial& p) {
  if (p.is_zero()) throw PreconditionError("Sturm sequence of the zero polynomial");
  IntPolynomial a = squarefree_part(p);
  if (p.leading() < 0) a = -a;
  seq_.push_back(a);
  if (a.degree() <= 0) return;
  seq_.push_back(positive_primitive(to_rat(a.derivative())));
  while (true) {
    const RatPolynomial r = to_rat(seq_[seq_.size() - 2]) % to_rat(seq_.back());
    if (r.is_zero()) break;
    seq_.push_back(positive_primitive(-r));
  }
}

int SturmSequence::variations_at(const Rat& x) const {
  int prev = 0, v = 0;
  for (const auto& f : seq_) {
    const int s = sign_at(f, x);
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++v;
    prev = s;
  }
  return v;
}

int SturmSequence::variations_at_infinity(int direction) const {
  int prev = 0, v = 0;
  for (const auto& f : seq_) {
    int s = sign(f.leading());
    if (direction < 0 && f.degree() % 2 == 1) s = -s;
    if (prev != 0 && s != prev) ++v;
    prev = s;
  }
  return v;
}

int SturmSequence::count(const Rat& a, const Rat& b) const {
  if (b < a) return 0;
  return variations_at(a) - variations_at(b);
}

int SturmSequence::count_above(const Rat& a) const { return variations_at(a) - variations_at_infinity(1); }
int SturmSequence::count_at_most(const Rat& b) const { return variations_at_infinity(-1) - variations_at(b); }
int SturmSequence::count_all() const { return variations_at_infinity(-1) - variations_at_infinity(1); }

Rat root_bound(const IntPolynomial& p) {
  if (p.degree() < 1) return 1;
  Rat m = 0;
  const Int lc = abs(p.leading());
  for (int i = 0; i < p.degree(); ++i) {
    const Rat v = make_rat(abs(p.coeffs()[i]), lc);
    if (v > m) m = v;
  }
  return 1 + m;
}

RootIsolation isolate_real_roots(const IntPolynomial& p) {
  if (p.is_zero()) throw PreconditionError("root isolation of the zero polynomial");
  RootIsolation out;
  const IntPolynomial q = squarefree_part(p);
  out.multiplicity_free = (q.degree() == p.degree());
  if (q.degree() < 1) return out;
  const SturmSequence sturm(q);
  const Rat bound = root_bound(q);
  struct Task {
    Rat lo, hi;
    int n;
  };
  // depth-first, left to right, so output is sorted
  std::vector<Task> stack{{-bound, bound, sturm.count(-bound, bound)}};
  while (!stack.empty()) {
    Task t = stack.back();
    stack.pop_back();
    if (t.n == 0) continue;
    if (t.n == -1) {
      // exact rational root found at a bisection point
      out.intervals.push_back({t.lo, t.hi});
      continue;
    }
    if (t.n == 1) {
      // move endpoints off neighbouring exact roots
      while (t.lo != t.hi && (sign_at(q, t.lo) == 0 || sign_at(q, t.hi) == 0)) {
        const Rat mid = (t.lo + t.hi) / 2;
        if (sign_at(q, mid) == 0) {
          t.lo = t.hi = mid;
        } else if (sturm.count(t.lo, mid) == 1) {
          t.hi = mid;
        } else {
          t.lo = mid;
        }
      }
      out.intervals.push_back({t.lo, t.hi});
      continue;
    }
    const Rat mid = (t.lo + t.hi) / 2;
    const bool hit = sign_at(q, mid) == 0;
    const int left = sturm.count(t.lo, mid) - (hit ? 1 : 0);
    const int right = t.n - left - (hit ? 1 : 0);
    stack.push_back({mid, t.hi, right});
    if (hit) stack.push_back({mid, mid, -1});
    stack.push_back({t.lo, mid, left});
  }
  // neighbours may share a (non-root) endpoint; shrink until disjoint
  auto halve = [&](Interval& iv) {
    if (iv.lo == iv.hi) return;
    const Rat mid = (iv.lo + iv.hi) / 2;
    const int s = sign_at(q, mid);
    if (s == 0) iv.lo = iv.hi = mid;
    else if (s == sign_at(q, iv.lo)) iv.lo = mid;
    else iv.hi = mid;
  };
  for (std::size_t i = 0; i + 1 < out.intervals.size(); ++i) {
    while (out.intervals[i].hi >= out.intervals[i + 1].lo) {
      halve(out.intervals[i]);
      if (out.intervals[i].hi >= out.intervals[i + 1].lo) halve(out.intervals[i + 1]);
    }
  }
  return out;
}

Interval refine_root(const IntPolynomial& p, Interval iv, const Rat& eps) {
  if (iv.lo == iv.hi) return iv;
  const IntPolynomial q = squarefree_part(p);
  int slo = sign_at(q, iv.lo);
  if (slo == 0) return {iv.lo, iv.lo};
  if (sign_at(q, iv.hi) == 0) return {iv.hi, iv.hi};
  while (iv.width() > eps) {
    const Rat mid = (iv.lo + iv.hi) / 2;
    const int s = sign_at(q, mid);
    if (s == 0) return {mid, mid};
    if (s == slo) iv.lo = mid;
    else iv.hi = mid;
  }
  return iv;
}

}  // namespace salem
