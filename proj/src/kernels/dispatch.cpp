#include <atomic>
#include <cmath>

#include "salem/kernels.hpp"

namespace salem::kernels {
namespace {

Backend detect() { return avx2_available() ? Backend::avx2 : Backend::scalar; }

std::atomic<Backend>& current() {
  static std::atomic<Backend> backend{detect()};
  return backend;
}

Int128 eval128(int64_t a, int64_t b, int64_t c, Int128 t) {
  return static_cast<Int128>(a) + static_cast<Int128>(b) * t + static_cast<Int128>(c) * t * t;
}

Int128 abs128(Int128 v) { return v < 0 ? -v : v; }

}  // namespace

bool avx2_available() {
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Backend active_backend() { return current().load(); }

void set_backend(Backend backend) {
  if (backend == Backend::avx2 && !avx2_available()) backend = Backend::scalar;
  current().store(backend);
}

const char* backend_name(Backend backend) { return backend == Backend::avx2 ? "avx2" : "scalar"; }

bool square_scan_fits(int64_t a, int64_t b, int64_t c, int64_t lo, int64_t hi) {
  if (hi < lo) return true;
  const Int128 span = static_cast<Int128>(hi) - lo;
  if (span >= (static_cast<Int128>(1) << 40)) return false;
  const Int128 limit = static_cast<Int128>(1) << 52;
  // |b|, |c| small enough that t-products stay well inside 128 bits
  if (abs128(b) >= limit || abs128(c) >= limit) return false;
  const Int128 end = static_cast<Int128>(hi) + 3;
  if (abs128(lo) >= limit || abs128(end) >= limit) return false;
  // the extremes of a quadratic on an interval are at the ends or the vertex
  Int128 worst = std::max(abs128(eval128(a, b, c, lo)), abs128(eval128(a, b, c, end)));
  if (c != 0) {
    const Int128 v = -static_cast<Int128>(b) / (2 * static_cast<Int128>(c));
    for (Int128 t = v - 1; t <= v + 1; ++t)
      if (t >= lo && t <= end) worst = std::max(worst, abs128(eval128(a, b, c, t)));
  }
  return worst < limit;
}

void square_scan(int64_t a, int64_t b, int64_t c, int64_t lo, int64_t hi, std::vector<SquareHit>& out) {
  if (active_backend() == Backend::avx2) {
    detail::square_scan_avx2(a, b, c, lo, hi, out);
  } else {
    detail::square_scan_scalar(a, b, c, lo, hi, out);
  }
}

namespace detail {

void square_scan_scalar(int64_t a, int64_t b, int64_t c, int64_t lo, int64_t hi, std::vector<SquareHit>& out) {
  for (int64_t t = lo; t <= hi; ++t) {
    const int64_t d = a + b * t + c * t * t;
    if (d < 0) continue;
    int64_t r = static_cast<int64_t>(std::sqrt(static_cast<double>(d)));
    while (r > 0 && r * r > d) --r;
    while ((r + 1) * (r + 1) <= d) ++r;
    if (r * r == d) out.push_back({t, r});
  }
}

}  // namespace detail
}  // namespace salem::kernels
