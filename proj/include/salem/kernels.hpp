#pragma once

#include <cstdint>
#include <vector>

namespace salem::kernels {

__extension__ typedef __int128 Int128;

enum class Backend { scalar, avx2 };

bool avx2_available();
// Backend used by the dispatching entry points. Defaults to the best
// available one; tests force a specific backend to compare results.
Backend active_backend();
void set_backend(Backend backend);
const char* backend_name(Backend backend);

struct SquareHit {
  int64_t t;
  int64_t root;  // sqrt(D(t)) >= 0
};

// Preconditions for square_scan: D(t) = a + b t + c t^2 satisfies
// |D(t)| < 2^52 for every t in [lo, hi + 3], and hi - lo < 2^40.
bool square_scan_fits(int64_t a, int64_t b, int64_t c, int64_t lo, int64_t hi);

// Appends every t in [lo, hi] for which D(t) is a perfect square, in
// increasing order of t.
void square_scan(int64_t a, int64_t b, int64_t c, int64_t lo, int64_t hi, std::vector<SquareHit>& out);

namespace detail {
void square_scan_scalar(int64_t a, int64_t b, int64_t c, int64_t lo, int64_t hi, std::vector<SquareHit>& out);
void square_scan_avx2(int64_t a, int64_t b, int64_t c, int64_t lo, int64_t hi, std::vector<SquareHit>& out);
}  // namespace detail

}  // namespace salem::kernels
