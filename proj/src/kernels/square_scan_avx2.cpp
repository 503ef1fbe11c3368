// Compiled with -mavx2; only reached after a runtime CPU check.
#include <immintrin.h>

#include "salem/kernels.hpp"

namespace salem::kernels::detail {

void square_scan_avx2(int64_t a, int64_t b, int64_t c, int64_t lo, int64_t hi, std::vector<SquareHit>& out) {
  if (hi < lo) return;
  // lanes hold D(t), D(t+1), D(t+2), D(t+3) and their 4-step differences
  auto d_at = [&](int64_t t) { return a + b * t + c * t * t; };
  auto step4 = [&](int64_t t) { return 4 * b + c * (8 * t + 16); };
  __m256i val = _mm256_setr_epi64x(d_at(lo), d_at(lo + 1), d_at(lo + 2), d_at(lo + 3));
  __m256i diff = _mm256_setr_epi64x(step4(lo), step4(lo + 1), step4(lo + 2), step4(lo + 3));
  const __m256i diff2 = _mm256_set1_epi64x(32 * c);
  const __m256i magic_i = _mm256_set1_epi64x(0x4330000000000000LL);
  const __m256d magic_d = _mm256_set1_pd(4503599627370496.0);  // 2^52
  const __m256i minus_one = _mm256_set1_epi64x(-1);
  for (int64_t t = lo; t <= hi; t += 4) {
    const __m256i nonneg = _mm256_cmpgt_epi64(val, minus_one);
    // exact int64 -> double for 0 <= D < 2^52
    const __m256i clamped = _mm256_and_si256(val, nonneg);
    const __m256d dv = _mm256_sub_pd(_mm256_castsi256_pd(_mm256_or_si256(clamped, magic_i)), magic_d);
    const __m256d root_d = _mm256_round_pd(_mm256_sqrt_pd(dv), _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    const __m256i root = _mm256_sub_epi64(_mm256_castpd_si256(_mm256_add_pd(root_d, magic_d)), magic_i);
    const __m256i square = _mm256_mul_epu32(root, root);
    const __m256i hit = _mm256_and_si256(_mm256_cmpeq_epi64(square, val), nonneg);
    int mask = _mm256_movemask_pd(_mm256_castsi256_pd(hit));
    if (mask != 0) {
      alignas(32) int64_t roots[4];
      _mm256_store_si256(reinterpret_cast<__m256i*>(roots), root);
      for (int k = 0; k < 4; ++k)
        if ((mask >> k) & 1) {
          if (t + k > hi) break;
          out.push_back({t + k, roots[k]});
        }
    }
    val = _mm256_add_epi64(val, diff);
    diff = _mm256_add_epi64(diff, diff2);
  }
}

}  // namespace salem::kernels::detail
