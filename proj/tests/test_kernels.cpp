#include <random>

#include "doctest.h"
#include "salem/kernels.hpp"

using namespace salem::kernels;

namespace {

std::vector<SquareHit> run(Backend b, int64_t a, int64_t bb, int64_t c, int64_t lo, int64_t hi) {
  set_backend(b);
  std::vector<SquareHit> out;
  square_scan(a, bb, c, lo, hi, out);
  return out;
}

bool same(const std::vector<SquareHit>& x, const std::vector<SquareHit>& y) {
  if (x.size() != y.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i].t != y[i].t || x[i].root != y[i].root) return false;
  return true;
}

}  // namespace

TEST_CASE("scalar square scan on known quadratics") {
  // t^2 is a square everywhere
  auto hits = run(Backend::scalar, 0, 0, 1, -3, 3);
  CHECK(hits.size() == 7);
  CHECK(hits.front().root == 3);
  // 2 t^2 + 1 : Pell solutions t = 0, 2, 12, 70
  hits = run(Backend::scalar, 1, 0, 2, 0, 100);
  REQUIRE(hits.size() == 4);
  CHECK(hits[1].t == 2);
  CHECK(hits[1].root == 3);
  CHECK(hits[3].t == 70);
  CHECK(hits[3].root == 99);
  CHECK(run(Backend::scalar, -1, 0, -1, -50, 50).empty());
}

TEST_CASE("avx2 square scan matches the scalar reference") {
  if (!avx2_available()) {
    MESSAGE("AVX2 not available, equivalence test skipped");
    return;
  }
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int64_t> coef(-5000, 5000);
  std::uniform_int_distribution<int64_t> start(-300, 300);
  std::uniform_int_distribution<int64_t> len(0, 400);
  int compared = 0;
  for (int trial = 0; trial < 3000; ++trial) {
    const int64_t a = coef(rng) * (trial % 3 == 0 ? 1000 : 1), b = coef(rng), c = coef(rng) / 50;
    const int64_t lo = start(rng), hi = lo + len(rng) - 1;
    if (!square_scan_fits(a, b, c, lo, hi)) continue;
    CHECK(same(run(Backend::scalar, a, b, c, lo, hi), run(Backend::avx2, a, b, c, lo, hi)));
    ++compared;
  }
  CHECK(compared > 2000);
  // perfect squares near the 2^52 limit
  const int64_t big = 60000000;
  CHECK(square_scan_fits(0, 0, 1, big, big + 10));
  CHECK(same(run(Backend::scalar, 0, 0, 1, big, big + 10), run(Backend::avx2, 0, 0, 1, big, big + 10)));
  CHECK(same(run(Backend::scalar, -1, 0, 1, big, big + 10), run(Backend::avx2, -1, 0, 1, big, big + 10)));
  set_backend(avx2_available() ? Backend::avx2 : Backend::scalar);
}

TEST_CASE("fit check rejects overflowing ranges") {
  CHECK(!square_scan_fits(0, 0, 1, 0, int64_t(1) << 30));
  CHECK(!square_scan_fits(int64_t(1) << 53, 0, 0, 0, 1));
  CHECK(square_scan_fits(5, -3, 2, -100, 100));
}
