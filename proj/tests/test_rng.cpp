#include <doctest.h>

#include <cmath>

#include "hypoheat/rng.hpp"

using namespace hypoheat;

TEST_SUITE_BEGIN("rng");

TEST_CASE("counter streams are pure functions of (seed, path, step)") {
  const GaussPair a = gauss_increment(42, 7, 1234);
  const GaussPair b = gauss_increment(42, 7, 1234);
  CHECK(a.g1 == b.g1);
  CHECK(a.g2 == b.g2);

  const GaussPair other_path = gauss_increment(42, 8, 1234);
  const GaussPair other_seed = gauss_increment(43, 7, 1234);
  CHECK(a.g1 != other_path.g1);
  CHECK(a.g1 != other_seed.g1);
}

TEST_CASE("marginals match the standard normal at 10^6 draws") {
  const int n = 1000000;
  double sum = 0, sum2 = 0;
  for (int i = 0; i < n / 2; ++i) {
    const GaussPair g = gauss_increment(2024, 0, static_cast<uint64_t>(i));
    sum += g.g1 + g.g2;
    sum2 += g.g1 * g.g1 + g.g2 * g.g2;
  }
  const double mean = sum / n;
  const double var = sum2 / n - mean * mean;
  // 4 sigma bands: mean ~ N(0, 1/n), sample variance ~ N(1, 2/n).
  CHECK(std::abs(mean) < 4.0 / std::sqrt(static_cast<double>(n)));
  CHECK(std::abs(var - 1.0) < 4.0 * std::sqrt(2.0 / n));
}

TEST_CASE("gaussians are finite and nondegenerate") {
  for (uint64_t k = 0; k < 1000; ++k) {
    const GaussPair g = gauss_increment(1, 2, k);
    CHECK(std::isfinite(g.g1));
    CHECK(std::isfinite(g.g2));
  }
}

TEST_CASE("small rng utility streams") {
  SmallRng a(5), b(5), c(5, 1);
  const uint64_t ua = a.next_u64();
  CHECK(ua == b.next_u64());
  CHECK(ua != c.next_u64());

  SmallRng r(9);
  for (int i = 0; i < 200; ++i) {
    const int64_t v = r.uniform_int(-3, 3);
    CHECK(v >= -3);
    CHECK(v <= 3);
    const Rational q = r.small_rational();
    CHECK(q != 0);
  }
}

TEST_SUITE_END();
