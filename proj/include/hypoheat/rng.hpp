#pragma once

#include <array>
#include <cstdint>

#include "hypoheat/rational.hpp"

namespace hypoheat {

/// Philox4x32-10 counter block cipher. Counter-based streams make every
/// Gaussian increment a pure function of (seed, path, step), so paths are
/// reproducible under any parallel schedule.
std::array<uint32_t, 4> philox4x32(std::array<uint32_t, 4> counter, std::array<uint32_t, 2> key);

struct GaussPair {
  double g1, g2;
};

/// Independent N(0,1) pair for a given (seed, path, step) triple.
GaussPair gauss_increment(uint64_t seed, uint64_t path_index, uint64_t step);

/// Sequential convenience generator on top of the same counter cipher, used
/// for seeded test data (random polynomials, random words).
class SmallRng {
 public:
  explicit SmallRng(uint64_t seed, uint64_t stream = 0) : seed_(seed), stream_(stream) {}

  uint64_t next_u64();
  /// Uniform integer in [lo, hi] inclusive.
  int64_t uniform_int(int64_t lo, int64_t hi);
  double uniform01();
  /// Nonzero rational with numerator in [-9, 9] and denominator in {1,..,4}.
  Rational small_rational();

 private:
  uint64_t seed_;
  uint64_t stream_;
  uint64_t counter_ = 0;
};

}  // namespace hypoheat
