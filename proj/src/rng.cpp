#include "hypoheat/rng.hpp"

#include <cmath>

namespace hypoheat {

namespace {

constexpr uint32_t kMul0 = 0xD2511F53u;
constexpr uint32_t kMul1 = 0xCD9E8D57u;
constexpr uint32_t kWeyl0 = 0x9E3779B9u;
constexpr uint32_t kWeyl1 = 0xBB67AE85u;

inline void philox_round(std::array<uint32_t, 4>& ctr, const std::array<uint32_t, 2>& key) {
  const uint64_t p0 = static_cast<uint64_t>(kMul0) * ctr[0];
  const uint64_t p1 = static_cast<uint64_t>(kMul1) * ctr[2];
  const uint32_t hi0 = static_cast<uint32_t>(p0 >> 32), lo0 = static_cast<uint32_t>(p0);
  const uint32_t hi1 = static_cast<uint32_t>(p1 >> 32), lo1 = static_cast<uint32_t>(p1);
  ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
}

inline double u64_to_unit(uint64_t bits) {
  // 53-bit mantissa in [0, 1).
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

constexpr double kTwoPi = 6.283185307179586476925286766559;

}  // namespace

std::array<uint32_t, 4> philox4x32(std::array<uint32_t, 4> counter, std::array<uint32_t, 2> key) {
  for (int round = 0; round < 10; ++round) {
    philox_round(counter, key);
    key[0] += kWeyl0;
    key[1] += kWeyl1;
  }
  return counter;
}

GaussPair gauss_increment(uint64_t seed, uint64_t path_index, uint64_t step) {
  const std::array<uint32_t, 2> key = {static_cast<uint32_t>(seed),
                                       static_cast<uint32_t>(seed >> 32)};
  const std::array<uint32_t, 4> ctr = {
      static_cast<uint32_t>(step), static_cast<uint32_t>(step >> 32),
      static_cast<uint32_t>(path_index), static_cast<uint32_t>(path_index >> 32)};
  const auto r = philox4x32(ctr, key);
  const uint64_t a = (static_cast<uint64_t>(r[1]) << 32) | r[0];
  const uint64_t b = (static_cast<uint64_t>(r[3]) << 32) | r[2];
  // Box-Muller; u1 in (0, 1] keeps the log finite.
  const double u1 = 1.0 - u64_to_unit(a);
  const double u2 = u64_to_unit(b);
  const double radius = std::sqrt(-2.0 * std::log(u1));
  return {radius * std::cos(kTwoPi * u2), radius * std::sin(kTwoPi * u2)};
}

uint64_t SmallRng::next_u64() {
  const std::array<uint32_t, 2> key = {static_cast<uint32_t>(seed_),
                                       static_cast<uint32_t>(seed_ >> 32)};
  const std::array<uint32_t, 4> ctr = {
      static_cast<uint32_t>(counter_), static_cast<uint32_t>(counter_ >> 32),
      static_cast<uint32_t>(stream_), static_cast<uint32_t>(stream_ >> 32) | 0x80000000u};
  ++counter_;
  const auto r = philox4x32(ctr, key);
  return (static_cast<uint64_t>(r[1]) << 32) | r[0];
}

int64_t SmallRng::uniform_int(int64_t lo, int64_t hi) {
  const uint64_t span = static_cast<uint64_t>(hi - lo + 1);
  return lo + static_cast<int64_t>(next_u64() % span);
}

double SmallRng::uniform01() { return u64_to_unit(next_u64()); }

Rational SmallRng::small_rational() {
  int64_t num = uniform_int(-9, 9);
  if (num == 0) num = 1;
  const int64_t den = uniform_int(1, 4);
  return Rational(num, den);
}

}  // namespace hypoheat
