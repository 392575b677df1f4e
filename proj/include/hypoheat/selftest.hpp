#pragma once

#include <cstdint>

#include "hypoheat/report.hpp"

namespace hypoheat {

struct SelftestOptions {
  uint64_t seed = 20250810;
  int threads = 0;
  /// Scales the pinned path counts; the default 1.0 is the published suite.
  double path_scale = 1.0;
};

/// Runs the full acceptance suite with pinned seeds and path counts. The
/// returned report serializes to byte-identical JSON for equal (seed, scale)
/// regardless of the thread count.
SuiteReport selftest(const SelftestOptions& options = {});

}  // namespace hypoheat
