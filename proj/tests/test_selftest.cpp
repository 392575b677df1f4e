#include <doctest.h>

#include "hypoheat/selftest.hpp"

using namespace hypoheat;

TEST_SUITE_BEGIN("selftest");

TEST_CASE("scaled suite passes and changing the seed only changes the numbers") {
  SelftestOptions a;
  a.seed = 111;
  a.threads = 4;
  a.path_scale = 0.02;
  const SuiteReport ra = selftest(a);
  CHECK(ra.checks.size() == 10);
  CHECK(ra.overall_pass());

  SelftestOptions b = a;
  b.seed = 222;
  const SuiteReport rb = selftest(b);
  CHECK(rb.overall_pass());
  // Different master seed: different Monte Carlo values, same verdicts.
  CHECK(ra.to_json() != rb.to_json());

  const SuiteReport ra2 = selftest(a);
  CHECK(ra.to_json() == ra2.to_json());
}

TEST_SUITE_END();
