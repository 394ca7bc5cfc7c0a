// Acceptance gate: every criterion at full strength, one line each.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "opbar/suites.hpp"

#include <cstdio>

using namespace opbar;

TEST_CASE("acceptance criteria") {
  const char* blurb[10] = {
      "retraction identity over each bundled pair",
      "homotopy endpoints and stable-tree preservation",
      "degrafting commutes with sigma",
      "iterated degrafting orders agree",
      "marking bijection round trips",
      "arity-1 identification commutes with normalization",
      "semidirect axioms, exhaustive on arities 0..4",
      "confluence under shuffled rule orders",
      "continuity probes and gamma products",
      "reduced image and functor triangles",
  };
  std::vector<SuiteResult> results = run_acceptance(kDefaultSeed);
  REQUIRE(results.size() == 10);
  for (std::size_t i = 0; i < results.size(); ++i) {
    const SuiteResult& r = results[i];
    std::printf("[%s] criterion %zu (%s): %s — %s\n", r.pass ? "PASS" : "FAIL", i + 1, blurb[i],
                r.name.c_str(), r.detail.c_str());
    std::fflush(stdout);
    INFO("criterion ", i + 1, ": ", r.name, ": ", r.detail);
    CHECK(r.pass);
  }
}
