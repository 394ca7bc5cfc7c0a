#pragma once

#include "opbar/probes.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace opbar {

struct SuiteResult {
  std::string name;
  bool pass = false;
  long long checked = 0;
  std::string detail;  // failure witness or summary
};

/// The semidirect pairs every property suite runs over.
std::vector<std::shared_ptr<const SemidirectOperad>> bundled_pairs();

constexpr std::uint64_t kDefaultSeed = 0x0b5e55ed;

SuiteResult suite_axioms(std::uint64_t seed, int count);       // exhaustive, count ignored
SuiteResult suite_retraction(std::uint64_t seed, int count);   // pi after sigma
SuiteResult suite_homotopy(std::uint64_t seed, int count);     // endpoints + stable tree
SuiteResult suite_morphism(std::uint64_t seed, int count);     // sigma vs degrafting
SuiteResult suite_coassoc(std::uint64_t seed, int count);      // iterated degrafting orders
SuiteResult suite_bijection(std::uint64_t seed, int count);    // marking round trips
SuiteResult suite_arity1(std::uint64_t seed, int count);       // chain/word identification
SuiteResult suite_confluence(std::uint64_t seed, int count);   // shuffled rule orders
SuiteResult suite_continuity(std::uint64_t seed, int k);       // degeneration classes
SuiteResult suite_reduced(std::uint64_t seed, int count);      // image + functor triangles

/// Every suite at acceptance strength, in criterion order.
std::vector<SuiteResult> run_acceptance(std::uint64_t seed = kDefaultSeed);

/// The continuity suite unbundled: one report per probe (degeneration
/// classes per map, vertex crossings, gamma products), for per-record
/// JSON-lines output.
std::vector<ProbeReport> continuity_reports(std::uint64_t seed, int k);

/// One suite by name ("axioms", "retraction", "homotopy", "coassoc",
/// "morphism", "confluence", "continuity", "reduced", "bijection",
/// "arity1"); count <= 0 selects each suite's acceptance default.
SuiteResult run_suite(const std::string& name, std::uint64_t seed, int count);

}  // namespace opbar
