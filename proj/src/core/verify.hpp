#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace seqoc {

struct VerifyOptions {
  std::uint64_t mc_reps = 1'000'000;  // replications for the Monte Carlo cross-checks
  std::uint64_t seed = 1;             // seed for the Monte Carlo cross-checks
  std::string inject_fault;           // known id: "wrong-sign-deltaA" (breaks check c4)
  std::string only;                   // run just the check with this id when nonempty
};

struct CheckResult {
  std::string id;      // stable identifier, "c1".."c10"
  std::string name;
  bool passed = false;
  std::string detail;  // observed vs expected values, exclusions, timings
  double elapsed_ms = 0;
};

// Runs the full verification suite (or the single check selected by
// options.only).  Never throws for check failures — those are reported in the
// results; configuration mistakes (unknown fault id / unknown check id) do throw.
std::vector<CheckResult> run_acceptance_suite(const VerifyOptions& options);

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace seqoc
