#include <doctest.h>

#include <functional>
#include <set>

#include "core/verify.hpp"
#include "core/types.hpp"

using namespace seqoc;

namespace {

// Small Monte Carlo budget: the sampling checks compare against sigma-scaled
// bands, so they stay valid (just wider) at reduced replication counts.
VerifyOptions quick() {
  VerifyOptions options;
  options.mc_reps = 40'000;
  options.seed = 1;
  return options;
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::internal;
}

}  // namespace

TEST_SUITE("verification suite") {
  TEST_CASE("all ten checks pass at a reduced Monte Carlo budget") {
    const auto results = run_acceptance_suite(quick());
    REQUIRE(results.size() == 10);
    std::set<std::string> ids;
    for (const auto& r : results) {
      ids.insert(r.id);
      CHECK_MESSAGE(r.passed, r.id, ": ", r.detail);
      CHECK_FALSE(r.name.empty());
      CHECK(r.elapsed_ms >= 0.0);
    }
    CHECK(ids == std::set<std::string>{"c1", "c2", "c3", "c4", "c5", "c6", "c7", "c8", "c9",
                                       "c10"});
    CHECK(all_passed(results));
  }

  TEST_CASE("a planted sign error is caught by exactly one check") {
    VerifyOptions options = quick();
    options.inject_fault = "wrong-sign-deltaA";
    const auto results = run_acceptance_suite(options);
    REQUIRE(results.size() == 10);
    CHECK_FALSE(all_passed(results));
    for (const auto& r : results) {
      if (r.id == "c4") {
        CHECK_FALSE(r.passed);
      } else {
        CHECK_MESSAGE(r.passed, r.id, ": ", r.detail);
      }
    }
  }

  TEST_CASE("a single check can be selected by id") {
    VerifyOptions options = quick();
    options.only = "c1";
    const auto results = run_acceptance_suite(options);
    REQUIRE(results.size() == 1);
    CHECK(results[0].id == "c1");
    CHECK(results[0].passed);
  }

  TEST_CASE("unknown ids are configuration errors, not failures") {
    CHECK(code_of([] {
            VerifyOptions options = quick();
            options.only = "c99";
            run_acceptance_suite(options);
          }) == ErrorCode::invalid_argument);
    CHECK(code_of([] {
            VerifyOptions options = quick();
            options.inject_fault = "no-such-fault";
            run_acceptance_suite(options);
          }) == ErrorCode::invalid_argument);
  }
}
