#include <doctest.h>

#include <cmath>

#include "core/likelihood.hpp"

using namespace seqoc;

namespace {

// 3/7 vs 6/7: the ratio doubles on success and quarters on failure, exactly.
const BernoulliPair kSevenths = BernoulliPair::from_rationals(Rational(3, 7), Rational(6, 7));

}  // namespace

TEST_SUITE("likelihood") {
  TEST_CASE("exact models give exact plain-ratio steps") {
    CHECK(lr_step_ratio(Outcome::success, kSevenths) == 2.0);
    CHECK(lr_step_ratio(Outcome::failure, kSevenths) == 0.25);
  }

  TEST_CASE("log steps agree with the ratio steps") {
    CHECK(log_lr_step(Outcome::success, kSevenths) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
    CHECK(log_lr_step(Outcome::failure, kSevenths) == doctest::Approx(std::log(0.25)).epsilon(1e-15));

    const BernoulliPair m = BernoulliPair::from_doubles(0.3, 0.6);
    CHECK(std::exp(log_lr_step(Outcome::success, m)) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(std::exp(log_lr_step(Outcome::failure, m)) == doctest::Approx(4.0 / 7.0).epsilon(1e-12));
  }

  TEST_CASE("counts and sequences accumulate the same log ratio") {
    const double by_counts = log_lr_of_counts(kSevenths, 3, 2);
    const OutcomeSequence seq{Outcome::success, Outcome::failure, Outcome::success,
                              Outcome::success, Outcome::failure};
    CHECK(log_lr_of_sequence(seq, kSevenths) == doctest::Approx(by_counts).epsilon(1e-14));
    // 3 successes and 2 failures: 2^3 * (1/4)^2 = 1/2.
    CHECK(std::exp(by_counts) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(log_lr_of_counts(kSevenths, 0, 0) == 0.0);
  }

  TEST_CASE("boundary comparisons tolerate 1e-9 of log-space noise") {
    const double t = std::log(8.0);
    CHECK(log_reaches(t, t));
    CHECK(log_reaches(t - 0.5e-9, t));
    CHECK(log_reaches(t + 1.0, t));
    CHECK_FALSE(log_reaches(t - 2e-9, t));
  }

  TEST_CASE("posterior odds scale the prior odds by the likelihood ratio") {
    const Beliefs beliefs = Beliefs::from_pr_h0(8.0 / 9.0);
    // Prior odds Ha:H0 of 1/8; a likelihood ratio of 8 lifts them to 1.
    CHECK(posterior_odds_ha(beliefs, std::log(8.0)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(posterior_odds_ha(beliefs, 0.0) == doctest::Approx(1.0 / 8.0).epsilon(1e-12));

    const Beliefs even = Beliefs::from_pr_h0(0.5);
    CHECK(posterior_odds_ha(even, std::log(3.0)) == doctest::Approx(3.0).epsilon(1e-12));
  }

  TEST_CASE("outcome_probability multiplies per-outcome masses") {
    const OutcomeSequence seq{Outcome::success, Outcome::failure};
    CHECK(outcome_probability(seq, Hypothesis::h0, kSevenths) ==
          doctest::Approx(12.0 / 49.0).epsilon(1e-14));
    CHECK(outcome_probability(seq, Hypothesis::ha, kSevenths) ==
          doctest::Approx(6.0 / 49.0).epsilon(1e-14));
    CHECK(outcome_probability(OutcomeSequence{}, Hypothesis::h0, kSevenths) == 1.0);
  }

  TEST_CASE("model validation rejects probabilities outside (0, 1)") {
    CHECK_THROWS_AS(BernoulliPair::from_doubles(0.0, 0.5), Error);
    CHECK_THROWS_AS(BernoulliPair::from_doubles(0.5, 1.0), Error);
    CHECK_THROWS_AS(BernoulliPair::from_rationals(Rational(1), Rational(1, 2)), Error);
    // p0 == pa is legal for likelihood arithmetic: the ratio is constantly 1.
    const BernoulliPair flat = BernoulliPair::from_doubles(0.4, 0.4);
    CHECK(log_lr_step(Outcome::success, flat) == 0.0);
  }

  TEST_CASE("beliefs and utilities validate their shape") {
    CHECK_THROWS_AS(Beliefs::from_pr_h0(0.0), Error);
    CHECK_THROWS_AS(Beliefs::from_pr_h0(1.0), Error);
    CHECK_THROWS_AS(Beliefs::from_pair(0.6, 0.5), Error);
    CHECK(Beliefs::from_pair(0.6, 0.4).prior_odds_h0() == doctest::Approx(1.5).epsilon(1e-12));

    CHECK_THROWS_AS(UtilityTable::make(1, 1, 1, 0), Error);  // no type-I gap
    CHECK_THROWS_AS(UtilityTable::make(0, 1, 1, 1), Error);  // no type-II gap
    const UtilityTable u = UtilityTable::make(-2, 3, 4, 1);
    CHECK(u.gap_h0() == 5.0);
    CHECK(u.gap_ha() == 3.0);
  }
}
