#include <doctest.h>

#include <cmath>
#include <functional>
#include <limits>

#include "core/policy.hpp"

using namespace seqoc;

namespace {

const BernoulliPair kSevenths = BernoulliPair::from_rationals(Rational(3, 7), Rational(6, 7));
const Beliefs kBeliefs = Beliefs::from_pr_h0(8.0 / 9.0);
const UtilityTable kZeroOne = UtilityTable::make(0, 1, 1, 0);
const double kInf = std::numeric_limits<double>::infinity();

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

TEST_SUITE("policy") {
  TEST_CASE("optimal cutoff is prior odds times the utility-gap ratio") {
    CHECK(optimal_cutoff(kBeliefs, kZeroOne) == doctest::Approx(8.0).epsilon(1e-12));
    // Doubling the type-II gap halves the cutoff.
    const UtilityTable lopsided = UtilityTable::make(0, 1, 2, 0);
    CHECK(optimal_cutoff(kBeliefs, lopsided) == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(optimal_cutoff(Beliefs::from_pr_h0(0.5), kZeroOne) == doctest::Approx(1.0).epsilon(1e-12));
  }

  TEST_CASE("reference decision: n=20 vs m=60 under 8:1 prior odds") {
    const PolicyProblem problem = PolicyProblem::make(kSevenths, kBeliefs, kZeroOne, 20, 60);
    const PolicyDecision d = penalty_decision(problem);

    CHECK(d.pw == doctest::Approx(8.0).epsilon(1e-12));
    CHECK(d.alpha == doctest::Approx(0.0036581568595868879).epsilon(1e-11));
    CHECK(d.beta == doctest::Approx(0.055119427294447298).epsilon(1e-11));
    CHECK(d.delta0 == doctest::Approx(0.12133787185242853).epsilon(1e-11));
    CHECK(d.delta_a == doctest::Approx(0.05508765699057061).epsilon(1e-11));
    CHECK(d.epsilon == doctest::Approx(3.971287984641525e-06).epsilon(1e-6));
    CHECK(d.delta == doctest::Approx(3.1770303876688111e-05).epsilon(1e-8));
    CHECK(d.eu_fixed == doctest::Approx(0.99062392420320633).epsilon(1e-12));
    CHECK(d.eu_target == doctest::Approx(8.0 / 9.0).epsilon(1e-12));

    CHECK(d.penalty_required);
    CHECK(d.recommended_lr_f == doctest::Approx(8.0).epsilon(1e-12));
    CHECK(std::isinf(d.recommended_lr_t));
    CHECK(d.predicted_choice == DesignChoice::fixed_sample);
  }

  TEST_CASE("decision identities hold on a grid of problems") {
    const BernoulliPair models[] = {kSevenths, BernoulliPair::from_doubles(0.3, 0.6),
                                    BernoulliPair::from_doubles(0.2, 0.45)};
    const double priors[] = {0.6, 0.75, 8.0 / 9.0};
    for (const BernoulliPair& model : models) {
      for (double prior : priors) {
        const PolicyProblem problem =
            PolicyProblem::make(model, Beliefs::from_pr_h0(prior), kZeroOne, 8, 24);
        const DeltaReport r = compute_deltas(problem);
        CHECK(r.delta0 == doctest::Approx(r.reject_t_h0 - r.alpha).epsilon(1e-12));
        CHECK(r.delta_a == doctest::Approx(r.reject_t_ha - r.power).epsilon(1e-12));
        CHECK(r.epsilon == doctest::Approx(1.0 / r.pw - r.reject_t_h0).epsilon(1e-12));
        CHECK(r.delta == doctest::Approx(1.0 - r.reject_t_ha).epsilon(1e-12));
        // deltaA = beta - delta, with beta the fixed design's type-II rate.
        CHECK(r.delta_a == doctest::Approx((1.0 - r.power) - r.delta).epsilon(1e-11));
        // The universal bound keeps epsilon nonnegative.
        CHECK(r.epsilon >= -1e-12);
        // The target design rejects a superset of paths at the same cutoff.
        CHECK(r.delta0 >= -1e-12);
        CHECK(r.delta_a >= -1e-12);

        const PolicyDecision d = penalty_decision(problem);
        CHECK(d.penalty_required == (d.delta0 * d.pw > d.delta_a));
        // The penalty condition is the expected-utility comparison in disguise.
        CHECK(d.penalty_required == (d.eu_fixed > d.eu_target));
        CHECK(d.predicted_choice == (d.penalty_required ? DesignChoice::fixed_sample
                                                        : DesignChoice::target_ratio));
      }
    }
  }

  TEST_CASE("the cutoff P*W maximizes the fixed design's expected utility") {
    const BernoulliPair model = BernoulliPair::from_doubles(0.3, 0.6);
    const Beliefs beliefs = Beliefs::from_pr_h0(0.75);
    const int n = 8;
    const double pw = optimal_cutoff(beliefs, kZeroOne);
    const auto eu_at = [&](double cutoff) {
      const auto oc = compute_oc(model, Design{FixedSampleDesign::make(n, cutoff)});
      return expected_utility(oc, beliefs, kZeroOne);
    };
    const double best = eu_at(pw);
    // Sweep cutoffs across the whole attainable range, including both
    // neighbors of every attainable ratio, so each rejection region appears.
    for (int k = 0; k <= n; ++k) {
      const double lr = std::exp(log_lr_of_counts(model, k, n - k));
      for (double cutoff : {lr * 0.999, lr, lr * 1.001}) {
        if (cutoff <= 0) continue;
        CHECK(best >= eu_at(cutoff) - 1e-12);
      }
    }
    CHECK(best >= eu_at(kInf) - 1e-12);
  }

  TEST_CASE("expected utility depends only on the rejection region") {
    const auto [lo, hi] = cutoff_interval(kSevenths, 5, 2.0);
    CHECK(lo == 0.5);
    CHECK(hi == 4.0);
    const auto eu_at = [&](double cutoff) {
      const auto oc = compute_oc(kSevenths, Design{FixedSampleDesign::make(5, cutoff)});
      return expected_utility(oc, kBeliefs, kZeroOne);
    };
    // Any cutoff in (lo, hi] produces the identical region, hence identical EU.
    CHECK(eu_at(2.0) == eu_at(hi));
    CHECK(eu_at(2.0) == eu_at(0.7));
    CHECK(eu_at(2.0) == eu_at(1.0));
    // Just past the interval the region changes.
    CHECK(eu_at(hi * 1.01) != eu_at(2.0));
  }

  TEST_CASE("cutoff_interval edge shapes") {
    // Empty region: every attainable ratio sits below the cutoff.
    auto [lo, hi] = cutoff_interval(kSevenths, 2, 100.0);
    CHECK(lo == 4.0);
    CHECK(std::isinf(hi));
    // Same for an infinite cutoff.
    std::tie(lo, hi) = cutoff_interval(kSevenths, 2, kInf);
    CHECK(lo == 4.0);
    CHECK(std::isinf(hi));
    // Full region: every outcome rejects; the interval starts at zero.
    std::tie(lo, hi) = cutoff_interval(kSevenths, 2, 0.001);
    CHECK(lo == 0.0);
    CHECK(hi == 0.0625);
    CHECK(code_of([] { cutoff_interval(kSevenths, 0, 2.0); }) == ErrorCode::invalid_argument);
    CHECK(code_of([] { cutoff_interval(kSevenths, 5, 0.0); }) == ErrorCode::invalid_argument);
  }

  TEST_CASE("m = n is accepted and the designs still differ") {
    const PolicyProblem problem = PolicyProblem::make(kSevenths, kBeliefs, kZeroOne, 20, 20);
    const PolicyDecision d = penalty_decision(problem);
    // The target design can stop and reject early, so it rejects more often.
    CHECK(d.delta0 > 0.0);
    CHECK(d.delta_a > 0.0);
    CHECK(d.penalty_required == (d.delta0 * d.pw > d.delta_a));

    CHECK(code_of([] {
            PolicyProblem::make(kSevenths, kBeliefs, kZeroOne, 20, 19);
          }) == ErrorCode::invalid_argument);
  }

  TEST_CASE("problem validation") {
    CHECK(code_of([] {
            PolicyProblem::make(BernoulliPair::from_doubles(0.4, 0.4), kBeliefs, kZeroOne, 5, 10);
          }) == ErrorCode::invalid_argument);
    CHECK(code_of([] {
            PolicyProblem::make(kSevenths, kBeliefs, kZeroOne, 0, 10);
          }) == ErrorCode::invalid_argument);
    // P*W <= 1 makes the target boundary degenerate.
    CHECK(code_of([] {
            compute_deltas(PolicyProblem::make(kSevenths, Beliefs::from_pr_h0(0.2), kZeroOne, 5,
                                               10));
          }) == ErrorCode::invalid_argument);
    // P*W beyond the best attainable ratio within m steps.
    CHECK(code_of([] {
            compute_deltas(PolicyProblem::make(kSevenths, Beliefs::from_pr_h0(0.9999999),
                                               kZeroOne, 5, 10));
          }) == ErrorCode::boundary_unreachable);
  }

  TEST_CASE("best response: dominance, maximization, and ties") {
    // lr_t <= lr_f: the target design rejects on every fixed-rejection path.
    const BestResponse dominated = scientist_best_response(kSevenths, 5, 10, 2.0, 2.0, 0.5);
    CHECK(dominated.choice == DesignChoice::target_ratio);
    CHECK(dominated.approval_probability == doctest::Approx(0.74049291837246956).epsilon(1e-12));

    // Infinite target cutoff: approval only through the fixed design.
    const BestResponse fixed_only = scientist_best_response(kSevenths, 5, 10, 2.0, kInf, 0.5);
    CHECK(fixed_only.choice == DesignChoice::fixed_sample);
    CHECK(fixed_only.approval_probability > 0.0);

    // lr_t = 1 approves immediately regardless of the data.
    const BestResponse trivial = scientist_best_response(kSevenths, 5, 10, 2.0, 1.0, 0.5);
    CHECK(trivial.choice == DesignChoice::target_ratio);
    CHECK(trivial.approval_probability == 1.0);

    // n = m = 1 with cutoffs 1.5 < 2: both designs reject exactly on a
    // success, so the probabilities tie and the tie goes to the fixed design.
    const BestResponse tie = scientist_best_response(kSevenths, 1, 1, 1.5, 2.0, 0.5);
    CHECK(tie.choice == DesignChoice::fixed_sample);
    CHECK(tie.approval_probability == doctest::Approx(9.0 / 14.0).epsilon(1e-12));

    // Approval probability is the q-mixture of the rejection probabilities.
    const BestResponse mixed = scientist_best_response(kSevenths, 1, 1, 1.5, 2.0, 1.0);
    CHECK(mixed.approval_probability == doctest::Approx(6.0 / 7.0).epsilon(1e-12));

    CHECK(code_of([] { scientist_best_response(kSevenths, 5, 10, 0.5, 2.0, 0.5); }) ==
          ErrorCode::invalid_argument);
    CHECK(code_of([] { scientist_best_response(kSevenths, 5, 10, 2.0, 2.0, 1.5); }) ==
          ErrorCode::invalid_argument);
    CHECK(code_of([] {
            scientist_best_response(BernoulliPair::from_doubles(0.3, 0.3), 5, 10, 2.0, 2.0, 0.5);
          }) == ErrorCode::invalid_argument);
  }

  TEST_CASE("engines agree on the reference decision") {
    const PolicyProblem problem = PolicyProblem::make(kSevenths, kBeliefs, kZeroOne, 10, 30);
    const PolicyDecision f = penalty_decision(problem, Engine::floating);
    const PolicyDecision x = penalty_decision(problem, Engine::exact);
    CHECK(f.penalty_required == x.penalty_required);
    CHECK(f.eu_fixed == doctest::Approx(x.eu_fixed).epsilon(1e-11));
    CHECK(f.eu_target == doctest::Approx(x.eu_target).epsilon(1e-11));
    CHECK(f.delta0 == doctest::Approx(x.delta0).epsilon(1e-10));
    CHECK(f.delta_a == doctest::Approx(x.delta_a).epsilon(1e-10));
  }
}
