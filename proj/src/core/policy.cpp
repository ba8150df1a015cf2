#include "core/policy.hpp"

#include <cmath>
#include <limits>

namespace seqoc {

PolicyProblem PolicyProblem::make(BernoulliPair model, Beliefs beliefs, UtilityTable utilities,
                                  int n, int m) {
  if (model.p0 == model.pa) {
    fail(ErrorCode::invalid_argument, "the policy problem requires p0 != pa");
  }
  if (n < 1) fail(ErrorCode::invalid_argument, "fixed-design sample size n must be at least 1");
  // m > n is the intended regime; m == n is accepted (the designs still
  // differ: the target design may stop and reject before the cap).
  if (m < n) {
    fail(ErrorCode::invalid_argument, "target-design cap m must be at least n, got m = " +
                                          std::to_string(m) + " < n = " + std::to_string(n));
  }
  return PolicyProblem{std::move(model), beliefs, utilities, n, m};
}

double optimal_cutoff(const Beliefs& beliefs, const UtilityTable& utilities) {
  return beliefs.prior_odds_h0() * (utilities.gap_h0() / utilities.gap_ha());
}

double expected_utility(const OperatingCharacteristics& oc, const Beliefs& beliefs,
                        const UtilityTable& utilities) {
  const double reject_h0 = oc.h0.pr_reject;
  const double reject_ha = oc.ha.pr_reject;
  return beliefs.pr_h0 * (reject_h0 * utilities.u_type1 +
                          (1.0 - reject_h0) * utilities.u_correct_nonrej) +
         beliefs.pr_ha *
             (reject_ha * utilities.u_correct_rej + (1.0 - reject_ha) * utilities.u_type2);
}

DeltaReport compute_deltas(const PolicyProblem& problem, Engine engine) {
  DeltaReport report;
  report.pw = optimal_cutoff(problem.beliefs, problem.utilities);
  if (!(report.pw > 1.0)) {
    fail(ErrorCode::invalid_argument,
         "optimal cutoff P*W = " + format_double(report.pw) +
             " is not above 1; the target boundary would be degenerate");
  }
  if (!boundary_reachable(problem.model, report.pw, problem.m)) {
    fail(ErrorCode::boundary_unreachable,
         "optimal cutoff P*W = " + format_double(report.pw) + " cannot be attained within " +
             std::to_string(problem.m) + " observations");
  }

  const Design fixed{FixedSampleDesign::make(problem.n, report.pw)};
  const Design target{TargetRatioDesign::make(report.pw, problem.m, report.pw)};
  report.oc_fixed = compute_oc(problem.model, fixed, engine);
  report.oc_target = compute_oc(problem.model, target, engine);

  report.alpha = report.oc_fixed.h0.pr_reject;
  report.power = report.oc_fixed.ha.pr_reject;
  report.reject_t_h0 = report.oc_target.h0.pr_reject;
  report.reject_t_ha = report.oc_target.ha.pr_reject;
  report.delta0 = report.reject_t_h0 - report.alpha;
  report.delta_a = report.reject_t_ha - report.power;
  report.epsilon = 1.0 / report.pw - report.reject_t_h0;
  report.delta = 1.0 - report.reject_t_ha;
  return report;
}

PolicyDecision penalty_decision(const PolicyProblem& problem, Engine engine) {
  const DeltaReport report = compute_deltas(problem, engine);

  PolicyDecision decision;
  decision.pw = report.pw;
  decision.delta0 = report.delta0;
  decision.delta_a = report.delta_a;
  decision.epsilon = report.epsilon;
  decision.delta = report.delta;
  decision.alpha = report.alpha;
  decision.beta = 1.0 - report.power;
  decision.eu_fixed = expected_utility(report.oc_fixed, problem.beliefs, problem.utilities);
  decision.eu_target = expected_utility(report.oc_target, problem.beliefs, problem.utilities);

  decision.penalty_required = report.delta0 * report.pw > report.delta_a;
  decision.recommended_lr_f = report.pw;
  if (decision.penalty_required) {
    // Only an unusable target cutoff removes the scientist's incentive to
    // stop on the boundary, so the recommendation disallows the design.
    decision.recommended_lr_t = std::numeric_limits<double>::infinity();
    decision.predicted_choice = DesignChoice::fixed_sample;
  } else {
    decision.recommended_lr_t = report.pw;
    decision.predicted_choice = DesignChoice::target_ratio;
  }
  return decision;
}

namespace {

double approval_probability(const OperatingCharacteristics& oc, double q) {
  return q * oc.ha.pr_reject + (1.0 - q) * oc.h0.pr_reject;
}

}  // namespace

BestResponse scientist_best_response(const BernoulliPair& model, int n, int m, double lr_f,
                                     double lr_t, double q, Engine engine) {
  if (model.p0 == model.pa) {
    fail(ErrorCode::invalid_argument, "the best response requires p0 != pa");
  }
  if (n < 1 || m < 1) fail(ErrorCode::invalid_argument, "n and m must be at least 1");
  if (!(q >= 0.0 && q <= 1.0)) {
    fail(ErrorCode::invalid_argument, "the scientist's belief q must lie in [0, 1]");
  }
  if (std::isnan(lr_f) || lr_f < 1.0) {
    fail(ErrorCode::invalid_argument, "fixed-design cutoff must be >= 1 or +inf");
  }
  if (std::isnan(lr_t) || lr_t < 1.0) {
    fail(ErrorCode::invalid_argument, "target-design cutoff must be >= 1 or +inf");
  }

  double p_fixed = 0.0;
  if (!std::isinf(lr_f)) {
    const OperatingCharacteristics oc =
        compute_oc(model, Design{FixedSampleDesign::make(n, lr_f)}, engine);
    p_fixed = approval_probability(oc, q);
  }

  double p_target = 0.0;
  if (std::isinf(lr_t)) {
    p_target = 0.0;  // unattainable cutoff: the target design can never approve
  } else if (lr_t == 1.0) {
    p_target = 1.0;  // the ratio starts at 1, so the first observation already suffices
  } else {
    const OperatingCharacteristics oc =
        compute_oc(model, Design{TargetRatioDesign::make(lr_t, m, lr_t)}, engine);
    p_target = approval_probability(oc, q);
  }

  // Pathwise dominance: at lr_t <= lr_f every fixed-design approval path is
  // also a target-design approval path, so the target is chosen for every q.
  // This takes precedence over the tie rule below (which favors the fixed
  // design when approval probabilities are exactly equal).
  if (lr_t <= lr_f) return BestResponse{DesignChoice::target_ratio, p_target};
  if (p_target > p_fixed) return BestResponse{DesignChoice::target_ratio, p_target};
  return BestResponse{DesignChoice::fixed_sample, p_fixed};
}

std::pair<double, double> cutoff_interval(const BernoulliPair& model, int n, double cutoff) {
  if (n < 1) fail(ErrorCode::invalid_argument, "sample size must be at least 1");
  if (std::isnan(cutoff) || cutoff <= 0.0) {
    fail(ErrorCode::invalid_argument, "cutoff must be positive or +inf");
  }
  const double log_cutoff = std::log(cutoff);
  const std::optional<ExactModel> exact =
      model.has_exact() ? std::optional<ExactModel>(exact_model_of(model)) : std::nullopt;
  // Attainable likelihood-ratio values at sample size n, one per success count.
  double lo = 0.0;
  double hi = std::numeric_limits<double>::infinity();
  for (int k = 0; k <= n; ++k) {
    const double log_lr = log_lr_of_counts(model, k, n - k);
    // Exact models yield cleanly rounded endpoints instead of exp/log fuzz.
    const double lr = exact ? rational_to_double(rat_pow(exact->pa / exact->p0, k) *
                                                 rat_pow((1 - exact->pa) / (1 - exact->p0), n - k))
                            : std::exp(log_lr);
    if (std::isinf(cutoff) || !log_reaches(log_lr, log_cutoff)) {
      lo = std::max(lo, lr);  // below the region: cutoffs must stay above it
    } else {
      hi = std::min(hi, lr);  // in the region: cutoffs up to here keep it in
    }
  }
  return {lo, hi};
}

}  // namespace seqoc
