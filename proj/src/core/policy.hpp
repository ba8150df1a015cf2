#pragma once

#include "core/oc.hpp"

namespace seqoc {

// The regulator/scientist policy problem: a fixed-sample design with n
// observations versus a stop-at-target design capped at m observations,
// evaluated under the regulator's beliefs and utilities.
struct PolicyProblem {
  BernoulliPair model;
  Beliefs beliefs;
  UtilityTable utilities;
  int n = 0;
  int m = 0;

  static PolicyProblem make(BernoulliPair model, Beliefs beliefs, UtilityTable utilities, int n,
                            int m);
};

enum class DesignChoice { fixed_sample, target_ratio };

inline const char* design_choice_name(DesignChoice c) {
  return c == DesignChoice::fixed_sample ? "fixed" : "target";
}

// Expected-utility-optimal rejection cutoff: prior odds of H0 times the
// ratio of utility gaps — the product P*W.
double optimal_cutoff(const Beliefs& beliefs, const UtilityTable& utilities);

double expected_utility(const OperatingCharacteristics& oc, const Beliefs& beliefs,
                        const UtilityTable& utilities);

// Both designs evaluated at the optimal cutoff: the fixed design rejects at
// PW; the target design stops at boundary PW (cap m) and rejects at PW.
struct DeltaReport {
  double pw = 0;
  double alpha = 0;       // fixed design rejection probability under H0
  double power = 0;       // fixed design rejection probability under Ha
  double reject_t_h0 = 0; // target design rejection probability under H0
  double reject_t_ha = 0; // target design rejection probability under Ha
  double delta0 = 0;      // reject_t_h0 - alpha
  double delta_a = 0;     // reject_t_ha - power
  double epsilon = 0;     // 1/PW - reject_t_h0
  double delta = 0;       // 1 - reject_t_ha
  OperatingCharacteristics oc_fixed;
  OperatingCharacteristics oc_target;
};

// Errors with boundary_unreachable when PW cannot be attained within m steps.
DeltaReport compute_deltas(const PolicyProblem& problem, Engine engine = Engine::auto_select);

struct PolicyDecision {
  double pw = 0;
  double delta0 = 0;
  double delta_a = 0;
  double epsilon = 0;
  double delta = 0;
  double alpha = 0;
  double beta = 0;
  bool penalty_required = false;
  double recommended_lr_f = 0;
  double recommended_lr_t = 0;  // +inf when the target design is disallowed
  DesignChoice predicted_choice = DesignChoice::fixed_sample;
  double eu_fixed = 0;
  double eu_target = 0;
};

// The regulator's resolution: a penalty (stricter target cutoff, up to +inf)
// is required exactly when delta0 * PW > deltaA, equivalently when the fixed
// design has higher expected utility.
PolicyDecision penalty_decision(const PolicyProblem& problem, Engine engine = Engine::auto_select);

struct BestResponse {
  DesignChoice choice = DesignChoice::fixed_sample;
  double approval_probability = 0;
};

// The scientist's design choice facing cutoffs lr_f (fixed, n observations)
// and lr_t (target boundary and cutoff, cap m), maximizing approval
// probability under the belief mixture q*Pr(.|Ha) + (1-q)*Pr(.|H0).
// Whenever lr_t <= lr_f the target design is chosen outright (it rejects on
// every path the fixed design rejects); exact ties in approval probability
// otherwise go to the fixed design.
BestResponse scientist_best_response(const BernoulliPair& model, int n, int m, double lr_f,
                                     double lr_t, double q, Engine engine = Engine::auto_select);

// Half-open interval (lo, hi] of cutoffs producing the same fixed-design
// rejection region as `cutoff` at sample size n; hi is +inf when the region
// is empty, lo is 0 when every outcome rejects.
std::pair<double, double> cutoff_interval(const BernoulliPair& model, int n, double cutoff);

}  // namespace seqoc
