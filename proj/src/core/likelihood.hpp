#pragma once

#include "core/types.hpp"

namespace seqoc {

// All likelihood-ratio state is carried in log space; conversion to plain
// ratios happens only at API edges.  Boundary comparisons share one tolerance:
// a log ratio within 1e-9 of the log boundary counts as having reached it.
inline constexpr double kLogBoundaryTol = 1e-9;

inline bool log_reaches(double log_lr, double log_threshold) {
  return log_lr >= log_threshold - kLogBoundaryTol;
}

// Log likelihood-ratio contribution of one observation (Ha over H0).
double log_lr_step(Outcome outcome, const BernoulliPair& model);

// Plain-ratio step, for callers that want the edge conversion done for them.
// Uses the declared exact rationals when the model carries them, so e.g. a
// failure under 3/7 vs 6/7 yields exactly 0.25.
double lr_step_ratio(Outcome outcome, const BernoulliPair& model);

// Log likelihood ratio after `successes` successes and `failures` failures.
double log_lr_of_counts(const BernoulliPair& model, std::int64_t successes, std::int64_t failures);

double log_lr_of_sequence(const OutcomeSequence& seq, const BernoulliPair& model);

// Posterior odds Ha:H0 given prior beliefs and an observed log likelihood ratio.
double posterior_odds_ha(const Beliefs& beliefs, double log_lr);

// Probability of observing exactly `seq` under the selected hypothesis.
double outcome_probability(const OutcomeSequence& seq, Hypothesis hyp, const BernoulliPair& model);

}  // namespace seqoc
