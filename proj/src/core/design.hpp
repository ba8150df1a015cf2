#pragma once

#include <variant>

#include "core/likelihood.hpp"
#include "core/types.hpp"

namespace seqoc {

// Fixed-sample design: observe exactly n outcomes, then reject H0 iff the
// final likelihood ratio is >= rejection_cutoff (plain-ratio scale; +inf
// means "never reject").
struct FixedSampleDesign {
  int n = 0;
  double rejection_cutoff = 0;
  std::optional<Rational> cutoff_exact;  // carried for the exact engine

  static FixedSampleDesign make(int n, double rejection_cutoff,
                                std::optional<Rational> cutoff_exact = std::nullopt);
};

// Target-ratio design: observe outcomes one at a time, stopping as soon as
// the likelihood ratio reaches `boundary` (> 1) or `cap` observations have
// been seen.  On stop, reject H0 iff the final ratio is >= rejection_cutoff.
// The interesting special cases are rejection_cutoff == boundary (reject
// exactly when the boundary was hit) and +inf (never reject).
struct TargetRatioDesign {
  double boundary = 0;
  int cap = 0;
  double rejection_cutoff = 0;
  std::optional<Rational> boundary_exact;
  std::optional<Rational> cutoff_exact;

  static TargetRatioDesign make(double boundary, int cap, double rejection_cutoff,
                                std::optional<Rational> boundary_exact = std::nullopt,
                                std::optional<Rational> cutoff_exact = std::nullopt);
};

using Design = std::variant<FixedSampleDesign, TargetRatioDesign>;

int design_horizon(const Design& design);

// Result of running a design over a concrete outcome sequence.
struct Trajectory {
  int stop_index = 0;        // number of outcomes consumed
  double final_log_lr = 0;   // log likelihood ratio at the stopping point
  bool hit_boundary = false; // target designs only: stopped because LR reached the boundary
  double overshoot = 0;      // exp(final_log_lr) - boundary when hit_boundary, else 0
  bool rejected = false;     // final decision against H0
};

// Consumes outcomes from `seq` until the design stops.  The sequence must be
// long enough to reach a stopping point (SequenceTooShort otherwise); extra
// trailing outcomes are ignored.
Trajectory run_trajectory(const OutcomeSequence& seq, const Design& design,
                          const BernoulliPair& model);

// Probability of observing exactly `seq` under the selected hypothesis,
// where `seq` must be a complete stopped path of the design: the design must
// stop at its final element and not before (InvalidStop otherwise).
double sequence_probability(const OutcomeSequence& seq, Hypothesis hyp,
                            const BernoulliPair& model, const Design& design);

}  // namespace seqoc
