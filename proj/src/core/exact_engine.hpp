#pragma once

#include "core/oc.hpp"

namespace seqoc {

// Operating characteristics computed in exact rational arithmetic.  Usable
// whenever the design horizon is at most kExactHorizonCap; works from the
// model's declared rational probabilities when present, otherwise from the
// exact dyadic values of its doubles.
struct ExactOcSide {
  Rational pr_reject{0};
  Rational expected_n{0};
  Rational pr_hit{0};
  // Conditional on hitting the boundary, sorted by overshoot value.
  std::vector<std::pair<Rational, Rational>> overshoot_dist;

  std::optional<Rational> expected_overshoot() const;
};

struct ExactOc {
  ExactOcSide h0;
  ExactOcSide ha;

  const ExactOcSide& side(Hypothesis h) const { return h == Hypothesis::h0 ? h0 : ha; }
};

ExactOc exact_oc_fixed(const BernoulliPair& model, const FixedSampleDesign& design);
ExactOc exact_oc_target(const BernoulliPair& model, const TargetRatioDesign& design);
ExactOc exact_oc(const BernoulliPair& model, const Design& design);

OperatingCharacteristics to_floating(const ExactOc& oc);

}  // namespace seqoc
