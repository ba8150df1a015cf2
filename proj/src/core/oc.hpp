#pragma once

#include <map>
#include <vector>

#include "core/design.hpp"
#include "core/types.hpp"

namespace seqoc {

// Compensated (Kahan) summation for probability-mass aggregation.
class KahanSum {
 public:
  void add(double x) {
    const double y = x - c_;
    const double t = sum_ + y;
    c_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

 private:
  double sum_ = 0;
  double c_ = 0;
};

// Operating characteristics under one hypothesis.
struct OcSide {
  double pr_reject = 0;
  double expected_n = 0;
  double pr_hit = 0;  // target designs only; 0 for fixed designs
  // Overshoot distribution conditional on hitting the boundary, sorted by
  // overshoot value; empty when pr_hit == 0.
  std::vector<std::pair<double, double>> overshoot_dist;

  // Conditional mean overshoot; nullopt when the boundary is never hit.
  std::optional<double> expected_overshoot() const;
};

struct OperatingCharacteristics {
  OcSide h0;
  OcSide ha;
  bool exact = false;  // true when produced by the rational engine

  const OcSide& side(Hypothesis h) const { return h == Hypothesis::h0 ? h0 : ha; }
};

enum class Engine { auto_select, floating, exact };

// Horizon bound for the exact rational engine.
inline constexpr int kExactHorizonCap = 64;

// Largest attainable log likelihood ratio within `steps` observations.
double max_log_lr(const BernoulliPair& model, int steps);

bool boundary_reachable(const BernoulliPair& model, double boundary, int steps);

OperatingCharacteristics oc_fixed(const BernoulliPair& model, const FixedSampleDesign& design);
OperatingCharacteristics oc_target(const BernoulliPair& model, const TargetRatioDesign& design);

// Dispatches on design kind and engine choice.  auto_select uses the exact
// rational engine when the model carries declared exact probabilities and the
// horizon fits under kExactHorizonCap, the floating DP otherwise.
OperatingCharacteristics compute_oc(const BernoulliPair& model, const Design& design,
                                    Engine engine = Engine::auto_select);

// Mean overshoot over the boundary, conditional on hitting it within `cap`
// observations.  Errors with boundary_unreachable when no path can hit.
double expected_overshoot(const BernoulliPair& model, double boundary, int cap, Hypothesis hyp,
                          Engine engine = Engine::auto_select);

// Shortfall of the H0 rejection probability below the universal bound 1/c,
// and the Ha non-rejection probability, both for the target design with
// rejection cutoff equal to the boundary c.
double epsilon_of(const BernoulliPair& model, double boundary, int cap,
                  Engine engine = Engine::auto_select);
double delta_of(const BernoulliPair& model, double boundary, int cap,
                Engine engine = Engine::auto_select);

}  // namespace seqoc
