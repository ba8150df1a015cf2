#include "core/oc.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "core/exact_engine.hpp"

namespace seqoc {

std::optional<double> OcSide::expected_overshoot() const {
  if (pr_hit <= 0.0 || overshoot_dist.empty()) return std::nullopt;
  KahanSum mean;
  for (const auto& [value, prob] : overshoot_dist) mean.add(value * prob);
  return mean.value();
}

double max_log_lr(const BernoulliPair& model, int steps) {
  const double ls = log_lr_step(Outcome::success, model);
  const double lf = log_lr_step(Outcome::failure, model);
  return steps * std::max(ls, lf);
}

bool boundary_reachable(const BernoulliPair& model, double boundary, int steps) {
  return log_reaches(max_log_lr(model, steps), std::log(boundary));
}

namespace {

void require_distinct(const BernoulliPair& model) {
  if (model.p0 == model.pa) {
    fail(ErrorCode::invalid_argument,
         "boundary-crossing computations require p0 != pa, got both = " +
             format_double(model.p0));
  }
}

// Overshoot keys quantized in plain-ratio scale so exact boundary hits all
// land in the zero bin despite floating-point noise.
constexpr double kOvershootQuantum = 1e-9;

std::int64_t quantize_overshoot(double overshoot) {
  const double clamped = std::clamp(overshoot, 0.0, 9e17);
  return std::llround(clamped / kOvershootQuantum);
}

// One hypothesis of the fixed design: the rejection region in the
// success-count space is {k : LR(n,k) >= cutoff}; mass via binomial pmf
// evaluated in log space.
OcSide fixed_side(const BernoulliPair& model, const FixedSampleDesign& design, double p) {
  OcSide side;
  side.expected_n = design.n;
  if (std::isinf(design.rejection_cutoff)) return side;  // empty rejection region
  const double log_cutoff = std::log(design.rejection_cutoff);
  const double log_p = std::log(p);
  const double log_q = std::log1p(-p);
  const double lgn = std::lgamma(design.n + 1.0);
  KahanSum reject;
  for (int k = 0; k <= design.n; ++k) {
    if (!log_reaches(log_lr_of_counts(model, k, design.n - k), log_cutoff)) continue;
    const double log_pmf = lgn - std::lgamma(k + 1.0) - std::lgamma(design.n - k + 1.0) +
                           k * log_p + (design.n - k) * log_q;
    reject.add(std::exp(log_pmf));
  }
  side.pr_reject = std::min(1.0, reject.value());
  return side;
}

// One hypothesis of the target design: forward DP over (step, success-count)
// states.  States whose log LR reaches the boundary are absorbed as hits the
// step they first do; mass still alive after `cap` steps stops there.
OcSide target_side(const BernoulliPair& model, const TargetRatioDesign& design, double p) {
  const double ls = log_lr_step(Outcome::success, model);
  const double lf = log_lr_step(Outcome::failure, model);
  const double log_c = std::log(design.boundary);
  const bool never_reject = std::isinf(design.rejection_cutoff);
  const double log_cut = never_reject ? 0.0 : std::log(design.rejection_cutoff);

  std::vector<double> alive{1.0};  // mass over k at the current step
  KahanSum reject, hit, n_weighted, absorbed_total;
  std::map<std::int64_t, double> overshoot_mass;

  for (int t = 1; t <= design.cap; ++t) {
    std::vector<double> next(t + 1, 0.0);
    for (int k = 0; k < t; ++k) {
      const double w = alive[k];
      if (w == 0.0) continue;
      next[k] += w * (1.0 - p);
      next[k + 1] += w * p;
    }
    for (int k = 0; k <= t; ++k) {
      const double w = next[k];
      if (w == 0.0) continue;
      const double log_lr = k * ls + (t - k) * lf;
      if (!log_reaches(log_lr, log_c)) continue;
      // Boundary hit: absorb this state's mass.
      hit.add(w);
      absorbed_total.add(w);
      n_weighted.add(w * t);
      overshoot_mass[quantize_overshoot(std::exp(log_lr) - design.boundary)] += w;
      if (!never_reject && log_reaches(log_lr, log_cut)) reject.add(w);
      next[k] = 0.0;
    }
    alive = std::move(next);
  }

  KahanSum terminal_total;
  for (int k = 0; k <= design.cap; ++k) {
    const double w = alive[k];
    if (w == 0.0) continue;
    terminal_total.add(w);
    n_weighted.add(w * design.cap);
    if (!never_reject && log_reaches(k * ls + (design.cap - k) * lf, log_cut)) reject.add(w);
  }

  const double total = absorbed_total.value() + terminal_total.value();
  if (std::fabs(total - 1.0) > 1e-12) {
    fail(ErrorCode::internal,
         "probability mass not conserved in DP: total = " + format_double(total));
  }

  OcSide side;
  side.pr_reject = std::min(1.0, reject.value());
  side.pr_hit = std::min(1.0, hit.value());
  side.expected_n = n_weighted.value();
  if (side.pr_hit > 0.0) {
    side.overshoot_dist.reserve(overshoot_mass.size());
    for (const auto& [key, mass] : overshoot_mass) {
      side.overshoot_dist.emplace_back(key * kOvershootQuantum, mass / side.pr_hit);
    }
  }
  return side;
}

}  // namespace

OperatingCharacteristics oc_fixed(const BernoulliPair& model, const FixedSampleDesign& design) {
  return OperatingCharacteristics{fixed_side(model, design, model.p0),
                                  fixed_side(model, design, model.pa), false};
}

OperatingCharacteristics oc_target(const BernoulliPair& model, const TargetRatioDesign& design) {
  require_distinct(model);
  return OperatingCharacteristics{target_side(model, design, model.p0),
                                  target_side(model, design, model.pa), false};
}

OperatingCharacteristics compute_oc(const BernoulliPair& model, const Design& design,
                                    Engine engine) {
  if (engine == Engine::auto_select) {
    engine = model.has_exact() && design_horizon(design) <= kExactHorizonCap ? Engine::exact
                                                                             : Engine::floating;
  }
  if (engine == Engine::exact) return to_floating(exact_oc(model, design));
  return std::visit(
      [&](const auto& d) {
        if constexpr (std::is_same_v<std::decay_t<decltype(d)>, FixedSampleDesign>) {
          return oc_fixed(model, d);
        } else {
          return oc_target(model, d);
        }
      },
      design);
}

double expected_overshoot(const BernoulliPair& model, double boundary, int cap, Hypothesis hyp,
                          Engine engine) {
  require_distinct(model);
  TargetRatioDesign design = TargetRatioDesign::make(boundary, cap, boundary);
  if (!boundary_reachable(model, boundary, cap)) {
    fail(ErrorCode::boundary_unreachable,
         "boundary " + format_double(boundary) + " cannot be reached within " +
             std::to_string(cap) + " observations");
  }
  OperatingCharacteristics oc = compute_oc(model, design, engine);
  auto mean = oc.side(hyp).expected_overshoot();
  if (!mean) {
    fail(ErrorCode::boundary_unreachable, "boundary hit probability is zero");
  }
  return *mean;
}

double epsilon_of(const BernoulliPair& model, double boundary, int cap, Engine engine) {
  require_distinct(model);
  TargetRatioDesign design = TargetRatioDesign::make(boundary, cap, boundary);
  return 1.0 / boundary - compute_oc(model, design, engine).h0.pr_reject;
}

double delta_of(const BernoulliPair& model, double boundary, int cap, Engine engine) {
  require_distinct(model);
  TargetRatioDesign design = TargetRatioDesign::make(boundary, cap, boundary);
  return 1.0 - compute_oc(model, design, engine).ha.pr_reject;
}

}  // namespace seqoc
