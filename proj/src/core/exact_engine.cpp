#include "core/exact_engine.hpp"

#include <cmath>
#include <map>

namespace seqoc {

std::optional<Rational> ExactOcSide::expected_overshoot() const {
  if (pr_hit == 0) return std::nullopt;
  Rational mean{0};
  for (const auto& [value, prob] : overshoot_dist) mean += value * prob;
  return mean;
}

namespace {

void check_horizon(int horizon) {
  if (horizon > kExactHorizonCap) {
    fail(ErrorCode::exact_unavailable,
         "exact engine supports horizons up to " + std::to_string(kExactHorizonCap) + ", got " +
             std::to_string(horizon));
  }
}

// Finite rejection cutoff in exact form; nullopt encodes "never reject".
std::optional<Rational> exact_cutoff(double cutoff, const std::optional<Rational>& declared) {
  if (std::isinf(cutoff)) return std::nullopt;
  return declared ? *declared : rational_from_double(cutoff);
}

Rational binomial_coefficient(int n, int k) {
  BigInt num = 1;
  for (int i = 0; i < k; ++i) {
    num *= n - i;
    num /= i + 1;  // exact at every step: product of j consecutive ints is divisible by j!
  }
  return Rational(num);
}

ExactOcSide exact_fixed_side(const ExactModel& exact, int n,
                             const std::optional<Rational>& cutoff, const Rational& p) {
  ExactOcSide side;
  side.expected_n = n;
  if (!cutoff) return side;
  const Rational step_s = exact.pa / exact.p0;
  const Rational step_f = (1 - exact.pa) / (1 - exact.p0);
  const Rational q = 1 - p;
  for (int k = 0; k <= n; ++k) {
    if (rat_pow(step_s, k) * rat_pow(step_f, n - k) >= *cutoff) {
      side.pr_reject += binomial_coefficient(n, k) * rat_pow(p, k) * rat_pow(q, n - k);
    }
  }
  return side;
}

ExactOcSide exact_target_side(const ExactModel& exact, const Rational& boundary, int cap,
                              const std::optional<Rational>& cutoff, const Rational& p) {
  const Rational step_s = exact.pa / exact.p0;
  const Rational step_f = (1 - exact.pa) / (1 - exact.p0);
  const Rational q = 1 - p;

  // Likelihood ratios per state, shared across layers via power tables.
  std::vector<Rational> pow_s(cap + 1), pow_f(cap + 1);
  pow_s[0] = pow_f[0] = 1;
  for (int i = 1; i <= cap; ++i) {
    pow_s[i] = pow_s[i - 1] * step_s;
    pow_f[i] = pow_f[i - 1] * step_f;
  }

  std::vector<Rational> alive{Rational(1)};
  Rational reject{0}, hit{0}, n_weighted{0}, absorbed{0};
  std::map<Rational, Rational> overshoot_mass;

  for (int t = 1; t <= cap; ++t) {
    std::vector<Rational> next(t + 1, Rational(0));
    for (int k = 0; k < t; ++k) {
      if (alive[k] == 0) continue;
      next[k] += alive[k] * q;
      next[k + 1] += alive[k] * p;
    }
    for (int k = 0; k <= t; ++k) {
      if (next[k] == 0) continue;
      const Rational lr = pow_s[k] * pow_f[t - k];
      if (lr < boundary) continue;
      hit += next[k];
      absorbed += next[k];
      n_weighted += next[k] * t;
      overshoot_mass[lr - boundary] += next[k];
      if (cutoff && lr >= *cutoff) reject += next[k];
      next[k] = 0;
    }
    alive = std::move(next);
  }

  Rational terminal{0};
  for (int k = 0; k <= cap; ++k) {
    if (alive[k] == 0) continue;
    terminal += alive[k];
    n_weighted += alive[k] * cap;
    if (cutoff && pow_s[k] * pow_f[cap - k] >= *cutoff) reject += alive[k];
  }

  if (absorbed + terminal != 1) {
    fail(ErrorCode::internal, "probability mass not conserved in exact DP");
  }

  ExactOcSide side;
  side.pr_reject = reject;
  side.pr_hit = hit;
  side.expected_n = n_weighted;
  if (hit != 0) {
    side.overshoot_dist.reserve(overshoot_mass.size());
    for (const auto& [value, mass] : overshoot_mass) {
      side.overshoot_dist.emplace_back(value, mass / hit);
    }
  }
  return side;
}

}  // namespace

ExactOc exact_oc_fixed(const BernoulliPair& model, const FixedSampleDesign& design) {
  check_horizon(design.n);
  const ExactModel exact = exact_model_of(model);
  const auto cutoff = exact_cutoff(design.rejection_cutoff, design.cutoff_exact);
  return ExactOc{exact_fixed_side(exact, design.n, cutoff, exact.p0),
                 exact_fixed_side(exact, design.n, cutoff, exact.pa)};
}

ExactOc exact_oc_target(const BernoulliPair& model, const TargetRatioDesign& design) {
  if (model.p0 == model.pa) {
    fail(ErrorCode::invalid_argument, "boundary-crossing computations require p0 != pa");
  }
  check_horizon(design.cap);
  const ExactModel exact = exact_model_of(model);
  const Rational boundary =
      design.boundary_exact ? *design.boundary_exact : rational_from_double(design.boundary);
  const auto cutoff = exact_cutoff(design.rejection_cutoff, design.cutoff_exact);
  return ExactOc{exact_target_side(exact, boundary, design.cap, cutoff, exact.p0),
                 exact_target_side(exact, boundary, design.cap, cutoff, exact.pa)};
}

ExactOc exact_oc(const BernoulliPair& model, const Design& design) {
  return std::visit(
      [&](const auto& d) {
        if constexpr (std::is_same_v<std::decay_t<decltype(d)>, FixedSampleDesign>) {
          return exact_oc_fixed(model, d);
        } else {
          return exact_oc_target(model, d);
        }
      },
      design);
}

namespace {

OcSide side_to_floating(const ExactOcSide& side) {
  OcSide out;
  out.pr_reject = rational_to_double(side.pr_reject);
  out.expected_n = rational_to_double(side.expected_n);
  out.pr_hit = rational_to_double(side.pr_hit);
  out.overshoot_dist.reserve(side.overshoot_dist.size());
  for (const auto& [value, prob] : side.overshoot_dist) {
    out.overshoot_dist.emplace_back(rational_to_double(value), rational_to_double(prob));
  }
  return out;
}

}  // namespace

OperatingCharacteristics to_floating(const ExactOc& oc) {
  return OperatingCharacteristics{side_to_floating(oc.h0), side_to_floating(oc.ha), true};
}

}  // namespace seqoc
