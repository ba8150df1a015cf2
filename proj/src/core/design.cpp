#include "core/design.hpp"

#include <cmath>

namespace seqoc {

namespace {

void check_cutoff(double cutoff) {
  if (std::isnan(cutoff) || cutoff <= 0.0) {
    fail(ErrorCode::invalid_argument,
         "rejection cutoff must be positive (or +inf), got " + format_double(cutoff));
  }
}

}  // namespace

FixedSampleDesign FixedSampleDesign::make(int n, double rejection_cutoff,
                                          std::optional<Rational> cutoff_exact) {
  if (n < 1) fail(ErrorCode::invalid_argument, "sample size must be at least 1");
  check_cutoff(rejection_cutoff);
  return FixedSampleDesign{n, rejection_cutoff, std::move(cutoff_exact)};
}

TargetRatioDesign TargetRatioDesign::make(double boundary, int cap, double rejection_cutoff,
                                          std::optional<Rational> boundary_exact,
                                          std::optional<Rational> cutoff_exact) {
  if (!(boundary > 1.0) || std::isinf(boundary)) {
    fail(ErrorCode::invalid_argument,
         "target boundary must be a finite ratio > 1, got " + format_double(boundary));
  }
  if (cap < 1) fail(ErrorCode::invalid_argument, "observation cap must be at least 1");
  check_cutoff(rejection_cutoff);
  return TargetRatioDesign{boundary, cap, rejection_cutoff, std::move(boundary_exact),
                           std::move(cutoff_exact)};
}

int design_horizon(const Design& design) {
  return std::visit([](const auto& d) {
    if constexpr (std::is_same_v<std::decay_t<decltype(d)>, FixedSampleDesign>) {
      return d.n;
    } else {
      return d.cap;
    }
  }, design);
}

namespace {

bool rejects(double final_log_lr, double cutoff) {
  if (std::isinf(cutoff)) return false;
  return log_reaches(final_log_lr, std::log(cutoff));
}

Trajectory run_fixed(const OutcomeSequence& seq, const FixedSampleDesign& d,
                     const BernoulliPair& model) {
  if (static_cast<int>(seq.size()) < d.n) {
    fail(ErrorCode::sequence_too_short, "sequence has " + std::to_string(seq.size()) +
                                            " outcomes, design needs " + std::to_string(d.n));
  }
  double log_lr = 0.0;
  for (int i = 0; i < d.n; ++i) log_lr += log_lr_step(seq[i], model);
  return Trajectory{d.n, log_lr, false, 0.0, rejects(log_lr, d.rejection_cutoff)};
}

Trajectory run_target(const OutcomeSequence& seq, const TargetRatioDesign& d,
                      const BernoulliPair& model) {
  const double log_boundary = std::log(d.boundary);
  double log_lr = 0.0;
  for (int i = 0; i < d.cap; ++i) {
    if (static_cast<std::size_t>(i) >= seq.size()) {
      fail(ErrorCode::sequence_too_short,
           "sequence exhausted after " + std::to_string(seq.size()) +
               " outcomes without stopping (cap " + std::to_string(d.cap) + ")");
    }
    log_lr += log_lr_step(seq[i], model);
    if (log_reaches(log_lr, log_boundary)) {
      const double overshoot = std::max(0.0, std::exp(log_lr) - d.boundary);
      return Trajectory{i + 1, log_lr, true, overshoot, rejects(log_lr, d.rejection_cutoff)};
    }
  }
  return Trajectory{d.cap, log_lr, false, 0.0, rejects(log_lr, d.rejection_cutoff)};
}

}  // namespace

Trajectory run_trajectory(const OutcomeSequence& seq, const Design& design,
                          const BernoulliPair& model) {
  return std::visit(
      [&](const auto& d) {
        if constexpr (std::is_same_v<std::decay_t<decltype(d)>, FixedSampleDesign>) {
          return run_fixed(seq, d, model);
        } else {
          return run_target(seq, d, model);
        }
      },
      design);
}

double sequence_probability(const OutcomeSequence& seq, Hypothesis hyp,
                            const BernoulliPair& model, const Design& design) {
  Trajectory t;
  try {
    t = run_trajectory(seq, design, model);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::sequence_too_short) {
      fail(ErrorCode::invalid_stop, "design does not stop by the end of the sequence");
    }
    throw;
  }
  if (static_cast<std::size_t>(t.stop_index) != seq.size()) {
    fail(ErrorCode::invalid_stop,
         "design stops after " + std::to_string(t.stop_index) + " outcomes, sequence has " +
             std::to_string(seq.size()));
  }
  return outcome_probability(seq, hyp, model);
}

}  // namespace seqoc
