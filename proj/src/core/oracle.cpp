#include "core/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <map>

namespace seqoc {

namespace {

// Plain-ratio equivalent of the shared log-space boundary tolerance.
bool ratio_reaches(double lr, double threshold) {
  if (std::isinf(threshold)) return false;
  return lr >= threshold * (1.0 - 1e-9);
}

struct PathAccumulator {
  KahanSum reject, hit, n_weighted, total;
  std::map<std::int64_t, double> overshoot_mass;  // keys on the shared 1e-9 grid
};

struct PathWalk {
  double p = 0;  // success probability under the selected hypothesis
  double step_s = 0, step_f = 0;
  double boundary = 0;  // +inf for fixed designs (never hit)
  int horizon = 0;
  double cutoff = 0;
  PathAccumulator* acc = nullptr;

  void record_stop(double prob, double lr, int steps, bool hit_boundary) const {
    acc->total.add(prob);
    acc->n_weighted.add(prob * steps);
    if (hit_boundary) {
      acc->hit.add(prob);
      const double overshoot = std::clamp(lr - boundary, 0.0, 9e17);
      acc->overshoot_mass[std::llround(overshoot / 1e-9)] += prob;
    }
    if (ratio_reaches(lr, cutoff)) acc->reject.add(prob);
  }

  // Depth-first over outcome paths; stopped prefixes are not expanded.
  void walk(double prob, double lr, int depth) const {
    if (depth == horizon) {
      record_stop(prob, lr, depth, false);
      return;
    }
    const double branches[2][2] = {{1.0 - p, step_f}, {p, step_s}};
    for (const auto& [branch_p, branch_step] : branches) {
      const double next_prob = prob * branch_p;
      const double next_lr = lr * branch_step;
      if (ratio_reaches(next_lr, boundary)) {
        record_stop(next_prob, next_lr, depth + 1, true);
      } else {
        walk(next_prob, next_lr, depth + 1);
      }
    }
  }
};

}  // namespace

OcSide enumerate_oc(const Design& design, const BernoulliPair& model, Hypothesis hyp) {
  const int horizon = design_horizon(design);
  if (horizon > kEnumerationHorizonCap) {
    fail(ErrorCode::horizon_too_large,
         "exhaustive enumeration supports horizons up to " +
             std::to_string(kEnumerationHorizonCap) + ", got " + std::to_string(horizon));
  }

  PathAccumulator acc;
  PathWalk walker;
  walker.p = hyp == Hypothesis::h0 ? model.p0 : model.pa;
  walker.step_s = lr_step_ratio(Outcome::success, model);
  walker.step_f = lr_step_ratio(Outcome::failure, model);
  walker.horizon = horizon;
  walker.acc = &acc;
  if (const auto* fixed = std::get_if<FixedSampleDesign>(&design)) {
    walker.boundary = std::numeric_limits<double>::infinity();
    walker.cutoff = fixed->rejection_cutoff;
  } else {
    const auto& target = std::get<TargetRatioDesign>(design);
    walker.boundary = target.boundary;
    walker.cutoff = target.rejection_cutoff;
  }
  walker.walk(1.0, 1.0, 0);

  if (std::fabs(acc.total.value() - 1.0) > 1e-12) {
    fail(ErrorCode::internal, "enumeration mass not conserved: total = " +
                                  format_double(acc.total.value()));
  }

  OcSide side;
  side.pr_reject = std::min(1.0, acc.reject.value());
  side.pr_hit = std::min(1.0, acc.hit.value());
  side.expected_n = acc.n_weighted.value();
  if (side.pr_hit > 0.0) {
    for (const auto& [key, mass] : acc.overshoot_mass) {
      side.overshoot_dist.emplace_back(key * 1e-9, mass / side.pr_hit);
    }
  }
  return side;
}

namespace {

// Integer tallies so shard merging is exact in any order.
struct McTotals {
  std::uint64_t rejects = 0;
  std::uint64_t hits = 0;
  std::uint64_t n_sum = 0;
  unsigned __int128 n_sq_sum = 0;

  McTotals& operator+=(const McTotals& other) {
    rejects += other.rejects;
    hits += other.hits;
    n_sum += other.n_sum;
    n_sq_sum += other.n_sq_sum;
    return *this;
  }
};

McTotals simulate_range(const Design& design, const BernoulliPair& model, double p,
                        std::uint64_t rep_begin, std::uint64_t rep_end, std::uint64_t seed) {
  const double step_s = lr_step_ratio(Outcome::success, model);
  const double step_f = lr_step_ratio(Outcome::failure, model);
  double boundary = std::numeric_limits<double>::infinity();
  double cutoff = 0;
  int horizon = design_horizon(design);
  if (const auto* fixed = std::get_if<FixedSampleDesign>(&design)) {
    cutoff = fixed->rejection_cutoff;
  } else {
    const auto& target = std::get<TargetRatioDesign>(design);
    boundary = target.boundary;
    cutoff = target.rejection_cutoff;
  }

  McTotals totals;
  for (std::uint64_t r = rep_begin; r < rep_end; ++r) {
    SplitMix64 rng = replication_stream(seed, r);
    double lr = 1.0;
    int steps = 0;
    bool hit = false;
    while (steps < horizon) {
      lr *= rng.next_unit() < p ? step_s : step_f;
      ++steps;
      if (ratio_reaches(lr, boundary)) {
        hit = true;
        break;
      }
    }
    totals.rejects += ratio_reaches(lr, cutoff) ? 1 : 0;
    totals.hits += hit ? 1 : 0;
    totals.n_sum += static_cast<std::uint64_t>(steps);
    totals.n_sq_sum += static_cast<unsigned __int128>(steps) * static_cast<unsigned>(steps);
  }
  return totals;
}

McEstimate binary_estimate(std::uint64_t count, std::uint64_t reps, std::uint64_t seed) {
  const double mean = static_cast<double>(count) / static_cast<double>(reps);
  return McEstimate{mean, std::sqrt(mean * (1.0 - mean) / static_cast<double>(reps)), reps, seed};
}

McOc estimate_from_totals(const McTotals& totals, std::uint64_t reps, std::uint64_t seed) {
  McOc oc;
  oc.pr_reject = binary_estimate(totals.rejects, reps, seed);
  oc.pr_hit = binary_estimate(totals.hits, reps, seed);
  const double mean_n = static_cast<double>(totals.n_sum) / static_cast<double>(reps);
  const double mean_sq = static_cast<double>(totals.n_sq_sum) / static_cast<double>(reps);
  const double variance = std::max(0.0, mean_sq - mean_n * mean_n);
  oc.expected_n =
      McEstimate{mean_n, std::sqrt(variance / static_cast<double>(reps)), reps, seed};
  return oc;
}

void check_mc_inputs(const Design& design, std::uint64_t reps) {
  if (reps < 1) fail(ErrorCode::invalid_argument, "replication count must be at least 1");
  if (static_cast<std::uint64_t>(design_horizon(design)) >= kDrawsPerReplication) {
    fail(ErrorCode::invalid_argument,
         "design horizon exceeds the per-replication draw budget of 2^24");
  }
}

}  // namespace

McOc mc_oc(const Design& design, const BernoulliPair& model, Hypothesis hyp, std::uint64_t reps,
           std::uint64_t seed) {
  check_mc_inputs(design, reps);
  const double p = hyp == Hypothesis::h0 ? model.p0 : model.pa;
  return estimate_from_totals(simulate_range(design, model, p, 0, reps, seed), reps, seed);
}

McOc mc_oc_sharded(const Design& design, const BernoulliPair& model, Hypothesis hyp,
                   std::uint64_t reps, std::uint64_t seed, unsigned shards) {
  check_mc_inputs(design, reps);
  if (shards < 1) fail(ErrorCode::invalid_argument, "shard count must be at least 1");
  const double p = hyp == Hypothesis::h0 ? model.p0 : model.pa;

  std::vector<std::future<McTotals>> futures;
  futures.reserve(shards);
  for (unsigned s = 0; s < shards; ++s) {
    const auto lo = static_cast<std::uint64_t>(static_cast<unsigned __int128>(reps) * s / shards);
    const auto hi =
        static_cast<std::uint64_t>(static_cast<unsigned __int128>(reps) * (s + 1) / shards);
    futures.push_back(std::async(std::launch::async, [&, lo, hi] {
      return simulate_range(design, model, p, lo, hi, seed);
    }));
  }
  McTotals totals;
  for (auto& f : futures) totals += f.get();
  return estimate_from_totals(totals, reps, seed);
}

}  // namespace seqoc
