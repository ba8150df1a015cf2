#pragma once

#include <cstdint>

#include "core/oc.hpp"

namespace seqoc {

// Pinned pseudo-random generator: splitmix64 (Steele, Lea & Flood's
// SplittableRandom finalizer).  next() advances the state by the 64-bit
// golden-ratio constant and scrambles it; the identity of this generator is
// part of the repo's regression contract — changing it changes every seeded
// Monte Carlo result.
struct SplitMix64 {
  std::uint64_t state = 0;

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53 random bits.
  double next_unit() { return (next() >> 11) * 0x1.0p-53; }
};

// Draw budget reserved per replication.  Replication r uses the state window
// seed + (r * 2^24 + j) * GOLDEN for j < 2^24, so distinct replications never
// share a state and the estimate is independent of how replications are
// sharded across workers.
inline constexpr std::uint64_t kDrawsPerReplication = 1ull << 24;

inline SplitMix64 replication_stream(std::uint64_t seed, std::uint64_t replication) {
  return SplitMix64{seed + (replication * kDrawsPerReplication) * 0x9E3779B97F4A7C15ull};
}

// Horizon bound for exhaustive path enumeration (2^N paths before pruning).
inline constexpr int kEnumerationHorizonCap = 20;

// Exact operating characteristics by summing over every stopped path of the
// design; an oracle, deliberately independent of the DP: plain-ratio
// likelihood arithmetic over explicit paths instead of log-space counts.
OcSide enumerate_oc(const Design& design, const BernoulliPair& model, Hypothesis hyp);

struct McEstimate {
  double mean = 0;
  double stderr_ = 0;
  std::uint64_t reps = 0;
  std::uint64_t seed = 0;
};

struct McOc {
  McEstimate pr_reject;
  McEstimate pr_hit;
  McEstimate expected_n;
};

// Seeded Monte Carlo estimates of the design's operating characteristics.
// Same seed => bit-identical results, regardless of shard count.
McOc mc_oc(const Design& design, const BernoulliPair& model, Hypothesis hyp, std::uint64_t reps,
           std::uint64_t seed);
McOc mc_oc_sharded(const Design& design, const BernoulliPair& model, Hypothesis hyp,
                   std::uint64_t reps, std::uint64_t seed, unsigned shards);

}  // namespace seqoc
