#include "core/verify.hpp"

#include <chrono>
#include <cmath>
#include <cstring>
#include <functional>
#include <limits>
#include <sstream>

#include "core/exact_engine.hpp"
#include "core/oracle.hpp"
#include "core/policy.hpp"

namespace seqoc {

namespace {

using Clock = std::chrono::steady_clock;

std::string fmt(double x) { return format_double(x); }

BernoulliPair sevenths_model() {
  return BernoulliPair::from_rationals(Rational(3, 7), Rational(6, 7));
}

// The p0/pa sweep grid shared by checks c3-c7: {0.2, 0.3, ..., 0.8} squared,
// off-diagonal.
std::vector<BernoulliPair> grid_models() {
  std::vector<BernoulliPair> models;
  for (int i = 2; i <= 8; ++i) {
    for (int j = 2; j <= 8; ++j) {
      if (i == j) continue;
      models.push_back(BernoulliPair::from_doubles(i / 10.0, j / 10.0));
    }
  }
  return models;
}

constexpr double kBoundaries[] = {2.0, 4.0, 8.0, 16.0};
constexpr int kCaps[] = {10, 50, 200};

// --- c1: worked-example likelihood-ratio steps ------------------------------

void check_c1(const VerifyOptions&, CheckResult& r) {
  const BernoulliPair model = sevenths_model();
  const double step_s = lr_step_ratio(Outcome::success, model);
  const double step_f = lr_step_ratio(Outcome::failure, model);
  const Rational exact_s = *model.pa_exact / *model.p0_exact;
  const Rational exact_f = (1 - *model.pa_exact) / (1 - *model.p0_exact);
  r.passed = step_s == 2.0 && step_f == 0.25 && exact_s == 2 && exact_f == Rational(1, 4);
  r.detail = "success step = " + fmt(step_s) + " (expected exactly 2), failure step = " +
             fmt(step_f) + " (expected exactly 1/4); rational engine agrees: " +
             format_rational(exact_s) + ", " + format_rational(exact_f);
}

// --- c2: exact overshoot values ---------------------------------------------

void check_c2(const VerifyOptions&, CheckResult& r) {
  const BernoulliPair model = sevenths_model();
  std::ostringstream detail;
  bool ok = true;

  const ExactOc six = exact_oc_target(model, TargetRatioDesign::make(6.0, 50, 6.0));
  for (Hypothesis hyp : {Hypothesis::h0, Hypothesis::ha}) {
    const auto mean = six.side(hyp).expected_overshoot();
    const bool good = mean && *mean == 2;
    ok = ok && good;
    detail << hypothesis_name(hyp) << " overshoot at boundary 6 = "
           << (mean ? format_rational(*mean) : "undefined") << " (expected exactly 2); ";
  }
  for (double c : kBoundaries) {
    const ExactOc oc = exact_oc_target(model, TargetRatioDesign::make(c, 50, c));
    for (Hypothesis hyp : {Hypothesis::h0, Hypothesis::ha}) {
      const auto mean = oc.side(hyp).expected_overshoot();
      const bool good = mean && *mean == 0;
      ok = ok && good;
      if (!good) {
        detail << "nonzero overshoot at boundary " << fmt(c) << " under "
               << hypothesis_name(hyp) << "; ";
      }
    }
  }
  detail << "boundaries {2,4,8,16} all have overshoot exactly 0";
  r.passed = ok;
  r.detail = detail.str();
}

// --- c3 + c4: universal bound and the deltaA identity over one sweep --------

void check_c3_c4(const VerifyOptions& options, CheckResult& r3, CheckResult& r4) {
  const auto models = grid_models();
  const bool inject = options.inject_fault == "wrong-sign-deltaA";

  int points = 0;
  double max_excess = -std::numeric_limits<double>::infinity();  // c3: rejH0 - 1/c
  std::string worst_point;
  double max_identity_gap = 0;  // c4: |deltaA - (beta - delta)|

  for (const BernoulliPair& model : models) {
    for (double c : kBoundaries) {
      for (int m : kCaps) {
        const OperatingCharacteristics oc_t =
            compute_oc(model, Design{TargetRatioDesign::make(c, m, c)}, Engine::floating);
        ++points;

        const double excess = oc_t.h0.pr_reject - 1.0 / c;
        if (excess > max_excess) {
          max_excess = excess;
          worst_point = "p0=" + fmt(model.p0) + " pa=" + fmt(model.pa) + " c=" + fmt(c) +
                        " m=" + std::to_string(m);
        }

        // Identity check: fixed design at cutoff c (the PW role), n = m/2.
        const int n = m / 2;
        const OperatingCharacteristics oc_f =
            compute_oc(model, Design{FixedSampleDesign::make(n, c)}, Engine::floating);
        double delta_a = oc_t.ha.pr_reject - oc_f.ha.pr_reject;
        if (inject) delta_a = -delta_a;  // deliberate fault for the verification harness test
        const double beta = 1.0 - oc_f.ha.pr_reject;
        const double delta = 1.0 - oc_t.ha.pr_reject;
        max_identity_gap = std::max(max_identity_gap, std::fabs(delta_a - (beta - delta)));
      }
    }
  }

  r3.passed = max_excess <= 1e-12;
  r3.detail = std::to_string(points) + " grid points; max(prRejectH0 - 1/c) = " +
              fmt(max_excess) + " at " + worst_point + " (bound: <= 1e-12)";

  r4.passed = max_identity_gap <= 1e-12;
  r4.detail = std::to_string(points) + " grid points (n = m/2); max |deltaA - (beta - delta)| = " +
              fmt(max_identity_gap) + " (bound: <= 1e-12); sweep shared with criterion 3" +
              (inject ? "; FAULT INJECTED: deltaA sign flipped" : "");
}

// --- c5 + c6: penalty-predicate four-way equivalence and the PW bound -------

void check_c5_c6(const VerifyOptions&, CheckResult& r5, CheckResult& r6) {
  const auto models = grid_models();
  const UtilityTable utilities = UtilityTable::make(0.0, 1.0, 1.0, 0.0);  // equal gaps: W = 1

  int checked = 0, excluded_margin = 0, excluded_unreachable = 0, disagreements = 0;
  double min_margin = std::numeric_limits<double>::infinity();
  std::string first_disagreement;
  // c6 tracking: worst relative violation of PW <= (1-beta)/alpha.
  double max_rel_violation = -std::numeric_limits<double>::infinity();
  int bound_points = 0;

  for (const BernoulliPair& model : models) {
    for (double pw_nominal : kBoundaries) {
      const Beliefs beliefs = Beliefs::from_pr_h0(pw_nominal / (1.0 + pw_nominal));
      for (int m : kCaps) {
        const int n = m / 2;
        const PolicyProblem problem = PolicyProblem::make(model, beliefs, utilities, n, m);
        PolicyDecision dec;
        try {
          dec = penalty_decision(problem, Engine::floating);
        } catch (const Error& e) {
          if (e.code() == ErrorCode::boundary_unreachable) {
            ++excluded_unreachable;
            continue;
          }
          throw;
        }

        const double denom = dec.alpha + dec.epsilon;
        const double bound =
            denom == 0.0 ? std::numeric_limits<double>::infinity() : (1.0 - dec.beta + dec.delta) / denom;

        const double margin_eu = std::fabs(dec.eu_fixed - dec.eu_target);
        const double margin_delta = std::fabs(dec.delta0 * dec.pw - dec.delta_a);
        const double margin_bound = std::isinf(bound) ? bound : std::fabs(dec.pw - bound);
        const double margin = std::min({margin_eu, margin_delta, margin_bound});
        if (margin < 1e-10) {
          ++excluded_margin;
          continue;
        }
        min_margin = std::min(min_margin, margin);
        ++checked;

        const bool b1 = dec.eu_fixed > dec.eu_target;
        const bool b2 = dec.delta0 * dec.pw > dec.delta_a;
        const bool b3 = dec.penalty_required;
        const bool b4 = dec.pw < bound;
        if (!(b1 == b2 && b2 == b3 && b3 == b4)) {
          ++disagreements;
          if (first_disagreement.empty()) {
            first_disagreement = " first at p0=" + fmt(model.p0) + " pa=" + fmt(model.pa) +
                                 " PW=" + fmt(pw_nominal) + " m=" + std::to_string(m);
          }
        }

        if (dec.alpha > 0.0) {
          ++bound_points;
          max_rel_violation =
              std::max(max_rel_violation, (dec.pw - (1.0 - dec.beta) / dec.alpha) / dec.pw);
        }
      }
    }
  }

  r5.passed = disagreements == 0 && checked > 0;
  r5.detail = std::to_string(checked) + " points agree on all four predicates (expected all); " +
              std::to_string(disagreements) + " disagreements" + first_disagreement + "; " +
              std::to_string(excluded_margin) + " excluded within 1e-10 of a predicate boundary, " +
              std::to_string(excluded_unreachable) + " excluded as unreachable; min margin = " +
              fmt(min_margin);

  // c6: PW <= (1-beta)/alpha with 1e-10 relative tolerance.
  r6.passed = bound_points > 0 && max_rel_violation <= 1e-10;
  r6.detail = std::to_string(bound_points) +
              " points with alpha > 0; worst (PW - (1-beta)/alpha)/PW = " + fmt(max_rel_violation) +
              " (expected <= 1e-10); sweep shared with criterion 5";
}

// --- c7: pathwise dominance by exhaustive enumeration -----------------------

void check_c7(const VerifyOptions&, CheckResult& r) {
  const auto models = grid_models();
  constexpr int kN = 12;
  constexpr std::pair<double, double> kCutoffPairs[] = {
      {2.0, 2.0}, {4.0, 2.0}, {4.0, 4.0}, {8.0, 2.0}, {8.0, 8.0}};  // (lrF, lrT), lrT <= lrF

  std::uint64_t sequences = 0, counterexamples = 0;
  std::string first_counterexample;

  OutcomeSequence seq(kN);
  for (const BernoulliPair& model : models) {
    for (const auto& [lr_f, lr_t] : kCutoffPairs) {
      const Design fixed{FixedSampleDesign::make(kN, lr_f)};
      const Design target{TargetRatioDesign::make(lr_t, kN, lr_t)};
      for (std::uint32_t bits = 0; bits < (1u << kN); ++bits) {
        for (int i = 0; i < kN; ++i) {
          seq[i] = (bits >> i) & 1u ? Outcome::success : Outcome::failure;
        }
        ++sequences;
        const Trajectory tf = run_trajectory(seq, fixed, model);
        if (!tf.rejected) continue;
        const Trajectory tt = run_trajectory(seq, target, model);
        if (!tt.rejected) {
          ++counterexamples;
          if (first_counterexample.empty()) {
            first_counterexample = " first at p0=" + fmt(model.p0) + " pa=" + fmt(model.pa) +
                                   " lrF=" + fmt(lr_f) + " lrT=" + fmt(lr_t) +
                                   " bits=" + std::to_string(bits);
          }
        }
      }
    }
  }

  r.passed = counterexamples == 0;
  r.detail = std::to_string(sequences) + " sequences at n = m = 12, cutoff pairs with lrT <= lrF; " +
             std::to_string(counterexamples) + " fixed-rejecting paths not rejected by the target design (expected 0)" +
             first_counterexample;
}

// --- c8: posterior invariance across design contexts ------------------------

void check_c8(const VerifyOptions&, CheckResult& r) {
  SplitMix64 rng{0xA11CE5EEDull};
  const BernoulliPair model_pool[] = {
      sevenths_model(),
      BernoulliPair::from_doubles(0.3, 0.6),
      BernoulliPair::from_doubles(0.55, 0.3),
      BernoulliPair::from_doubles(0.2, 0.8),
  };
  const double priors[] = {0.3, 0.5, 0.8};

  int identical = 0;
  constexpr int kSequences = 1000;
  for (int trial = 0; trial < kSequences; ++trial) {
    const BernoulliPair& model = model_pool[trial % 4];
    const Beliefs beliefs = Beliefs::from_pr_h0(priors[trial % 3]);
    const int len = 1 + static_cast<int>(rng.next() % 30);
    OutcomeSequence seq(len);
    for (auto& o : seq) o = rng.next() & 1u ? Outcome::success : Outcome::failure;

    // A target boundary no prefix can hit, so the trajectory runs to the cap
    // and consumes exactly the same observations as the fixed design.
    double log_lr = 0, max_prefix = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < len - 1; ++i) {
      log_lr += log_lr_step(seq[i], model);
      max_prefix = std::max(max_prefix, log_lr);
    }
    const double boundary = std::max(1.5, std::exp(max_prefix + 1.0));

    const Trajectory via_fixed =
        run_trajectory(seq, Design{FixedSampleDesign::make(len, 2.0)}, model);
    const Trajectory via_target =
        run_trajectory(seq, Design{TargetRatioDesign::make(boundary, len, boundary)}, model);

    const double odds_fixed = posterior_odds_ha(beliefs, via_fixed.final_log_lr);
    const double odds_target = posterior_odds_ha(beliefs, via_target.final_log_lr);
    if (std::memcmp(&via_fixed.final_log_lr, &via_target.final_log_lr, sizeof(double)) == 0 &&
        std::memcmp(&odds_fixed, &odds_target, sizeof(double)) == 0) {
      ++identical;
    }
  }

  r.passed = identical == kSequences;
  r.detail = std::to_string(identical) + " of " + std::to_string(kSequences) +
             " random sequences gave bit-identical posterior odds under both design contexts (expected all)";
}

// --- c9: oracle triangle (DP vs enumeration vs Monte Carlo) ------------------

struct TriangleScenario {
  const char* name;
  BernoulliPair model;
  Design design;
};

std::vector<TriangleScenario> triangle_scenarios() {
  const BernoulliPair sevenths = sevenths_model();
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<TriangleScenario> s;
  s.push_back({"fixed n=5 cut=2 sevenths", sevenths, Design{FixedSampleDesign::make(5, 2.0)}});
  s.push_back({"fixed n=1 cut=inf", BernoulliPair::from_doubles(0.3, 0.6),
               Design{FixedSampleDesign::make(1, inf)}});
  s.push_back({"fixed n=10 cut=4", BernoulliPair::from_doubles(0.3, 0.6),
               Design{FixedSampleDesign::make(10, 4.0)}});
  s.push_back({"fixed n=16 cut=8", BernoulliPair::from_doubles(0.2, 0.8),
               Design{FixedSampleDesign::make(16, 8.0)}});
  s.push_back({"fixed n=12 cut=1", BernoulliPair::from_doubles(0.6, 0.4),
               Design{FixedSampleDesign::make(12, 1.0)}});
  s.push_back({"fixed n=8 cut=3", BernoulliPair::from_doubles(0.5, 0.7),
               Design{FixedSampleDesign::make(8, 3.0)}});
  s.push_back({"target c=2 m=2 sevenths", sevenths, Design{TargetRatioDesign::make(2.0, 2, 2.0)}});
  s.push_back({"target c=2 m=10 sevenths", sevenths,
               Design{TargetRatioDesign::make(2.0, 10, 2.0)}});
  s.push_back({"target c=2 m=10 cut=4 sevenths", sevenths,
               Design{TargetRatioDesign::make(2.0, 10, 4.0)}});
  s.push_back({"target c=6 m=16 sevenths", sevenths,
               Design{TargetRatioDesign::make(6.0, 16, 6.0)}});
  s.push_back({"target c=8 m=16", BernoulliPair::from_doubles(0.3, 0.6),
               Design{TargetRatioDesign::make(8.0, 16, 8.0)}});
  s.push_back({"target c=4 m=12", BernoulliPair::from_doubles(0.2, 0.8),
               Design{TargetRatioDesign::make(4.0, 12, 4.0)}});
  s.push_back({"target c=16 m=16 downward", BernoulliPair::from_doubles(0.55, 0.3),
               Design{TargetRatioDesign::make(16.0, 16, 16.0)}});
  s.push_back({"target c=3 m=15", BernoulliPair::from_doubles(0.4, 0.7),
               Design{TargetRatioDesign::make(3.0, 15, 3.0)}});
  s.push_back({"target c=16 m=5 unreachable", BernoulliPair::from_doubles(0.45, 0.55),
               Design{TargetRatioDesign::make(16.0, 5, 16.0)}});
  s.push_back({"target c=2 m=16 cut=inf", BernoulliPair::from_doubles(0.3, 0.6),
               Design{TargetRatioDesign::make(2.0, 16, inf)}});
  s.push_back({"target c=1.5 m=14", BernoulliPair::from_doubles(0.35, 0.5),
               Design{TargetRatioDesign::make(1.5, 14, 1.5)}});
  s.push_back({"target c=5 m=18", BernoulliPair::from_doubles(0.25, 0.45),
               Design{TargetRatioDesign::make(5.0, 18, 5.0)}});
  s.push_back({"fixed n=18 cut=2.5", BernoulliPair::from_doubles(0.45, 0.6),
               Design{FixedSampleDesign::make(18, 2.5)}});
  s.push_back({"target c=2.5 m=20", BernoulliPair::from_doubles(0.6, 0.75),
               Design{TargetRatioDesign::make(2.5, 20, 2.5)}});
  return s;
}

void check_c9(const VerifyOptions& options, CheckResult& r) {
  const auto scenarios = triangle_scenarios();
  double max_enum_gap = 0;
  double max_z = 0;
  std::string worst;
  bool ok = true;

  const double reps = static_cast<double>(options.mc_reps);
  // The sample standard error degenerates to 0 when every replication agrees
  // (common at small reps), so the 5-standard-error band uses a
  // continuity-corrected floor for probabilities and a tiny absolute floor
  // for the expected sample size.
  const auto prob_stderr_floor = [&](double mean) {
    const double shrunk = (mean * reps + 0.5) / (reps + 1.0);
    return std::sqrt(shrunk * (1.0 - shrunk) / reps);
  };

  for (const auto& sc : scenarios) {
    const OperatingCharacteristics dp = compute_oc(sc.model, sc.design);
    for (Hypothesis hyp : {Hypothesis::h0, Hypothesis::ha}) {
      const OcSide& dp_side = dp.side(hyp);
      const OcSide enumerated = enumerate_oc(sc.design, sc.model, hyp);

      double gap = std::max({std::fabs(dp_side.pr_reject - enumerated.pr_reject),
                             std::fabs(dp_side.pr_hit - enumerated.pr_hit),
                             std::fabs(dp_side.expected_n - enumerated.expected_n)});
      const auto dp_os = dp_side.expected_overshoot();
      const auto en_os = enumerated.expected_overshoot();
      if (dp_os.has_value() != en_os.has_value()) {
        ok = false;
        worst = std::string(sc.name) + " (overshoot definedness mismatch)";
      } else if (dp_os) {
        gap = std::max(gap, std::fabs(*dp_os - *en_os));
      }
      if (gap > max_enum_gap) {
        max_enum_gap = gap;
        if (gap > 1e-10) worst = sc.name;
      }

      const McOc mc = mc_oc(sc.design, sc.model, hyp, options.mc_reps, options.seed);
      const struct {
        double mc_mean, stderr_eff, dp_value;
      } quantities[] = {
          {mc.pr_reject.mean, std::max(mc.pr_reject.stderr_, prob_stderr_floor(mc.pr_reject.mean)),
           dp_side.pr_reject},
          {mc.pr_hit.mean, std::max(mc.pr_hit.stderr_, prob_stderr_floor(mc.pr_hit.mean)),
           dp_side.pr_hit},
          {mc.expected_n.mean, std::max(mc.expected_n.stderr_, 1e-9), dp_side.expected_n},
      };
      for (const auto& q : quantities) {
        const double z = std::fabs(q.mc_mean - q.dp_value) / q.stderr_eff;
        if (z > max_z) {
          max_z = z;
          if (z > 5.0) worst = sc.name;
        }
      }
    }
  }

  ok = ok && max_enum_gap <= 1e-10 && max_z <= 5.0;
  r.passed = ok;
  r.detail = std::to_string(scenarios.size()) + " scenarios x 2 hypotheses; max |DP - enumeration| = " +
             fmt(max_enum_gap) + " (bound 1e-10); max Monte Carlo |z| = " + fmt(max_z) +
             " (bound 5) at reps = " + std::to_string(options.mc_reps) +
             ", seed = " + std::to_string(options.seed) +
             (worst.empty() ? "" : "; worst: " + worst);
}

// --- c10: epsilon trend in the cap ------------------------------------------

void check_c10(const VerifyOptions&, CheckResult& r) {
  const BernoulliPair model = sevenths_model();
  std::vector<double> eps;
  for (int m = 10; m <= 200; m += 10) {
    eps.push_back(epsilon_of(model, 8.0, m, Engine::floating));
  }
  bool monotone = true;
  for (std::size_t i = 1; i < eps.size(); ++i) {
    if (eps[i] > eps[i - 1]) monotone = false;
  }
  bool nonnegative = true;
  for (double e : eps) nonnegative = nonnegative && e >= 0.0;
  const double margin = eps.front() - eps.back();

  r.passed = monotone && nonnegative && margin >= 1e-9;
  r.detail = "epsilon(m) for m = 10..200 step 10 at boundary 8: first = " + fmt(eps.front()) +
             ", last = " + fmt(eps.back()) + ", margin = " + fmt(margin) +
             " (expected non-increasing, nonnegative, strictly positive margin)";
}

// --- suite runner ------------------------------------------------------------

struct SuiteEntry {
  const char* id;
  const char* name;
  double budget_ms;  // 0 = no runtime budget
};

void apply_timing(CheckResult& r, double budget_ms, double elapsed_ms) {
  r.elapsed_ms = elapsed_ms;
  if (budget_ms > 0 && elapsed_ms > budget_ms) {
    r.passed = false;
    r.detail += "; exceeded runtime budget (" + fmt(elapsed_ms) + " ms > " + fmt(budget_ms) + " ms)";
  }
}

template <typename Fn>
CheckResult run_single(const SuiteEntry& entry, Fn&& fn) {
  CheckResult r;
  r.id = entry.id;
  r.name = entry.name;
  const auto start = Clock::now();
  try {
    fn(r);
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = std::string("exception: ") + e.what();
  }
  const double elapsed =
      std::chrono::duration_cast<std::chrono::duration<double, std::milli>>(Clock::now() - start)
          .count();
  apply_timing(r, entry.budget_ms, elapsed);
  return r;
}

}  // namespace

std::vector<CheckResult> run_acceptance_suite(const VerifyOptions& options) {
  if (!options.inject_fault.empty() && options.inject_fault != "wrong-sign-deltaA") {
    fail(ErrorCode::invalid_argument,
         "unknown fault injection '" + options.inject_fault + "' (known: wrong-sign-deltaA)");
  }
  static const char* kIds[] = {"c1", "c2", "c3", "c4", "c5", "c6", "c7", "c8", "c9", "c10"};
  if (!options.only.empty()) {
    bool known = false;
    for (const char* id : kIds) known = known || options.only == id;
    if (!known) {
      fail(ErrorCode::invalid_argument, "unknown check id '" + options.only + "' (known: c1..c10)");
    }
  }
  const auto want = [&](const char* id) {
    return options.only.empty() || options.only == id;
  };

  std::vector<CheckResult> results;

  if (want("c1")) {
    results.push_back(run_single({"c1", "worked-example likelihood-ratio steps", 1.0},
                                 [&](CheckResult& r) { check_c1(options, r); }));
  }
  if (want("c2")) {
    results.push_back(run_single({"c2", "exact boundary overshoot values", 100.0},
                                 [&](CheckResult& r) { check_c2(options, r); }));
  }
  if (want("c3") || want("c4")) {
    CheckResult r3, r4;
    r3.id = "c3";
    r3.name = "universal bound on the sweep grid";
    r4.id = "c4";
    r4.name = "identity deltaA = beta - delta";
    const auto start = Clock::now();
    try {
      check_c3_c4(options, r3, r4);
    } catch (const std::exception& e) {
      r3.passed = r4.passed = false;
      r3.detail = r4.detail = std::string("exception: ") + e.what();
    }
    const double elapsed =
        std::chrono::duration_cast<std::chrono::duration<double, std::milli>>(Clock::now() - start)
            .count();
    apply_timing(r3, 30000.0, elapsed);
    apply_timing(r4, 0.0, elapsed);
    if (want("c3")) results.push_back(r3);
    if (want("c4")) results.push_back(r4);
  }
  if (want("c5") || want("c6")) {
    CheckResult r5, r6;
    r5.id = "c5";
    r5.name = "penalty-predicate four-way equivalence";
    r6.id = "c6";
    r6.name = "PW <= (1-beta)/alpha where alpha > 0";
    const auto start = Clock::now();
    try {
      check_c5_c6(options, r5, r6);
    } catch (const std::exception& e) {
      r5.passed = r6.passed = false;
      r5.detail = r6.detail = std::string("exception: ") + e.what();
    }
    const double elapsed =
        std::chrono::duration_cast<std::chrono::duration<double, std::milli>>(Clock::now() - start)
            .count();
    apply_timing(r5, 120000.0, elapsed);
    apply_timing(r6, 0.0, elapsed);
    if (want("c5")) results.push_back(r5);
    if (want("c6")) results.push_back(r6);
  }
  if (want("c7")) {
    results.push_back(run_single({"c7", "pathwise dominance by exhaustive enumeration", 10000.0},
                                 [&](CheckResult& r) { check_c7(options, r); }));
  }
  if (want("c8")) {
    results.push_back(run_single({"c8", "posterior invariance across design contexts", 0.0},
                                 [&](CheckResult& r) { check_c8(options, r); }));
  }
  if (want("c9")) {
    results.push_back(run_single({"c9", "oracle triangle: DP vs enumeration vs Monte Carlo", 60000.0},
                                 [&](CheckResult& r) { check_c9(options, r); }));
  }
  if (want("c10")) {
    results.push_back(run_single({"c10", "epsilon non-increasing in the cap", 0.0},
                                 [&](CheckResult& r) { check_c10(options, r); }));
  }
  return results;
}

bool all_passed(const std::vector<CheckResult>& results) {
  for (const auto& r : results) {
    if (!r.passed) return false;
  }
  return true;
}

}  // namespace seqoc
