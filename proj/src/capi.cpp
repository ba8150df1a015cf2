// C ABI over the C++ engine.  Every entry point catches all exceptions and
// maps them onto seqoc_status; failure details are kept in a thread-local
// message retrieved via seqoc_last_error().

#include "seqoc/seqoc.h"

#include <cstdlib>
#include <cstring>
#include <limits>
#include <new>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "core/design.hpp"
#include "core/exact_engine.hpp"
#include "core/likelihood.hpp"
#include "core/oc.hpp"
#include "core/oracle.hpp"
#include "core/policy.hpp"
#include "core/types.hpp"
#include "core/verify.hpp"

struct seqoc_model {
  seqoc::BernoulliPair pair;
};

struct seqoc_design {
  seqoc::Design design;
};

struct seqoc_oc {
  seqoc::OperatingCharacteristics oc;
  std::optional<seqoc::ExactOc> exact;  // kept when the rational engine produced it
};

struct seqoc_policy {
  seqoc::PolicyDecision decision;
};

struct seqoc_mc {
  seqoc::McOc oc;
};

struct seqoc_verify {
  std::vector<seqoc::CheckResult> results;
};

namespace {

thread_local std::string t_last_error;

seqoc_status map_code(seqoc::ErrorCode code) {
  switch (code) {
    case seqoc::ErrorCode::invalid_argument: return SEQOC_ERR_INVALID_ARGUMENT;
    case seqoc::ErrorCode::parse_error: return SEQOC_ERR_PARSE;
    case seqoc::ErrorCode::invalid_stop: return SEQOC_ERR_INVALID_STOP;
    case seqoc::ErrorCode::sequence_too_short: return SEQOC_ERR_SEQUENCE_TOO_SHORT;
    case seqoc::ErrorCode::boundary_unreachable: return SEQOC_ERR_BOUNDARY_UNREACHABLE;
    case seqoc::ErrorCode::horizon_too_large: return SEQOC_ERR_HORIZON_TOO_LARGE;
    case seqoc::ErrorCode::exact_unavailable: return SEQOC_ERR_EXACT_UNAVAILABLE;
    case seqoc::ErrorCode::internal: return SEQOC_ERR_INTERNAL;
  }
  return SEQOC_ERR_INTERNAL;
}

// Runs the body, translating exceptions to status codes.
template <typename F>
seqoc_status guarded(F&& body) noexcept {
  try {
    body();
    return SEQOC_OK;
  } catch (const seqoc::Error& e) {
    t_last_error = e.what();
    return map_code(e.code());
  } catch (const std::invalid_argument& e) {
    t_last_error = e.what();
    return SEQOC_ERR_INVALID_ARGUMENT;
  } catch (const std::bad_alloc&) {
    t_last_error = "out of memory";
    return SEQOC_ERR_INTERNAL;
  } catch (const std::exception& e) {
    t_last_error = e.what();
    return SEQOC_ERR_INTERNAL;
  } catch (...) {
    t_last_error = "unknown failure";
    return SEQOC_ERR_INTERNAL;
  }
}

void require(bool ok, const char* what) {
  if (!ok) seqoc::fail(seqoc::ErrorCode::invalid_argument, what);
}

seqoc::ParsedNumber parse_arg(const char* text, const char* what) {
  if (text == nullptr) {
    seqoc::fail(seqoc::ErrorCode::invalid_argument, std::string(what) + " must not be NULL");
  }
  auto parsed = seqoc::parse_number(text);
  if (!parsed) {
    seqoc::fail(seqoc::ErrorCode::parse_error,
                std::string(what) + ": not a number: \"" + text + "\"");
  }
  return std::move(*parsed);
}

int checked_int(std::int64_t v, const char* what) {
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
    seqoc::fail(seqoc::ErrorCode::invalid_argument,
                std::string(what) + " out of range: " + std::to_string(v));
  }
  return static_cast<int>(v);
}

seqoc::Hypothesis checked_hypothesis(int h) {
  require(h == SEQOC_H0 || h == SEQOC_HA, "hypothesis must be SEQOC_H0 or SEQOC_HA");
  return h == SEQOC_H0 ? seqoc::Hypothesis::h0 : seqoc::Hypothesis::ha;
}

seqoc::Engine checked_engine(int engine) {
  switch (engine) {
    case SEQOC_ENGINE_AUTO: return seqoc::Engine::auto_select;
    case SEQOC_ENGINE_FLOAT: return seqoc::Engine::floating;
    case SEQOC_ENGINE_EXACT: return seqoc::Engine::exact;
    default: break;
  }
  seqoc::fail(seqoc::ErrorCode::invalid_argument,
              "engine must be SEQOC_ENGINE_AUTO, _FLOAT, or _EXACT");
}

const seqoc::BernoulliPair& deref(const seqoc_model* m) {
  require(m != nullptr, "model must not be NULL");
  return m->pair;
}

const seqoc::Design& deref(const seqoc_design* d) {
  require(d != nullptr, "design must not be NULL");
  return d->design;
}

seqoc::OutcomeSequence to_sequence(const uint8_t* outcomes, size_t len) {
  require(outcomes != nullptr || len == 0, "outcome array must not be NULL");
  seqoc::OutcomeSequence seq;
  seq.reserve(len);
  for (size_t i = 0; i < len; ++i) {
    require(outcomes[i] <= 1, "outcomes must be 0 (failure) or 1 (success)");
    seq.push_back(outcomes[i] == 1 ? seqoc::Outcome::success : seqoc::Outcome::failure);
  }
  return seq;
}

seqoc::BernoulliPair model_from_numbers(const seqoc::ParsedNumber& p0,
                                        const seqoc::ParsedNumber& pa) {
  if (p0.exact && pa.exact) return seqoc::BernoulliPair::from_rationals(*p0.exact, *pa.exact);
  return seqoc::BernoulliPair::from_doubles(p0.value, pa.value);
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <typename T, typename... Args>
void emplace_handle(T** out, Args&&... args) {
  require(out != nullptr, "output handle must not be NULL");
  *out = new T{std::forward<Args>(args)...};
}

template <typename T>
void store(T* out, const T& value, const char* what = "output pointer must not be NULL") {
  require(out != nullptr, what);
  *out = value;
}

}  // namespace

extern "C" {

const char* seqoc_version(void) { return "0.1.0"; }

const char* seqoc_status_name(seqoc_status status) {
  switch (status) {
    case SEQOC_OK: return "ok";
    case SEQOC_ERR_INVALID_ARGUMENT: return "invalid-argument";
    case SEQOC_ERR_PARSE: return "parse-error";
    case SEQOC_ERR_INVALID_STOP: return "invalid-stop";
    case SEQOC_ERR_SEQUENCE_TOO_SHORT: return "sequence-too-short";
    case SEQOC_ERR_BOUNDARY_UNREACHABLE: return "boundary-unreachable";
    case SEQOC_ERR_HORIZON_TOO_LARGE: return "horizon-too-large";
    case SEQOC_ERR_EXACT_UNAVAILABLE: return "exact-unavailable";
    case SEQOC_ERR_INTERNAL: return "internal-error";
  }
  return "unknown-status";
}

const char* seqoc_last_error(void) { return t_last_error.c_str(); }

void seqoc_string_free(char* s) { std::free(s); }

/* --- models --------------------------------------------------------------- */

seqoc_status seqoc_model_new(const char* p0, const char* pa, seqoc_model** out) {
  return guarded([&] {
    auto parsed0 = parse_arg(p0, "p0");
    auto parseda = parse_arg(pa, "pa");
    emplace_handle(out, model_from_numbers(parsed0, parseda));
  });
}

seqoc_status seqoc_model_new_f64(double p0, double pa, seqoc_model** out) {
  return guarded([&] { emplace_handle(out, seqoc::BernoulliPair::from_doubles(p0, pa)); });
}

void seqoc_model_free(seqoc_model* model) { delete model; }

seqoc_status seqoc_model_p0(const seqoc_model* model, double* out) {
  return guarded([&] { store(out, deref(model).p0); });
}

seqoc_status seqoc_model_pa(const seqoc_model* model, double* out) {
  return guarded([&] { store(out, deref(model).pa); });
}

seqoc_status seqoc_model_is_exact(const seqoc_model* model, int* out) {
  return guarded([&] { store(out, deref(model).has_exact() ? 1 : 0); });
}

/* --- designs --------------------------------------------------------------- */

seqoc_status seqoc_design_fixed_new(int64_t n, const char* cutoff, seqoc_design** out) {
  return guarded([&] {
    auto parsed = parse_arg(cutoff, "cutoff");
    emplace_handle(out, seqoc::Design{seqoc::FixedSampleDesign::make(
                            checked_int(n, "n"), parsed.value, std::move(parsed.exact))});
  });
}

seqoc_status seqoc_design_fixed_new_f64(int64_t n, double cutoff, seqoc_design** out) {
  return guarded([&] {
    emplace_handle(out,
                   seqoc::Design{seqoc::FixedSampleDesign::make(checked_int(n, "n"), cutoff)});
  });
}

seqoc_status seqoc_design_target_new(const char* boundary, int64_t cap, const char* cutoff,
                                     seqoc_design** out) {
  return guarded([&] {
    auto b = parse_arg(boundary, "boundary");
    auto c = cutoff == nullptr ? b : parse_arg(cutoff, "cutoff");
    emplace_handle(out, seqoc::Design{seqoc::TargetRatioDesign::make(
                            b.value, checked_int(cap, "cap"), c.value, std::move(b.exact),
                            std::move(c.exact))});
  });
}

seqoc_status seqoc_design_target_new_f64(double boundary, int64_t cap, double cutoff,
                                         seqoc_design** out) {
  return guarded([&] {
    emplace_handle(out, seqoc::Design{seqoc::TargetRatioDesign::make(
                            boundary, checked_int(cap, "cap"), cutoff)});
  });
}

void seqoc_design_free(seqoc_design* design) { delete design; }

seqoc_status seqoc_design_kind(const seqoc_design* design, int* out) {
  return guarded([&] {
    const bool fixed = std::holds_alternative<seqoc::FixedSampleDesign>(deref(design));
    store(out, fixed ? static_cast<int>(SEQOC_CHOICE_FIXED)
                     : static_cast<int>(SEQOC_CHOICE_TARGET));
  });
}

seqoc_status seqoc_design_horizon(const seqoc_design* design, int64_t* out) {
  return guarded(
      [&] { store(out, static_cast<int64_t>(seqoc::design_horizon(deref(design)))); });
}

/* --- likelihood ratios ------------------------------------------------------ */

namespace {

seqoc::Outcome checked_outcome(int outcome) {
  require(outcome == 0 || outcome == 1, "outcome must be 0 (failure) or 1 (success)");
  return outcome == 1 ? seqoc::Outcome::success : seqoc::Outcome::failure;
}

}  // namespace

seqoc_status seqoc_log_lr_step(const seqoc_model* model, int outcome, double* out) {
  return guarded([&] { store(out, seqoc::log_lr_step(checked_outcome(outcome), deref(model))); });
}

seqoc_status seqoc_lr_step_ratio(const seqoc_model* model, int outcome, double* out) {
  return guarded(
      [&] { store(out, seqoc::lr_step_ratio(checked_outcome(outcome), deref(model))); });
}

seqoc_status seqoc_log_lr_of_counts(const seqoc_model* model, int64_t successes, int64_t failures,
                                    double* out) {
  return guarded([&] {
    require(successes >= 0 && failures >= 0, "counts must be nonnegative");
    store(out, seqoc::log_lr_of_counts(deref(model), successes, failures));
  });
}

seqoc_status seqoc_posterior_odds_ha(double pr_h0, double log_lr, double* out) {
  return guarded(
      [&] { store(out, seqoc::posterior_odds_ha(seqoc::Beliefs::from_pr_h0(pr_h0), log_lr)); });
}

seqoc_status seqoc_run_trajectory(const seqoc_model* model, const seqoc_design* design,
                                  const uint8_t* outcomes, size_t len, seqoc_trajectory* out) {
  return guarded([&] {
    require(out != nullptr, "output pointer must not be NULL");
    const auto t = seqoc::run_trajectory(to_sequence(outcomes, len), deref(design), deref(model));
    *out = seqoc_trajectory{t.stop_index, t.final_log_lr, t.hit_boundary ? 1 : 0, t.overshoot,
                            t.rejected ? 1 : 0};
  });
}

seqoc_status seqoc_sequence_probability(const seqoc_model* model, const seqoc_design* design,
                                        const uint8_t* outcomes, size_t len, int hypothesis,
                                        double* out) {
  return guarded([&] {
    store(out, seqoc::sequence_probability(to_sequence(outcomes, len),
                                           checked_hypothesis(hypothesis), deref(model),
                                           deref(design)));
  });
}

/* --- operating characteristics ---------------------------------------------- */

seqoc_status seqoc_oc_compute(const seqoc_model* model, const seqoc_design* design, int engine,
                              seqoc_oc** out) {
  return guarded([&] {
    const auto& pair = deref(model);
    const auto& d = deref(design);
    seqoc::Engine eng = checked_engine(engine);
    if (eng == seqoc::Engine::auto_select) {  // same rule as the engine dispatch
      eng = pair.has_exact() && seqoc::design_horizon(d) <= seqoc::kExactHorizonCap
                ? seqoc::Engine::exact
                : seqoc::Engine::floating;
    }
    if (eng == seqoc::Engine::exact) {
      auto exact = seqoc::exact_oc(pair, d);
      auto floating = seqoc::to_floating(exact);
      emplace_handle(out, std::move(floating), std::move(exact));
    } else {
      emplace_handle(out, seqoc::compute_oc(pair, d, seqoc::Engine::floating), std::nullopt);
    }
  });
}

seqoc_status seqoc_oc_enumerate(const seqoc_model* model, const seqoc_design* design,
                                seqoc_oc** out) {
  return guarded([&] {
    const auto& pair = deref(model);
    const auto& d = deref(design);
    seqoc::OperatingCharacteristics oc{seqoc::enumerate_oc(d, pair, seqoc::Hypothesis::h0),
                                       seqoc::enumerate_oc(d, pair, seqoc::Hypothesis::ha),
                                       false};
    emplace_handle(out, std::move(oc), std::nullopt);
  });
}

void seqoc_oc_free(seqoc_oc* oc) { delete oc; }

namespace {

const seqoc::OcSide& oc_side(const seqoc_oc* oc, int hypothesis) {
  require(oc != nullptr, "oc handle must not be NULL");
  return oc->oc.side(checked_hypothesis(hypothesis));
}

}  // namespace

seqoc_status seqoc_oc_pr_reject(const seqoc_oc* oc, int hypothesis, double* out) {
  return guarded([&] { store(out, oc_side(oc, hypothesis).pr_reject); });
}

seqoc_status seqoc_oc_expected_n(const seqoc_oc* oc, int hypothesis, double* out) {
  return guarded([&] { store(out, oc_side(oc, hypothesis).expected_n); });
}

seqoc_status seqoc_oc_pr_hit(const seqoc_oc* oc, int hypothesis, double* out) {
  return guarded([&] { store(out, oc_side(oc, hypothesis).pr_hit); });
}

seqoc_status seqoc_oc_expected_overshoot(const seqoc_oc* oc, int hypothesis, double* out) {
  return guarded([&] {
    const auto mean = oc_side(oc, hypothesis).expected_overshoot();
    if (!mean) {
      seqoc::fail(seqoc::ErrorCode::boundary_unreachable,
                  "boundary is never hit; overshoot is undefined");
    }
    store(out, *mean);
  });
}

seqoc_status seqoc_oc_overshoot_count(const seqoc_oc* oc, int hypothesis, size_t* out) {
  return guarded([&] { store(out, oc_side(oc, hypothesis).overshoot_dist.size()); });
}

seqoc_status seqoc_oc_overshoot_entry(const seqoc_oc* oc, int hypothesis, size_t index,
                                      double* value, double* probability) {
  return guarded([&] {
    const auto& dist = oc_side(oc, hypothesis).overshoot_dist;
    require(index < dist.size(), "overshoot index out of range");
    store(value, dist[index].first);
    store(probability, dist[index].second);
  });
}

seqoc_status seqoc_oc_is_exact(const seqoc_oc* oc, int* out) {
  return guarded([&] {
    require(oc != nullptr, "oc handle must not be NULL");
    store(out, oc->oc.exact ? 1 : 0);
  });
}

seqoc_status seqoc_oc_pr_reject_rational(const seqoc_oc* oc, int hypothesis, char** out) {
  return guarded([&] {
    require(oc != nullptr, "oc handle must not be NULL");
    require(out != nullptr, "output pointer must not be NULL");
    const auto hyp = checked_hypothesis(hypothesis);
    if (!oc->exact) {
      seqoc::fail(seqoc::ErrorCode::exact_unavailable,
                  "this result was not produced by the exact engine");
    }
    *out = dup_string(seqoc::format_rational(oc->exact->side(hyp).pr_reject));
  });
}

seqoc_status seqoc_expected_overshoot(const seqoc_model* model, const char* boundary, int64_t cap,
                                      int hypothesis, int engine, double* out) {
  return guarded([&] {
    const auto& pair = deref(model);
    auto b = parse_arg(boundary, "boundary");
    const auto design = seqoc::TargetRatioDesign::make(b.value, checked_int(cap, "cap"), b.value,
                                                       b.exact, b.exact);
    if (!seqoc::boundary_reachable(pair, design.boundary, design.cap)) {
      seqoc::fail(seqoc::ErrorCode::boundary_unreachable,
                  "boundary " + seqoc::format_double(design.boundary) +
                      " cannot be reached within " + std::to_string(design.cap) +
                      " observations");
    }
    const auto oc = seqoc::compute_oc(pair, seqoc::Design{design}, checked_engine(engine));
    const auto mean = oc.side(checked_hypothesis(hypothesis)).expected_overshoot();
    if (!mean) {
      seqoc::fail(seqoc::ErrorCode::boundary_unreachable, "boundary hit probability is zero");
    }
    store(out, *mean);
  });
}

seqoc_status seqoc_epsilon_delta(const seqoc_model* model, const char* boundary, int64_t cap,
                                 int engine, double* epsilon, double* delta) {
  return guarded([&] {
    const auto& pair = deref(model);
    auto b = parse_arg(boundary, "boundary");
    const auto design = seqoc::TargetRatioDesign::make(b.value, checked_int(cap, "cap"), b.value,
                                                       b.exact, b.exact);
    const auto oc = seqoc::compute_oc(pair, seqoc::Design{design}, checked_engine(engine));
    store(epsilon, 1.0 / design.boundary - oc.h0.pr_reject, "epsilon pointer must not be NULL");
    store(delta, 1.0 - oc.ha.pr_reject, "delta pointer must not be NULL");
  });
}

/* --- policy ------------------------------------------------------------------ */

seqoc_status seqoc_policy_solve(const seqoc_model* model, const char* pr_h0, const char* u_type1,
                                const char* u_correct_nonrej, const char* u_correct_rej,
                                const char* u_type2, int64_t n, int64_t m, int engine,
                                seqoc_policy** out) {
  return guarded([&] {
    const auto problem = seqoc::PolicyProblem::make(
        deref(model), seqoc::Beliefs::from_pr_h0(parse_arg(pr_h0, "pr_h0").value),
        seqoc::UtilityTable::make(parse_arg(u_type1, "u_type1").value,
                                  parse_arg(u_correct_nonrej, "u_correct_nonrej").value,
                                  parse_arg(u_correct_rej, "u_correct_rej").value,
                                  parse_arg(u_type2, "u_type2").value),
        checked_int(n, "n"), checked_int(m, "m"));
    emplace_handle(out, seqoc::penalty_decision(problem, checked_engine(engine)));
  });
}

void seqoc_policy_free(seqoc_policy* policy) { delete policy; }

namespace {

const seqoc::PolicyDecision& deref(const seqoc_policy* p) {
  require(p != nullptr, "policy handle must not be NULL");
  return p->decision;
}

}  // namespace

seqoc_status seqoc_policy_pw(const seqoc_policy* p, double* out) {
  return guarded([&] { store(out, deref(p).pw); });
}

seqoc_status seqoc_policy_delta0(const seqoc_policy* p, double* out) {
  return guarded([&] { store(out, deref(p).delta0); });
}

seqoc_status seqoc_policy_delta_a(const seqoc_policy* p, double* out) {
  return guarded([&] { store(out, deref(p).delta_a); });
}

seqoc_status seqoc_policy_epsilon(const seqoc_policy* p, double* out) {
  return guarded([&] { store(out, deref(p).epsilon); });
}

seqoc_status seqoc_policy_delta(const seqoc_policy* p, double* out) {
  return guarded([&] { store(out, deref(p).delta); });
}

seqoc_status seqoc_policy_alpha(const seqoc_policy* p, double* out) {
  return guarded([&] { store(out, deref(p).alpha); });
}

seqoc_status seqoc_policy_beta(const seqoc_policy* p, double* out) {
  return guarded([&] { store(out, deref(p).beta); });
}

seqoc_status seqoc_policy_penalty_required(const seqoc_policy* p, int* out) {
  return guarded([&] { store(out, deref(p).penalty_required ? 1 : 0); });
}

seqoc_status seqoc_policy_recommended_lr_f(const seqoc_policy* p, double* out) {
  return guarded([&] { store(out, deref(p).recommended_lr_f); });
}

seqoc_status seqoc_policy_recommended_lr_t(const seqoc_policy* p, double* out) {
  return guarded([&] { store(out, deref(p).recommended_lr_t); });
}

seqoc_status seqoc_policy_predicted_choice(const seqoc_policy* p, int* out) {
  return guarded([&] {
    store(out, deref(p).predicted_choice == seqoc::DesignChoice::fixed_sample
                   ? static_cast<int>(SEQOC_CHOICE_FIXED)
                   : static_cast<int>(SEQOC_CHOICE_TARGET));
  });
}

seqoc_status seqoc_policy_eu_fixed(const seqoc_policy* p, double* out) {
  return guarded([&] { store(out, deref(p).eu_fixed); });
}

seqoc_status seqoc_policy_eu_target(const seqoc_policy* p, double* out) {
  return guarded([&] { store(out, deref(p).eu_target); });
}

seqoc_status seqoc_cutoff_interval(const seqoc_model* model, int64_t n, const char* cutoff,
                                   double* lo, double* hi) {
  return guarded([&] {
    const auto interval = seqoc::cutoff_interval(deref(model), checked_int(n, "n"),
                                                 parse_arg(cutoff, "cutoff").value);
    store(lo, interval.first, "lo pointer must not be NULL");
    store(hi, interval.second, "hi pointer must not be NULL");
  });
}

seqoc_status seqoc_best_response(const seqoc_model* model, int64_t n, int64_t m, const char* lr_f,
                                 const char* lr_t, const char* q, int* out_choice,
                                 double* out_approval) {
  return guarded([&] {
    const auto response = seqoc::scientist_best_response(
        deref(model), checked_int(n, "n"), checked_int(m, "m"), parse_arg(lr_f, "lr_f").value,
        parse_arg(lr_t, "lr_t").value, parse_arg(q, "q").value);
    store(out_choice,
          response.choice == seqoc::DesignChoice::fixed_sample
              ? static_cast<int>(SEQOC_CHOICE_FIXED)
              : static_cast<int>(SEQOC_CHOICE_TARGET),
          "choice pointer must not be NULL");
    store(out_approval, response.approval_probability, "approval pointer must not be NULL");
  });
}

/* --- Monte Carlo --------------------------------------------------------------- */

seqoc_status seqoc_mc_run(const seqoc_model* model, const seqoc_design* design, int hypothesis,
                          uint64_t reps, uint64_t seed, seqoc_mc** out) {
  return guarded([&] {
    emplace_handle(out, seqoc::mc_oc(deref(design), deref(model), checked_hypothesis(hypothesis),
                                     reps, seed));
  });
}

seqoc_status seqoc_mc_run_sharded(const seqoc_model* model, const seqoc_design* design,
                                  int hypothesis, uint64_t reps, uint64_t seed, uint32_t shards,
                                  seqoc_mc** out) {
  return guarded([&] {
    emplace_handle(out, seqoc::mc_oc_sharded(deref(design), deref(model),
                                             checked_hypothesis(hypothesis), reps, seed, shards));
  });
}

void seqoc_mc_free(seqoc_mc* mc) { delete mc; }

namespace {

void store_estimate(const seqoc_mc* mc, const seqoc::McEstimate seqoc::McOc::* field,
                    seqoc_mc_estimate* out) {
  require(mc != nullptr, "mc handle must not be NULL");
  require(out != nullptr, "output pointer must not be NULL");
  const auto& e = mc->oc.*field;
  *out = seqoc_mc_estimate{e.mean, e.stderr_, e.reps, e.seed};
}

}  // namespace

seqoc_status seqoc_mc_pr_reject(const seqoc_mc* mc, seqoc_mc_estimate* out) {
  return guarded([&] { store_estimate(mc, &seqoc::McOc::pr_reject, out); });
}

seqoc_status seqoc_mc_pr_hit(const seqoc_mc* mc, seqoc_mc_estimate* out) {
  return guarded([&] { store_estimate(mc, &seqoc::McOc::pr_hit, out); });
}

seqoc_status seqoc_mc_expected_n(const seqoc_mc* mc, seqoc_mc_estimate* out) {
  return guarded([&] { store_estimate(mc, &seqoc::McOc::expected_n, out); });
}

/* --- verification suite ----------------------------------------------------------- */

seqoc_status seqoc_verify_run(uint64_t mc_reps, uint64_t seed, const char* inject_fault,
                              const char* only, seqoc_verify** out) {
  return guarded([&] {
    seqoc::VerifyOptions options;
    options.mc_reps = mc_reps;
    options.seed = seed;
    options.inject_fault = inject_fault == nullptr ? "" : inject_fault;
    options.only = only == nullptr ? "" : only;
    emplace_handle(out, seqoc::run_acceptance_suite(options));
  });
}

void seqoc_verify_free(seqoc_verify* report) { delete report; }

namespace {

const seqoc::CheckResult& check_at(const seqoc_verify* report, size_t index) {
  require(report != nullptr, "verify handle must not be NULL");
  require(index < report->results.size(), "check index out of range");
  return report->results[index];
}

}  // namespace

seqoc_status seqoc_verify_count(const seqoc_verify* report, size_t* out) {
  return guarded([&] {
    require(report != nullptr, "verify handle must not be NULL");
    store(out, report->results.size());
  });
}

seqoc_status seqoc_verify_passed(const seqoc_verify* report, size_t index, int* out) {
  return guarded([&] { store(out, check_at(report, index).passed ? 1 : 0); });
}

seqoc_status seqoc_verify_all_passed(const seqoc_verify* report, int* out) {
  return guarded([&] {
    require(report != nullptr, "verify handle must not be NULL");
    store(out, seqoc::all_passed(report->results) ? 1 : 0);
  });
}

const char* seqoc_verify_id(const seqoc_verify* report, size_t index) {
  if (report == nullptr || index >= report->results.size()) return nullptr;
  return report->results[index].id.c_str();
}

const char* seqoc_verify_name(const seqoc_verify* report, size_t index) {
  if (report == nullptr || index >= report->results.size()) return nullptr;
  return report->results[index].name.c_str();
}

const char* seqoc_verify_detail(const seqoc_verify* report, size_t index) {
  if (report == nullptr || index >= report->results.size()) return nullptr;
  return report->results[index].detail.c_str();
}

seqoc_status seqoc_verify_elapsed_ms(const seqoc_verify* report, size_t index, double* out) {
  return guarded([&] { store(out, check_at(report, index).elapsed_ms); });
}

} /* extern "C" */
