/* seqoc — exact operating characteristics and optimal-stopping policy
 * analysis for two-hypothesis Bernoulli experiments.
 *
 * C interface over the C++ engine: opaque handles, integer status codes, and
 * UTF-8 strings.  Every function that can fail returns seqoc_status; on
 * failure, seqoc_last_error() returns a thread-local human-readable message.
 *
 * Numeric inputs that benefit from exactness (probabilities, cutoffs) are
 * accepted as strings: "3/7" and "0.375" parse to exact rationals, enabling
 * the exact rational engine; plain-double entry points are provided where
 * exactness cannot matter.  "inf" (or a C infinity through the double entry
 * points) is the distinguished never-reject cutoff.
 */
#ifndef SEQOC_H
#define SEQOC_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#ifndef SEQOC_API
#define SEQOC_API __attribute__((visibility("default")))
#endif

typedef enum seqoc_status {
  SEQOC_OK = 0,
  SEQOC_ERR_INVALID_ARGUMENT = 1,
  SEQOC_ERR_PARSE = 2,
  SEQOC_ERR_INVALID_STOP = 3,          /* sequence is not a complete stopped path */
  SEQOC_ERR_SEQUENCE_TOO_SHORT = 4,    /* design needs more outcomes than provided */
  SEQOC_ERR_BOUNDARY_UNREACHABLE = 5,  /* the boundary cannot be hit within the cap */
  SEQOC_ERR_HORIZON_TOO_LARGE = 6,     /* exhaustive enumeration cap exceeded */
  SEQOC_ERR_EXACT_UNAVAILABLE = 7,     /* exact engine cap exceeded */
  SEQOC_ERR_INTERNAL = 8
} seqoc_status;

/* Engine selection for operating-characteristic computations. */
typedef enum seqoc_engine {
  SEQOC_ENGINE_AUTO = 0,  /* exact when the model is exact and the horizon allows, else float */
  SEQOC_ENGINE_FLOAT = 1, /* log-space dynamic programming in double precision */
  SEQOC_ENGINE_EXACT = 2  /* rational arithmetic; horizons up to 64 */
} seqoc_engine;

typedef enum seqoc_hypothesis { SEQOC_H0 = 0, SEQOC_HA = 1 } seqoc_hypothesis;

typedef enum seqoc_choice { SEQOC_CHOICE_FIXED = 0, SEQOC_CHOICE_TARGET = 1 } seqoc_choice;

typedef struct seqoc_model seqoc_model;       /* a pair of Bernoulli hypotheses */
typedef struct seqoc_design seqoc_design;     /* a stopping/rejection design */
typedef struct seqoc_oc seqoc_oc;             /* operating characteristics */
typedef struct seqoc_policy seqoc_policy;     /* a resolved policy decision */
typedef struct seqoc_mc seqoc_mc;             /* Monte Carlo estimates */
typedef struct seqoc_verify seqoc_verify;     /* verification-suite report */

SEQOC_API const char* seqoc_version(void);
SEQOC_API const char* seqoc_status_name(seqoc_status status);

/* Message for the most recent failure on this thread; never NULL. */
SEQOC_API const char* seqoc_last_error(void);

/* Releases a string returned through a char** output parameter. */
SEQOC_API void seqoc_string_free(char* s);

/* --- models ---------------------------------------------------------------
 * p0 and pa are the success probabilities under H0 and Ha, strictly inside
 * (0, 1).  String inputs carry exact rationals into the engine.
 */
SEQOC_API seqoc_status seqoc_model_new(const char* p0, const char* pa, seqoc_model** out);
SEQOC_API seqoc_status seqoc_model_new_f64(double p0, double pa, seqoc_model** out);
SEQOC_API void seqoc_model_free(seqoc_model* model);
SEQOC_API seqoc_status seqoc_model_p0(const seqoc_model* model, double* out);
SEQOC_API seqoc_status seqoc_model_pa(const seqoc_model* model, double* out);
/* 1 when the model carries exact rationals (string construction), else 0. */
SEQOC_API seqoc_status seqoc_model_is_exact(const seqoc_model* model, int* out);

/* --- designs ---------------------------------------------------------------
 * Fixed-sample: observe exactly n outcomes, reject iff the final likelihood
 * ratio is >= cutoff.  Target-ratio: stop once the likelihood ratio reaches
 * `boundary` (> 1) or after `cap` outcomes, reject iff the final ratio is >=
 * cutoff.  Pass NULL as the target cutoff to reuse the boundary.
 */
SEQOC_API seqoc_status seqoc_design_fixed_new(int64_t n, const char* cutoff, seqoc_design** out);
SEQOC_API seqoc_status seqoc_design_fixed_new_f64(int64_t n, double cutoff, seqoc_design** out);
SEQOC_API seqoc_status seqoc_design_target_new(const char* boundary, int64_t cap,
                                               const char* cutoff, seqoc_design** out);
SEQOC_API seqoc_status seqoc_design_target_new_f64(double boundary, int64_t cap, double cutoff,
                                                   seqoc_design** out);
SEQOC_API void seqoc_design_free(seqoc_design* design);
/* SEQOC_CHOICE_FIXED or SEQOC_CHOICE_TARGET. */
SEQOC_API seqoc_status seqoc_design_kind(const seqoc_design* design, int* out);
/* n for fixed designs, cap for target designs. */
SEQOC_API seqoc_status seqoc_design_horizon(const seqoc_design* design, int64_t* out);

/* --- likelihood ratios ------------------------------------------------------
 * outcome: 1 = success, 0 = failure; sequences are uint8_t arrays of those.
 */
SEQOC_API seqoc_status seqoc_log_lr_step(const seqoc_model* model, int outcome, double* out);
SEQOC_API seqoc_status seqoc_lr_step_ratio(const seqoc_model* model, int outcome, double* out);
SEQOC_API seqoc_status seqoc_log_lr_of_counts(const seqoc_model* model, int64_t successes,
                                              int64_t failures, double* out);
/* Posterior odds of Ha against H0 from a prior Pr(H0) and an observed log LR. */
SEQOC_API seqoc_status seqoc_posterior_odds_ha(double pr_h0, double log_lr, double* out);

typedef struct seqoc_trajectory {
  int64_t stop_index;
  double final_log_lr;
  int hit_boundary;
  double overshoot;
  int rejected;
} seqoc_trajectory;

/* Runs the design over the sequence; extra trailing outcomes are ignored. */
SEQOC_API seqoc_status seqoc_run_trajectory(const seqoc_model* model, const seqoc_design* design,
                                            const uint8_t* outcomes, size_t len,
                                            seqoc_trajectory* out);

/* Probability of observing exactly this sequence under the hypothesis; the
 * design must stop at its final element and not before. */
SEQOC_API seqoc_status seqoc_sequence_probability(const seqoc_model* model,
                                                  const seqoc_design* design,
                                                  const uint8_t* outcomes, size_t len,
                                                  int hypothesis, double* out);

/* --- operating characteristics --------------------------------------------- */
SEQOC_API seqoc_status seqoc_oc_compute(const seqoc_model* model, const seqoc_design* design,
                                        int engine, seqoc_oc** out);
/* Exact OC by exhaustive path enumeration (horizons up to 20). */
SEQOC_API seqoc_status seqoc_oc_enumerate(const seqoc_model* model, const seqoc_design* design,
                                          seqoc_oc** out);
SEQOC_API void seqoc_oc_free(seqoc_oc* oc);
SEQOC_API seqoc_status seqoc_oc_pr_reject(const seqoc_oc* oc, int hypothesis, double* out);
SEQOC_API seqoc_status seqoc_oc_expected_n(const seqoc_oc* oc, int hypothesis, double* out);
SEQOC_API seqoc_status seqoc_oc_pr_hit(const seqoc_oc* oc, int hypothesis, double* out);
/* Mean overshoot conditional on hitting; SEQOC_ERR_BOUNDARY_UNREACHABLE when
 * the boundary is never hit. */
SEQOC_API seqoc_status seqoc_oc_expected_overshoot(const seqoc_oc* oc, int hypothesis,
                                                   double* out);
SEQOC_API seqoc_status seqoc_oc_overshoot_count(const seqoc_oc* oc, int hypothesis, size_t* out);
SEQOC_API seqoc_status seqoc_oc_overshoot_entry(const seqoc_oc* oc, int hypothesis, size_t index,
                                                double* value, double* probability);
/* 1 when produced by the exact rational engine. */
SEQOC_API seqoc_status seqoc_oc_is_exact(const seqoc_oc* oc, int* out);
/* Exact rejection probability as a rational string "num/den"; only for exact
 * results (SEQOC_ERR_EXACT_UNAVAILABLE otherwise).  Free with seqoc_string_free. */
SEQOC_API seqoc_status seqoc_oc_pr_reject_rational(const seqoc_oc* oc, int hypothesis, char** out);

/* Mean overshoot for the target design with rejection cutoff = boundary. */
SEQOC_API seqoc_status seqoc_expected_overshoot(const seqoc_model* model, const char* boundary,
                                                int64_t cap, int hypothesis, int engine,
                                                double* out);
/* Shortfall of the H0 rejection probability below 1/boundary, and the Ha
 * non-rejection probability, for the target design with cutoff = boundary. */
SEQOC_API seqoc_status seqoc_epsilon_delta(const seqoc_model* model, const char* boundary,
                                           int64_t cap, int engine, double* epsilon,
                                           double* delta);

/* --- policy -----------------------------------------------------------------
 * Solves the regulator's problem: fixed design (n observations) vs target
 * design (cap m) at the expected-utility-optimal cutoff P*W.
 */
SEQOC_API seqoc_status seqoc_policy_solve(const seqoc_model* model, const char* pr_h0,
                                          const char* u_type1, const char* u_correct_nonrej,
                                          const char* u_correct_rej, const char* u_type2,
                                          int64_t n, int64_t m, int engine, seqoc_policy** out);
SEQOC_API void seqoc_policy_free(seqoc_policy* policy);
SEQOC_API seqoc_status seqoc_policy_pw(const seqoc_policy* p, double* out);
SEQOC_API seqoc_status seqoc_policy_delta0(const seqoc_policy* p, double* out);
SEQOC_API seqoc_status seqoc_policy_delta_a(const seqoc_policy* p, double* out);
SEQOC_API seqoc_status seqoc_policy_epsilon(const seqoc_policy* p, double* out);
SEQOC_API seqoc_status seqoc_policy_delta(const seqoc_policy* p, double* out);
SEQOC_API seqoc_status seqoc_policy_alpha(const seqoc_policy* p, double* out);
SEQOC_API seqoc_status seqoc_policy_beta(const seqoc_policy* p, double* out);
SEQOC_API seqoc_status seqoc_policy_penalty_required(const seqoc_policy* p, int* out);
SEQOC_API seqoc_status seqoc_policy_recommended_lr_f(const seqoc_policy* p, double* out);
/* +inf when the target design is disallowed. */
SEQOC_API seqoc_status seqoc_policy_recommended_lr_t(const seqoc_policy* p, double* out);
SEQOC_API seqoc_status seqoc_policy_predicted_choice(const seqoc_policy* p, int* out);
SEQOC_API seqoc_status seqoc_policy_eu_fixed(const seqoc_policy* p, double* out);
SEQOC_API seqoc_status seqoc_policy_eu_target(const seqoc_policy* p, double* out);

/* Half-open interval (lo, hi] of cutoffs with the same fixed-design rejection
 * region as `cutoff` at sample size n; hi = +inf for an empty region. */
SEQOC_API seqoc_status seqoc_cutoff_interval(const seqoc_model* model, int64_t n,
                                             const char* cutoff, double* lo, double* hi);

/* The scientist's best response to announced cutoffs (">= 1" or "inf"),
 * maximizing approval probability under belief q on Ha.  Ties go to the fixed
 * design, except that lr_t <= lr_f always selects the target design. */
SEQOC_API seqoc_status seqoc_best_response(const seqoc_model* model, int64_t n, int64_t m,
                                           const char* lr_f, const char* lr_t, const char* q,
                                           int* out_choice, double* out_approval);

/* --- Monte Carlo ------------------------------------------------------------
 * Deterministic for a given seed, independent of shard count.
 */
typedef struct seqoc_mc_estimate {
  double mean;
  double stderr_;
  uint64_t reps;
  uint64_t seed;
} seqoc_mc_estimate;

SEQOC_API seqoc_status seqoc_mc_run(const seqoc_model* model, const seqoc_design* design,
                                    int hypothesis, uint64_t reps, uint64_t seed, seqoc_mc** out);
SEQOC_API seqoc_status seqoc_mc_run_sharded(const seqoc_model* model, const seqoc_design* design,
                                            int hypothesis, uint64_t reps, uint64_t seed,
                                            uint32_t shards, seqoc_mc** out);
SEQOC_API void seqoc_mc_free(seqoc_mc* mc);
SEQOC_API seqoc_status seqoc_mc_pr_reject(const seqoc_mc* mc, seqoc_mc_estimate* out);
SEQOC_API seqoc_status seqoc_mc_pr_hit(const seqoc_mc* mc, seqoc_mc_estimate* out);
SEQOC_API seqoc_status seqoc_mc_expected_n(const seqoc_mc* mc, seqoc_mc_estimate* out);

/* --- verification suite ------------------------------------------------------
 * Runs the built-in checks.  inject_fault: NULL/"" for none, or a known fault
 * id ("wrong-sign-deltaA") to deliberately break one check.  only: NULL/"" for
 * the full suite, or a check id ("c1".."c10") to run a single check.
 */
SEQOC_API seqoc_status seqoc_verify_run(uint64_t mc_reps, uint64_t seed, const char* inject_fault,
                                        const char* only, seqoc_verify** out);
SEQOC_API void seqoc_verify_free(seqoc_verify* report);
SEQOC_API seqoc_status seqoc_verify_count(const seqoc_verify* report, size_t* out);
SEQOC_API seqoc_status seqoc_verify_passed(const seqoc_verify* report, size_t index, int* out);
SEQOC_API seqoc_status seqoc_verify_all_passed(const seqoc_verify* report, int* out);
/* Strings are owned by the report handle. */
SEQOC_API const char* seqoc_verify_id(const seqoc_verify* report, size_t index);
SEQOC_API const char* seqoc_verify_name(const seqoc_verify* report, size_t index);
SEQOC_API const char* seqoc_verify_detail(const seqoc_verify* report, size_t index);
SEQOC_API seqoc_status seqoc_verify_elapsed_ms(const seqoc_verify* report, size_t index,
                                               double* out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* SEQOC_H */
