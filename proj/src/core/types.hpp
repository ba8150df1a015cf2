#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "core/rational.hpp"

namespace seqoc {

// Error taxonomy shared by every module; the C API maps `code` onto its
// status enum, so each failure mode keeps a stable identity across the ABI.
enum class ErrorCode : int {
  invalid_argument = 1,
  parse_error = 2,
  invalid_stop = 3,
  sequence_too_short = 4,
  boundary_unreachable = 5,
  horizon_too_large = 6,
  exact_unavailable = 7,
  internal = 8,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

enum class Outcome : std::uint8_t { failure = 0, success = 1 };
using OutcomeSequence = std::vector<Outcome>;

enum class Hypothesis : std::uint8_t { h0 = 0, ha = 1 };

// Two simple hypotheses about one Bernoulli success probability.  Each
// probability may carry an exact rational alongside its double; the exact
// engine uses the rationals, everything else the doubles.  `p0 == pa` is
// accepted here (the likelihood ratio is then constantly 1) but rejected by
// every boundary-crossing computation.
struct BernoulliPair {
  double p0 = 0;
  double pa = 0;
  std::optional<Rational> p0_exact;
  std::optional<Rational> pa_exact;

  static BernoulliPair from_doubles(double p0, double pa);
  static BernoulliPair from_rationals(const Rational& p0, const Rational& pa);
  bool has_exact() const { return p0_exact.has_value() && pa_exact.has_value(); }
};

// Prior probabilities over the two hypotheses; must sum to 1.
struct Beliefs {
  double pr_h0 = 0;
  double pr_ha = 0;

  static Beliefs from_pr_h0(double pr_h0);
  static Beliefs from_pair(double pr_h0, double pr_ha);
  double prior_odds_h0() const { return pr_h0 / pr_ha; }
};

// Utilities of the four (decision, truth) outcomes.  Correct decisions must
// be strictly preferred to the matching errors.
struct UtilityTable {
  double u_type1 = 0;        // reject when H0 true
  double u_correct_nonrej = 0;  // not reject when H0 true
  double u_correct_rej = 0;  // reject when Ha true
  double u_type2 = 0;        // not reject when Ha true

  static UtilityTable make(double u_type1, double u_correct_nonrej, double u_correct_rej,
                           double u_type2);
  double gap_h0() const { return u_correct_nonrej - u_type1; }
  double gap_ha() const { return u_correct_rej - u_type2; }
};

// The exact-rational view of a model: declared rationals when present,
// otherwise the (exact) dyadic values of the doubles.
struct ExactModel {
  Rational p0;
  Rational pa;
};
ExactModel exact_model_of(const BernoulliPair& model);

inline const char* hypothesis_name(Hypothesis h) { return h == Hypothesis::h0 ? "H0" : "Ha"; }

}  // namespace seqoc
