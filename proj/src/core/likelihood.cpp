#include "core/likelihood.hpp"

#include <cmath>

namespace seqoc {

double log_lr_step(Outcome outcome, const BernoulliPair& model) {
  return outcome == Outcome::success ? std::log(model.pa) - std::log(model.p0)
                                     : std::log1p(-model.pa) - std::log1p(-model.p0);
}

double lr_step_ratio(Outcome outcome, const BernoulliPair& model) {
  if (model.has_exact()) {
    const Rational& p0 = *model.p0_exact;
    const Rational& pa = *model.pa_exact;
    const Rational r = outcome == Outcome::success ? Rational(pa / p0)
                                                   : Rational((1 - pa) / (1 - p0));
    return rational_to_double(r);
  }
  return outcome == Outcome::success ? model.pa / model.p0
                                     : (1.0 - model.pa) / (1.0 - model.p0);
}

double log_lr_of_counts(const BernoulliPair& model, std::int64_t successes, std::int64_t failures) {
  if (successes < 0 || failures < 0) {
    fail(ErrorCode::invalid_argument, "counts must be nonnegative");
  }
  return static_cast<double>(successes) * log_lr_step(Outcome::success, model) +
         static_cast<double>(failures) * log_lr_step(Outcome::failure, model);
}

double log_lr_of_sequence(const OutcomeSequence& seq, const BernoulliPair& model) {
  std::int64_t successes = 0;
  for (Outcome o : seq) successes += (o == Outcome::success);
  return log_lr_of_counts(model, successes, static_cast<std::int64_t>(seq.size()) - successes);
}

double posterior_odds_ha(const Beliefs& beliefs, double log_lr) {
  return (beliefs.pr_ha / beliefs.pr_h0) * std::exp(log_lr);
}

double outcome_probability(const OutcomeSequence& seq, Hypothesis hyp,
                           const BernoulliPair& model) {
  const double p = hyp == Hypothesis::h0 ? model.p0 : model.pa;
  double log_prob = 0.0;
  for (Outcome o : seq) {
    log_prob += o == Outcome::success ? std::log(p) : std::log1p(-p);
  }
  return std::exp(log_prob);
}

}  // namespace seqoc
