#include "core/types.hpp"

#include <cmath>

namespace seqoc {

namespace {

void check_open_unit(double p, const char* name) {
  if (!std::isfinite(p) || p <= 0.0 || p >= 1.0) {
    fail(ErrorCode::invalid_argument,
         std::string(name) + " must lie strictly between 0 and 1, got " + format_double(p));
  }
}

}  // namespace

BernoulliPair BernoulliPair::from_doubles(double p0, double pa) {
  check_open_unit(p0, "p0");
  check_open_unit(pa, "pa");
  return BernoulliPair{p0, pa, std::nullopt, std::nullopt};
}

BernoulliPair BernoulliPair::from_rationals(const Rational& p0, const Rational& pa) {
  if (p0 <= 0 || p0 >= 1) {
    fail(ErrorCode::invalid_argument,
         "p0 must lie strictly between 0 and 1, got " + format_rational(p0));
  }
  if (pa <= 0 || pa >= 1) {
    fail(ErrorCode::invalid_argument,
         "pa must lie strictly between 0 and 1, got " + format_rational(pa));
  }
  return BernoulliPair{rational_to_double(p0), rational_to_double(pa), p0, pa};
}

Beliefs Beliefs::from_pr_h0(double pr_h0) {
  if (!std::isfinite(pr_h0) || pr_h0 <= 0.0 || pr_h0 >= 1.0) {
    fail(ErrorCode::invalid_argument,
         "prior Pr(H0) must lie strictly between 0 and 1, got " + format_double(pr_h0));
  }
  return Beliefs{pr_h0, 1.0 - pr_h0};
}

Beliefs Beliefs::from_pair(double pr_h0, double pr_ha) {
  if (std::fabs(pr_h0 + pr_ha - 1.0) > 1e-12) {
    fail(ErrorCode::invalid_argument, "prior probabilities must sum to 1");
  }
  return from_pr_h0(pr_h0);
}

UtilityTable UtilityTable::make(double u_type1, double u_correct_nonrej, double u_correct_rej,
                                double u_type2) {
  for (double u : {u_type1, u_correct_nonrej, u_correct_rej, u_type2}) {
    if (!std::isfinite(u)) fail(ErrorCode::invalid_argument, "utilities must be finite");
  }
  UtilityTable t{u_type1, u_correct_nonrej, u_correct_rej, u_type2};
  if (!(t.gap_h0() > 0.0)) {
    fail(ErrorCode::invalid_argument,
         "correct non-rejection must be strictly preferred to a type I error");
  }
  if (!(t.gap_ha() > 0.0)) {
    fail(ErrorCode::invalid_argument,
         "correct rejection must be strictly preferred to a type II error");
  }
  return t;
}

ExactModel exact_model_of(const BernoulliPair& model) {
  return ExactModel{
      model.p0_exact ? *model.p0_exact : rational_from_double(model.p0),
      model.pa_exact ? *model.pa_exact : rational_from_double(model.pa),
  };
}

}  // namespace seqoc
