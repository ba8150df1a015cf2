// seqoc command-line front end.  Everything numeric flows through the public
// C API; config values are handed over as the literal text they were written
// as, so fractions and decimals reach the exact engine intact.
//
// Exit codes: 0 success, 1 verification failure or internal error,
// 2 configuration error, 3 degenerate scenario (unreachable boundary,
// horizon overflow, exact engine unavailable).

#include <seqoc/seqoc.h>

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <deque>
#include <fstream>
#include <future>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "config.hpp"

namespace {

using seqoc::cli::ConfigError;
using seqoc::cli::NumericValue;
using seqoc::cli::ScenarioConfig;
using ordered_json = nlohmann::ordered_json;

// A domain failure carrying its exit code (see the contract above).
struct CliFailure {
  int exit_code;
  std::string message;
};

int exit_code_for(seqoc_status status) {
  switch (status) {
    case SEQOC_ERR_INVALID_ARGUMENT:
    case SEQOC_ERR_PARSE:
      return 2;
    case SEQOC_ERR_BOUNDARY_UNREACHABLE:
    case SEQOC_ERR_HORIZON_TOO_LARGE:
    case SEQOC_ERR_EXACT_UNAVAILABLE:
      return 3;
    default:
      return 1;
  }
}

void check(seqoc_status status, const std::string& context) {
  if (status != SEQOC_OK) {
    throw CliFailure{exit_code_for(status),
                     context + ": " + seqoc_last_error() + " (" +
                         seqoc_status_name(status) + ")"};
  }
}

// RAII over the C API's opaque handles.
template <typename T, void (*FreeFn)(T*)>
class Handle {
 public:
  Handle() = default;
  ~Handle() { reset(); }
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  Handle(Handle&& other) noexcept : ptr_(other.ptr_) { other.ptr_ = nullptr; }
  Handle& operator=(Handle&& other) noexcept {
    if (this != &other) {
      reset();
      ptr_ = other.ptr_;
      other.ptr_ = nullptr;
    }
    return *this;
  }
  T** out() {
    reset();
    return &ptr_;
  }
  T* get() const { return ptr_; }
  explicit operator bool() const { return ptr_ != nullptr; }

 private:
  void reset() {
    if (ptr_ != nullptr) FreeFn(ptr_);
    ptr_ = nullptr;
  }
  T* ptr_ = nullptr;
};

using ModelHandle = Handle<seqoc_model, seqoc_model_free>;
using DesignHandle = Handle<seqoc_design, seqoc_design_free>;
using OcHandle = Handle<seqoc_oc, seqoc_oc_free>;
using PolicyHandle = Handle<seqoc_policy, seqoc_policy_free>;
using McHandle = Handle<seqoc_mc, seqoc_mc_free>;
using VerifyHandle = Handle<seqoc_verify, seqoc_verify_free>;

// 12 significant digits, "inf" for infinities — the CSV/report number format.
std::string fmt(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string fmt(const std::optional<double>& v) { return v ? fmt(*v) : std::string(); }

// Shortest text that parses back to exactly this double — used when a
// computed value (e.g. PW) is fed back through the string-based C API.
std::string exact_text(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  for (int prec = 1; prec < 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) return buf;
  }
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

ordered_json json_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";  // JSON has no infinities
  return v;
}

int checked_engine_flag(bool exact) { return exact ? SEQOC_ENGINE_EXACT : SEQOC_ENGINE_AUTO; }

ModelHandle make_model(const NumericValue& p0, const NumericValue& pa) {
  ModelHandle model;
  check(seqoc_model_new(p0.raw.c_str(), pa.raw.c_str(), model.out()), "model");
  return model;
}

// Writes `text` to stdout or, when a path was given, to that file.
void emit_csv(const std::string& csv_path, const std::string& text) {
  if (csv_path.empty()) return;
  std::ofstream out(csv_path);
  if (!out) throw CliFailure{2, "cannot open CSV output file: " + csv_path};
  out << text;
}

// ---------------------------------------------------------------------------
// oc: operating characteristics of the configured design(s)
// ---------------------------------------------------------------------------

struct OcRow {
  std::string design;  // "fixed" | "target"
  double horizon = 0;
  std::optional<double> boundary;
  double cutoff = 0;
  double pr_reject0 = 0, pr_rejectA = 0;
  std::optional<double> pr_hit0, pr_hitA;
  double exp_n0 = 0, exp_nA = 0;
  std::optional<double> overshoot0, overshootA;
  std::optional<double> epsilon, delta;
  bool exact = false;
};

OcRow oc_row_for(const ModelHandle& model, const DesignHandle& design, int engine) {
  OcHandle oc;
  check(seqoc_oc_compute(model.get(), design.get(), engine, oc.out()), "oc");
  OcRow row;
  int kind = 0;
  int64_t horizon = 0;
  check(seqoc_design_kind(design.get(), &kind), "oc");
  check(seqoc_design_horizon(design.get(), &horizon), "oc");
  row.design = kind == SEQOC_CHOICE_FIXED ? "fixed" : "target";
  row.horizon = static_cast<double>(horizon);
  check(seqoc_oc_pr_reject(oc.get(), SEQOC_H0, &row.pr_reject0), "oc");
  check(seqoc_oc_pr_reject(oc.get(), SEQOC_HA, &row.pr_rejectA), "oc");
  check(seqoc_oc_expected_n(oc.get(), SEQOC_H0, &row.exp_n0), "oc");
  check(seqoc_oc_expected_n(oc.get(), SEQOC_HA, &row.exp_nA), "oc");
  int exact = 0;
  check(seqoc_oc_is_exact(oc.get(), &exact), "oc");
  row.exact = exact != 0;
  if (kind == SEQOC_CHOICE_TARGET) {
    double hit0 = 0, hitA = 0;
    check(seqoc_oc_pr_hit(oc.get(), SEQOC_H0, &hit0), "oc");
    check(seqoc_oc_pr_hit(oc.get(), SEQOC_HA, &hitA), "oc");
    row.pr_hit0 = hit0;
    row.pr_hitA = hitA;
    for (const int hyp : {SEQOC_H0, SEQOC_HA}) {
      double os = 0;
      const seqoc_status st = seqoc_oc_expected_overshoot(oc.get(), hyp, &os);
      if (st == SEQOC_OK) {
        (hyp == SEQOC_H0 ? row.overshoot0 : row.overshootA) = os;
      } else if (st != SEQOC_ERR_BOUNDARY_UNREACHABLE) {
        check(st, "oc");  // overshoot is simply undefined when never hit
      }
    }
  }
  return row;
}

std::string oc_csv_header() {
  return "design,p0,pa,horizon,boundary,cutoff,prReject0,prRejectA,prHit0,prHitA,"
         "expN0,expNA,expOvershoot0,expOvershootA,epsilon,delta\n";
}

std::string oc_csv_row(const OcRow& r, double p0, double pa) {
  std::ostringstream line;
  line << r.design << ',' << fmt(p0) << ',' << fmt(pa) << ',' << fmt(r.horizon) << ','
       << fmt(r.boundary) << ',' << fmt(r.cutoff) << ',' << fmt(r.pr_reject0) << ','
       << fmt(r.pr_rejectA) << ',' << fmt(r.pr_hit0) << ',' << fmt(r.pr_hitA) << ','
       << fmt(r.exp_n0) << ',' << fmt(r.exp_nA) << ',' << fmt(r.overshoot0) << ','
       << fmt(r.overshootA) << ',' << fmt(r.epsilon) << ',' << fmt(r.delta) << '\n';
  return line.str();
}

void print_oc_row(const OcRow& r) {
  if (r.design == "fixed") {
    std::printf("fixed-sample design: n = %g, rejection cutoff = %s\n", r.horizon,
                fmt(r.cutoff).c_str());
    std::printf("  Pr[reject | H0] (alpha)   %s\n", fmt(r.pr_reject0).c_str());
    std::printf("  Pr[reject | Ha] (power)   %s\n", fmt(r.pr_rejectA).c_str());
  } else {
    std::printf("target-ratio design: boundary c = %s, cap m = %g, rejection cutoff = %s\n",
                fmt(*r.boundary).c_str(), r.horizon, fmt(r.cutoff).c_str());
    std::printf("  Pr[reject | H0]           %s\n", fmt(r.pr_reject0).c_str());
    std::printf("  Pr[reject | Ha]           %s\n", fmt(r.pr_rejectA).c_str());
    std::printf("  Pr[hit boundary | H0]     %s\n", fmt(r.pr_hit0).c_str());
    std::printf("  Pr[hit boundary | Ha]     %s\n", fmt(r.pr_hitA).c_str());
    std::printf("  E[overshoot | H0]         %s\n",
                r.overshoot0 ? fmt(r.overshoot0).c_str() : "undefined (never hit)");
    std::printf("  E[overshoot | Ha]         %s\n",
                r.overshootA ? fmt(r.overshootA).c_str() : "undefined (never hit)");
    if (r.epsilon) std::printf("  epsilon = 1/c - Pr[reject | H0]   %s\n", fmt(r.epsilon).c_str());
    if (r.delta) std::printf("  delta = 1 - Pr[reject | Ha]       %s\n", fmt(r.delta).c_str());
  }
  std::printf("  E[N | H0]                 %s\n", fmt(r.exp_n0).c_str());
  std::printf("  E[N | Ha]                 %s\n", fmt(r.exp_nA).c_str());
  std::printf("  engine                    %s\n", r.exact ? "exact rational" : "floating point");
}

// Builds the design list a config declares: lrF (+ n) -> fixed sample,
// targetC (+ m, optional lrT) -> target ratio.
std::vector<DesignHandle> designs_from(const ScenarioConfig& config) {
  std::vector<DesignHandle> designs;
  if (const NumericValue* lr_f = config.maybe_scalar("lrF")) {
    if (!config.has("n")) {
      throw ConfigError("field \"n\" is required for the fixed-sample design (lrF)");
    }
    DesignHandle d;
    check(seqoc_design_fixed_new(config.integer("n"), lr_f->raw.c_str(), d.out()), "design");
    designs.push_back(std::move(d));
  }
  if (const NumericValue* c = config.maybe_scalar("targetC")) {
    if (!config.has("m")) {
      throw ConfigError("field \"m\" is required for the target-ratio design (targetC)");
    }
    const NumericValue* lr_t = config.maybe_scalar("lrT");
    DesignHandle d;
    check(seqoc_design_target_new(c->raw.c_str(), config.integer("m"),
                                  lr_t ? lr_t->raw.c_str() : nullptr, d.out()),
          "design");
    designs.push_back(std::move(d));
  }
  if (designs.empty()) {
    throw ConfigError(
        "config declares no design: set lrF (with n) and/or targetC (with m)");
  }
  return designs;
}

int cmd_oc(const std::string& config_path, const std::string& csv_path, bool exact) {
  const ScenarioConfig config = seqoc::cli::load_config_file(config_path);
  const NumericValue& p0 = config.scalar("p0");
  const NumericValue& pa = config.scalar("pa");
  const ModelHandle model = make_model(p0, pa);
  const int engine = checked_engine_flag(exact);

  std::string csv = oc_csv_header();
  bool first = true;
  for (const DesignHandle& design : designs_from(config)) {
    OcRow row = oc_row_for(model, design, engine);
    if (row.design == "fixed") {
      row.cutoff = config.scalar("lrF").value;
    } else {
      const NumericValue& c = config.scalar("targetC");
      const NumericValue* lr_t = config.maybe_scalar("lrT");
      row.boundary = c.value;
      row.cutoff = lr_t ? lr_t->value : c.value;
      if (!lr_t || lr_t->value == c.value) {  // shortfalls assume cutoff = boundary
        row.epsilon = 1.0 / c.value - row.pr_reject0;
        row.delta = 1.0 - row.pr_rejectA;
      }
    }
    if (!first) std::printf("\n");
    first = false;
    print_oc_row(row);
    csv += oc_csv_row(row, p0.value, pa.value);
  }
  emit_csv(csv_path, csv);
  return 0;
}

// ---------------------------------------------------------------------------
// policy: the regulator's resolution of fixed-vs-target at the optimal cutoff
// ---------------------------------------------------------------------------

struct PolicyReport {
  double pw = 0, alpha = 0, beta = 0, delta0 = 0, delta_a = 0, epsilon = 0, delta = 0;
  double lr_f = 0, lr_t = 0, eu_fixed = 0, eu_target = 0;
  bool penalty = false;
  int choice = SEQOC_CHOICE_FIXED;
};

PolicyReport solve_policy(const ModelHandle& model, const ScenarioConfig& config, int engine) {
  PolicyHandle policy;
  check(seqoc_policy_solve(model.get(), config.scalar("prH0").raw.c_str(),
                           config.scalar("uTypeI").raw.c_str(),
                           config.scalar("uCorrectNonRej").raw.c_str(),
                           config.scalar("uCorrectRej").raw.c_str(),
                           config.scalar("uTypeII").raw.c_str(), config.integer("n"),
                           config.integer("m"), engine, policy.out()),
        "policy");
  PolicyReport r;
  int penalty = 0;
  check(seqoc_policy_pw(policy.get(), &r.pw), "policy");
  check(seqoc_policy_alpha(policy.get(), &r.alpha), "policy");
  check(seqoc_policy_beta(policy.get(), &r.beta), "policy");
  check(seqoc_policy_delta0(policy.get(), &r.delta0), "policy");
  check(seqoc_policy_delta_a(policy.get(), &r.delta_a), "policy");
  check(seqoc_policy_epsilon(policy.get(), &r.epsilon), "policy");
  check(seqoc_policy_delta(policy.get(), &r.delta), "policy");
  check(seqoc_policy_penalty_required(policy.get(), &penalty), "policy");
  check(seqoc_policy_recommended_lr_f(policy.get(), &r.lr_f), "policy");
  check(seqoc_policy_recommended_lr_t(policy.get(), &r.lr_t), "policy");
  check(seqoc_policy_predicted_choice(policy.get(), &r.choice), "policy");
  check(seqoc_policy_eu_fixed(policy.get(), &r.eu_fixed), "policy");
  check(seqoc_policy_eu_target(policy.get(), &r.eu_target), "policy");
  r.penalty = penalty != 0;
  return r;
}

int cmd_policy(const std::string& config_path, bool json_out, bool exact) {
  const ScenarioConfig config = seqoc::cli::load_config_file(config_path);
  const ModelHandle model = make_model(config.scalar("p0"), config.scalar("pa"));
  const int engine = checked_engine_flag(exact);
  const PolicyReport r = solve_policy(model, config, engine);

  // The scientist's side of the game: best response to announced cutoffs
  // (defaulting to the recommendation) under belief q.
  const NumericValue* lr_f_cfg = config.maybe_scalar("lrF");
  const NumericValue* lr_t_cfg = config.maybe_scalar("lrT");
  const NumericValue* q_cfg = config.maybe_scalar("scientistQ");
  const bool announced = lr_f_cfg != nullptr || lr_t_cfg != nullptr || q_cfg != nullptr;
  int br_choice = SEQOC_CHOICE_FIXED;
  double br_approval = 0;
  std::string announced_lr_f, announced_lr_t, q_text = "0.5";
  if (announced) {
    announced_lr_f = lr_f_cfg ? lr_f_cfg->raw : exact_text(r.lr_f);
    announced_lr_t = lr_t_cfg ? lr_t_cfg->raw : exact_text(r.lr_t);
    if (q_cfg) q_text = q_cfg->raw;
    check(seqoc_best_response(model.get(), config.integer("n"), config.integer("m"),
                              announced_lr_f.c_str(), announced_lr_t.c_str(), q_text.c_str(),
                              &br_choice, &br_approval),
          "best-response");
  }

  const char* choice_name = r.choice == SEQOC_CHOICE_FIXED ? "fixed" : "target";
  if (json_out) {
    ordered_json doc;
    doc["pw"] = json_number(r.pw);
    doc["alpha"] = json_number(r.alpha);
    doc["beta"] = json_number(r.beta);
    doc["power"] = json_number(1.0 - r.beta);
    doc["delta0"] = json_number(r.delta0);
    doc["deltaA"] = json_number(r.delta_a);
    doc["epsilon"] = json_number(r.epsilon);
    doc["delta"] = json_number(r.delta);
    doc["penaltyRequired"] = r.penalty;
    doc["recommendedLrF"] = json_number(r.lr_f);
    doc["recommendedLrT"] = json_number(r.lr_t);
    doc["predictedChoice"] = choice_name;
    doc["euFixed"] = json_number(r.eu_fixed);
    doc["euTarget"] = json_number(r.eu_target);
    if (announced) {
      doc["announcedLrF"] = json_number(std::strtod(announced_lr_f.c_str(), nullptr));
      doc["announcedLrT"] =
          announced_lr_t == "inf"
              ? json_number(std::numeric_limits<double>::infinity())
              : json_number(std::strtod(announced_lr_t.c_str(), nullptr));
      doc["scientistQ"] = json_number(q_cfg ? q_cfg->value : 0.5);
      doc["bestResponse"] = br_choice == SEQOC_CHOICE_FIXED ? "fixed" : "target";
      doc["approvalProbability"] = json_number(br_approval);
    }
    std::printf("%s\n", doc.dump(2).c_str());
    return 0;
  }

  std::printf("policy problem: n = %" PRId64 ", m = %" PRId64 "\n", config.integer("n"),
              config.integer("m"));
  std::printf("  PW (optimal cutoff)       %s\n", fmt(r.pw).c_str());
  std::printf("  alpha (fixed at PW)       %s\n", fmt(r.alpha).c_str());
  std::printf("  power (fixed at PW)       %s\n", fmt(1.0 - r.beta).c_str());
  std::printf("  delta0                    %s\n", fmt(r.delta0).c_str());
  std::printf("  deltaA                    %s\n", fmt(r.delta_a).c_str());
  std::printf("  epsilon                   %s\n", fmt(r.epsilon).c_str());
  std::printf("  delta                     %s\n", fmt(r.delta).c_str());
  std::printf("  penalty required          %s\n", r.penalty ? "true" : "false");
  std::printf("  recommended lrF           %s\n", fmt(r.lr_f).c_str());
  std::printf("  recommended lrT           %s\n", fmt(r.lr_t).c_str());
  std::printf("  predicted design choice   %s\n", choice_name);
  std::printf("  EU(fixed)                 %s\n", fmt(r.eu_fixed).c_str());
  std::printf("  EU(target)                %s\n", fmt(r.eu_target).c_str());
  if (announced) {
    std::printf("scientist best response: announced lrF = %s, lrT = %s, q = %s\n",
                announced_lr_f.c_str(), announced_lr_t.c_str(), q_text.c_str());
    std::printf("  chosen design             %s\n",
                br_choice == SEQOC_CHOICE_FIXED ? "fixed" : "target");
    std::printf("  approval probability      %s\n", fmt(br_approval).c_str());
  }
  return 0;
}

// ---------------------------------------------------------------------------
// sweep: Cartesian product of range fields, one CSV row per grid point
// ---------------------------------------------------------------------------

const char* kSweepHeader =
    "p0,pa,prH0,uTypeI,uCorrectNonRej,uCorrectRej,uTypeII,n,m,pw,alpha,power,"
    "prHit0,prHitA,delta0,deltaA,epsilon,delta,expOvershoot0,expOvershootA,"
    "expN0,expNA,euFixed,euTarget,penaltyRequired,predictedChoice\n";

// One grid point: every present field resolved to a single value.
using GridPoint = std::map<std::string, const NumericValue*>;

std::string sweep_row(const GridPoint& point, bool has_policy, bool exact) {
  const auto get = [&](const char* name) -> const NumericValue* {
    const auto it = point.find(name);
    return it == point.end() ? nullptr : it->second;
  };
  const int engine = checked_engine_flag(exact);
  const ModelHandle model = make_model(*get("p0"), *get("pa"));

  std::optional<double> pw, alpha, power, delta0, delta_a, eu_fixed, eu_target;
  std::optional<bool> penalty;
  std::optional<int> choice;
  if (has_policy) {
    PolicyHandle policy;
    const seqoc_status st = seqoc_policy_solve(
        model.get(), get("prH0")->raw.c_str(), get("uTypeI")->raw.c_str(),
        get("uCorrectNonRej")->raw.c_str(), get("uCorrectRej")->raw.c_str(),
        get("uTypeII")->raw.c_str(), static_cast<int64_t>(get("n")->value),
        static_cast<int64_t>(get("m")->value), engine, policy.out());
    if (st == SEQOC_OK) {
      double v = 0;
      int flag = 0;
      check(seqoc_policy_pw(policy.get(), &v), "sweep"), pw = v;
      check(seqoc_policy_alpha(policy.get(), &v), "sweep"), alpha = v;
      check(seqoc_policy_beta(policy.get(), &v), "sweep"), power = 1.0 - v;
      check(seqoc_policy_delta0(policy.get(), &v), "sweep"), delta0 = v;
      check(seqoc_policy_delta_a(policy.get(), &v), "sweep"), delta_a = v;
      check(seqoc_policy_eu_fixed(policy.get(), &v), "sweep"), eu_fixed = v;
      check(seqoc_policy_eu_target(policy.get(), &v), "sweep"), eu_target = v;
      check(seqoc_policy_penalty_required(policy.get(), &flag), "sweep"), penalty = flag != 0;
      check(seqoc_policy_predicted_choice(policy.get(), &flag), "sweep"), choice = flag;
    } else if (st != SEQOC_ERR_BOUNDARY_UNREACHABLE) {
      check(st, "sweep policy");  // unreachable PW leaves the policy columns empty
    }
  }

  // Target-design columns at boundary targetC (default: the optimal cutoff PW).
  std::optional<double> hit0, hitA, epsilon, delta, os0, osA, exp_n0, exp_nA;
  const NumericValue* target_c = get("targetC");
  std::optional<std::string> boundary_raw;
  double boundary_value = 0;
  if (target_c != nullptr) {
    boundary_raw = target_c->raw;
    boundary_value = target_c->value;
  } else if (pw) {
    boundary_raw = exact_text(*pw);
    boundary_value = *pw;
  }
  if (boundary_raw && get("m") != nullptr) {
    DesignHandle design;
    check(seqoc_design_target_new(boundary_raw->c_str(),
                                  static_cast<int64_t>(get("m")->value), nullptr, design.out()),
          "sweep design");
    OcHandle oc;
    check(seqoc_oc_compute(model.get(), design.get(), engine, oc.out()), "sweep oc");
    double v = 0;
    check(seqoc_oc_pr_hit(oc.get(), SEQOC_H0, &v), "sweep"), hit0 = v;
    check(seqoc_oc_pr_hit(oc.get(), SEQOC_HA, &v), "sweep"), hitA = v;
    check(seqoc_oc_expected_n(oc.get(), SEQOC_H0, &v), "sweep"), exp_n0 = v;
    check(seqoc_oc_expected_n(oc.get(), SEQOC_HA, &v), "sweep"), exp_nA = v;
    check(seqoc_oc_pr_reject(oc.get(), SEQOC_H0, &v), "sweep");
    epsilon = 1.0 / boundary_value - v;
    check(seqoc_oc_pr_reject(oc.get(), SEQOC_HA, &v), "sweep");
    delta = 1.0 - v;
    for (const int hyp : {SEQOC_H0, SEQOC_HA}) {
      double os = 0;
      const seqoc_status st = seqoc_oc_expected_overshoot(oc.get(), hyp, &os);
      if (st == SEQOC_OK) {
        (hyp == SEQOC_H0 ? os0 : osA) = os;
      } else if (st != SEQOC_ERR_BOUNDARY_UNREACHABLE) {
        check(st, "sweep overshoot");
      }
    }
  }

  const auto echo = [&](const char* name) -> std::string {
    const NumericValue* v = get(name);
    return v ? fmt(v->value) : std::string();
  };
  std::ostringstream line;
  line << echo("p0") << ',' << echo("pa") << ',' << echo("prH0") << ',' << echo("uTypeI") << ','
       << echo("uCorrectNonRej") << ',' << echo("uCorrectRej") << ',' << echo("uTypeII") << ','
       << echo("n") << ',' << echo("m") << ',' << fmt(pw) << ',' << fmt(alpha) << ','
       << fmt(power) << ',' << fmt(hit0) << ',' << fmt(hitA) << ',' << fmt(delta0) << ','
       << fmt(delta_a) << ',' << fmt(epsilon) << ',' << fmt(delta) << ',' << fmt(os0) << ','
       << fmt(osA) << ',' << fmt(exp_n0) << ',' << fmt(exp_nA) << ',' << fmt(eu_fixed) << ','
       << fmt(eu_target) << ','
       << (penalty ? (*penalty ? "true" : "false") : "") << ','
       << (choice ? (*choice == SEQOC_CHOICE_FIXED ? "fixed" : "target") : "") << '\n';
  return line.str();
}

int cmd_sweep(const std::string& config_path, const std::string& csv_path, bool exact) {
  const ScenarioConfig config = seqoc::cli::load_config_file(config_path);
  const std::vector<std::string> ranges = config.range_fields();
  if (ranges.empty()) {
    throw ConfigError("sweep requires at least one range field (a JSON array value)");
  }
  for (const char* name : {"lrF", "lrT", "scientistQ"}) {
    if (config.has(name)) {
      throw ConfigError(std::string("field \"") + name +
                        "\": not used by sweep (cutoffs derive from targetC and the policy "
                        "fields)");
    }
  }
  for (const char* name : {"p0", "pa"}) {
    if (!config.has(name)) throw ConfigError(std::string("missing required field: \"") + name + "\"");
  }
  const bool any_policy = config.has("prH0") || config.has("uTypeI") ||
                          config.has("uCorrectNonRej") || config.has("uCorrectRej") ||
                          config.has("uTypeII");
  if (any_policy) {
    for (const char* name :
         {"prH0", "uTypeI", "uCorrectNonRej", "uCorrectRej", "uTypeII", "n", "m"}) {
      if (!config.has(name)) {
        throw ConfigError(std::string("policy columns need prH0, the four utilities, n, and m; "
                                      "missing: \"") +
                          name + "\"");
      }
    }
  }
  if (config.has("targetC") && !config.has("m")) {
    throw ConfigError("field \"m\" is required with targetC");
  }
  if (!any_policy && !config.has("targetC")) {
    throw ConfigError(
        "sweep has nothing to compute: declare targetC (with m) and/or the policy fields "
        "(prH0, utilities, n, m)");
  }

  std::vector<std::size_t> sizes;
  std::uint64_t total = 1;
  for (const auto& name : ranges) {
    sizes.push_back(config.fields.at(name).values.size());
    total *= sizes.back();
    if (total > 10'000'000) throw ConfigError("sweep grid exceeds 10000000 points");
  }

  // Grid point i, with the first declared range varying slowest.
  const auto point_at = [&](std::uint64_t index) {
    GridPoint point;
    std::map<std::string, std::size_t> digit;
    for (std::size_t k = ranges.size(); k-- > 0;) {
      digit[ranges[k]] = index % sizes[k];
      index /= sizes[k];
    }
    for (const auto& name : config.declared_order) {
      const auto& spec = config.fields.at(name);
      point[name] = &spec.values[spec.is_range ? digit[name] : 0];
    }
    return point;
  };

  std::ostringstream csv;
  csv << kSweepHeader;
  // Rows are computed concurrently but drained strictly in grid order.
  const std::size_t window = 2 * std::max(1u, std::thread::hardware_concurrency());
  std::deque<std::future<std::string>> in_flight;
  const auto drain_one = [&] {
    csv << in_flight.front().get();
    in_flight.pop_front();
  };
  for (std::uint64_t i = 0; i < total; ++i) {
    in_flight.push_back(std::async(std::launch::async,
                                   [&, i] { return sweep_row(point_at(i), any_policy, exact); }));
    if (in_flight.size() >= window) drain_one();
  }
  while (!in_flight.empty()) drain_one();

  if (csv_path.empty()) {
    std::fputs(csv.str().c_str(), stdout);
  } else {
    emit_csv(csv_path, csv.str());
  }
  return 0;
}

// ---------------------------------------------------------------------------
// simulate: seeded Monte Carlo estimates for the configured design(s)
// ---------------------------------------------------------------------------

int cmd_simulate(const std::string& config_path, const std::string& csv_path, uint64_t reps,
                 uint64_t seed, uint32_t shards) {
  const ScenarioConfig config = seqoc::cli::load_config_file(config_path);
  const ModelHandle model = make_model(config.scalar("p0"), config.scalar("pa"));

  std::string csv =
      "design,hypothesis,reps,seed,prReject,prRejectStderr,prHit,prHitStderr,expN,expNStderr\n";
  std::printf("monte carlo: reps = %" PRIu64 ", seed = %" PRIu64 ", shards = %u\n", reps, seed,
              shards);
  std::printf("%-8s %-4s %-22s %-22s %-22s\n", "design", "hyp", "prReject", "prHit", "expN");
  for (const DesignHandle& design : designs_from(config)) {
    int kind = 0;
    check(seqoc_design_kind(design.get(), &kind), "simulate");
    const char* name = kind == SEQOC_CHOICE_FIXED ? "fixed" : "target";
    for (const int hyp : {SEQOC_H0, SEQOC_HA}) {
      McHandle mc;
      check(seqoc_mc_run_sharded(model.get(), design.get(), hyp, reps, seed, shards, mc.out()),
            "simulate");
      seqoc_mc_estimate rej, hit, len;
      check(seqoc_mc_pr_reject(mc.get(), &rej), "simulate");
      check(seqoc_mc_pr_hit(mc.get(), &hit), "simulate");
      check(seqoc_mc_expected_n(mc.get(), &len), "simulate");
      const auto cell = [](const seqoc_mc_estimate& e) {
        char se[24];
        std::snprintf(se, sizeof se, "%.2g", e.stderr_);  // CSV keeps full precision
        return fmt(e.mean) + " +- " + se;
      };
      std::printf("%-8s %-4s %-22s %-22s %-22s\n", name, hyp == SEQOC_H0 ? "H0" : "Ha",
                  cell(rej).c_str(), cell(hit).c_str(), cell(len).c_str());
      std::ostringstream line;
      line << name << ',' << (hyp == SEQOC_H0 ? "H0" : "Ha") << ',' << reps << ',' << seed << ','
           << fmt(rej.mean) << ',' << fmt(rej.stderr_) << ',' << fmt(hit.mean) << ','
           << fmt(hit.stderr_) << ',' << fmt(len.mean) << ',' << fmt(len.stderr_) << '\n';
      csv += line.str();
    }
  }
  emit_csv(csv_path, csv);
  return 0;
}

// ---------------------------------------------------------------------------
// verify: the built-in verification suite
// ---------------------------------------------------------------------------

int cmd_verify(uint64_t reps, uint64_t seed, const std::string& only,
               const std::string& inject) {
  VerifyHandle report;
  check(seqoc_verify_run(reps, seed, inject.empty() ? nullptr : inject.c_str(),
                         only.empty() ? nullptr : only.c_str(), report.out()),
        "verify");
  size_t count = 0;
  check(seqoc_verify_count(report.get(), &count), "verify");
  std::printf("verification suite: mc reps = %" PRIu64 ", seed = %" PRIu64 "\n", reps, seed);
  int failures = 0;
  for (size_t i = 0; i < count; ++i) {
    int passed = 0;
    double ms = 0;
    check(seqoc_verify_passed(report.get(), i, &passed), "verify");
    check(seqoc_verify_elapsed_ms(report.get(), i, &ms), "verify");
    std::printf("[%s] %-4s %s (%.1f ms)\n", passed ? "PASS" : "FAIL",
                seqoc_verify_id(report.get(), i), seqoc_verify_name(report.get(), i), ms);
    std::printf("       %s\n", seqoc_verify_detail(report.get(), i));
    if (!passed) ++failures;
  }
  std::printf("%zu checks, %d failed\n", count, failures);
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "exact operating characteristics and optimal stopping policies for two-hypothesis "
      "Bernoulli experiments"};
  app.require_subcommand(1);
  app.set_version_flag("--version", seqoc_version());

  std::string config_path, csv_path, only, inject;
  bool exact = false, json_out = false;
  std::uint64_t reps = 100'000, seed = 1;
  std::uint32_t shards = 1;

  CLI::App* oc = app.add_subcommand("oc", "operating characteristics of the configured designs");
  oc->add_option("--config", config_path, "scenario config file (JSON)")->required();
  oc->add_option("--csv", csv_path, "also write the rows as CSV to this file");
  oc->add_flag("--exact", exact, "force the exact rational engine");

  CLI::App* policy =
      app.add_subcommand("policy", "resolve the penalty decision at the optimal cutoff");
  policy->add_option("--config", config_path, "scenario config file (JSON)")->required();
  policy->add_flag("--json", json_out, "machine-readable JSON output");
  policy->add_flag("--exact", exact, "force the exact rational engine");

  CLI::App* sweep = app.add_subcommand("sweep", "CSV over the Cartesian product of range fields");
  sweep->add_option("--config", config_path, "scenario config file (JSON)")->required();
  sweep->add_option("--csv", csv_path, "write CSV here instead of stdout");
  sweep->add_flag("--exact", exact, "force the exact rational engine");

  CLI::App* simulate =
      app.add_subcommand("simulate", "seeded Monte Carlo estimates for the configured designs");
  simulate->add_option("--config", config_path, "scenario config file (JSON)")->required();
  simulate->add_option("--csv", csv_path, "also write the estimates as CSV to this file");
  simulate->add_option("--reps", reps, "replications per design and hypothesis")
      ->capture_default_str();
  simulate->add_option("--seed", seed, "random seed")->capture_default_str();
  simulate->add_option("--shards", shards, "worker shards (the estimate is shard-invariant)")
      ->capture_default_str();

  CLI::App* verify = app.add_subcommand("verify", "run the built-in verification suite");
  verify->add_option("--reps", reps, "Monte Carlo replications for the sampling checks")
      ->default_val(std::uint64_t{1'000'000})
      ->capture_default_str();
  verify->add_option("--seed", seed, "random seed for the sampling checks")
      ->capture_default_str();
  verify->add_option("--only", only, "run a single check (c1..c10)");
  verify->add_option("--inject-fault", inject,
                     "deliberately break a check (known id: wrong-sign-deltaA)");

  int rc = 0;
  oc->callback([&] { rc = cmd_oc(config_path, csv_path, exact); });
  policy->callback([&] { rc = cmd_policy(config_path, json_out, exact); });
  sweep->callback([&] { rc = cmd_sweep(config_path, csv_path, exact); });
  simulate->callback([&] { rc = cmd_simulate(config_path, csv_path, reps, seed, shards); });
  verify->callback([&] { rc = cmd_verify(reps, seed, only, inject); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // usage mistakes are configuration errors
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const CliFailure& f) {
    std::fprintf(stderr, "error: %s\n", f.message.c_str());
    return f.exit_code;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return 1;
  }
  return rc;
}
