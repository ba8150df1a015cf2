// CLI layer: the scenario-config grammar in-process, then the command-line
// surface end to end as subprocesses (exit codes, reports, CSV schemas).
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "config.hpp"

using seqoc::cli::ConfigError;
using seqoc::cli::NumericValue;
using seqoc::cli::ScenarioConfig;
namespace fs = std::filesystem;

namespace {

ScenarioConfig parse(const std::string& text) { return seqoc::cli::parse_config_text(text); }

// The ConfigError message for `text`, or "(no error)" when it parses.
std::string parse_error_of(const std::string& text) {
  try {
    (void)parse(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "(no error)";
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout and stderr interleaved
};

// Runs the built CLI with `args`, capturing both streams.
RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(SEQOC_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  std::size_t got = 0;
  while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
  const int status = ::pclose(pipe);
  REQUIRE(status != -1);
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.output = std::move(out);
  return r;
}

std::string data_file(const std::string& name) {
  return std::string(SEQOC_TEST_DATA_DIR) + "/" + name;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE_MESSAGE(in.good(), "cannot open ", path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// A per-process scratch path so parallel ctest runs never collide.
std::string temp_path(const std::string& tag) {
  const fs::path p =
      fs::temp_directory_path() / ("seqoc_cli_" + tag + "_" + std::to_string(::getpid()));
  return p.string();
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.push_back("");
  return cells;
}

constexpr const char* kOcHeader =
    "design,p0,pa,horizon,boundary,cutoff,prReject0,prRejectA,prHit0,prHitA,"
    "expN0,expNA,expOvershoot0,expOvershootA,epsilon,delta";
constexpr const char* kSweepHeader =
    "p0,pa,prH0,uTypeI,uCorrectNonRej,uCorrectRej,uTypeII,n,m,pw,alpha,power,"
    "prHit0,prHitA,delta0,deltaA,epsilon,delta,expOvershoot0,expOvershootA,"
    "expN0,expNA,euFixed,euTarget,penaltyRequired,predictedChoice";
constexpr const char* kSimHeader =
    "design,hypothesis,reps,seed,prReject,prRejectStderr,prHit,prHitStderr,expN,expNStderr";

}  // namespace

TEST_SUITE("config") {
  TEST_CASE("values keep their literal text alongside an approximate double") {
    const ScenarioConfig cfg = parse(R"({"p0": "3/7", "pa": 0.9, "n": 5})");
    REQUIRE(cfg.has("p0"));
    CHECK(cfg.scalar("p0").quoted);
    CHECK(cfg.scalar("p0").raw == "3/7");
    CHECK(cfg.scalar("p0").value == doctest::Approx(3.0 / 7.0).epsilon(1e-12));
    CHECK_FALSE(cfg.scalar("pa").quoted);
    CHECK(cfg.scalar("pa").raw == "0.9");
    CHECK(cfg.scalar("pa").value == 0.9);
    CHECK(cfg.integer("n") == 5);
    CHECK(cfg.declared_order == std::vector<std::string>{"p0", "pa", "n"});
    CHECK(cfg.maybe_scalar("lrT") == nullptr);
  }

  TEST_CASE("utilities shorthand expands to the four named fields in place") {
    const ScenarioConfig cfg = parse(
        R"({"p0": "1/2", "utilities": [0, 1, 0.5, 0.25], "pa": "2/3"})");
    CHECK(cfg.declared_order ==
          std::vector<std::string>{"p0", "uTypeI", "uCorrectNonRej", "uCorrectRej", "uTypeII",
                                   "pa"});
    CHECK_FALSE(cfg.has("utilities"));
    CHECK(cfg.scalar("uTypeI").value == 0.0);
    CHECK(cfg.scalar("uCorrectNonRej").value == 1.0);
    CHECK(cfg.scalar("uCorrectRej").value == 0.5);
    CHECK(cfg.scalar("uTypeII").value == 0.25);

    CHECK(contains(parse_error_of(R"({"utilities": [0, 1, 1]})"), "exactly four values"));
    CHECK(contains(parse_error_of(R"({"utilities": [[0, 1], 1, 1, 0]})"),
                   "ranges go on the named fields"));
  }

  TEST_CASE("colliding declarations are rejected") {
    CHECK(contains(parse_error_of(R"({"uTypeI": 0.5, "utilities": [0, 1, 1, 0]})"),
                   "given more than once (utilities shorthand?)"));
  }

  TEST_CASE("unknown fields are rejected by name") {
    CHECK(parse_error_of(R"({"p0": "1/2", "bogus": 1})") == "unknown config field: \"bogus\"");
  }

  TEST_CASE("field validation enforces each kind's domain") {
    CHECK(contains(parse_error_of(R"({"p0": 1.5})"), "probability must lie in [0, 1]"));
    CHECK(contains(parse_error_of(R"({"prH0": "7/6"})"), "probability must lie in [0, 1]"));
    CHECK(contains(parse_error_of(R"({"pa": "abc"})"), "not a number: \"abc\""));
    CHECK(contains(parse_error_of(R"({"pa": true})"), "expected a number"));
    CHECK(contains(parse_error_of(R"({"uTypeI": "inf"})"), "utility must be finite"));
    CHECK(contains(parse_error_of(R"({"n": 2.5})"), "expected a plain integer"));
    CHECK(contains(parse_error_of(R"({"n": "5"})"), "expected a plain integer"));
    CHECK(contains(parse_error_of(R"({"m": 1e10})"), "expected a plain integer"));
    CHECK(contains(parse_error_of(R"({"lrF": 0})"), "cutoff must be positive"));
    CHECK(contains(parse_error_of(R"({"targetC": -2})"), "cutoff must be positive"));
    CHECK(parse_error_of(R"({"lrT": "inf", "targetC": "8/3"})") == "(no error)");
  }

  TEST_CASE("array values declare sweep ranges") {
    const ScenarioConfig cfg =
        parse(R"({"p0": "1/2", "pa": "2/3", "targetC": [2, 4], "m": [10, 12, 14]})");
    CHECK(cfg.range_fields() == std::vector<std::string>{"targetC", "m"});
    CHECK(cfg.fields.at("targetC").is_range);
    CHECK(cfg.fields.at("targetC").values.size() == 2);
    CHECK_THROWS_AS((void)cfg.scalar("targetC"), ConfigError);
    CHECK_THROWS_AS((void)cfg.integer("m"), ConfigError);
    CHECK(cfg.scalar("p0").raw == "1/2");

    CHECK(contains(parse_error_of(R"({"targetC": []})"), "empty range"));
    CHECK(contains(parse_error_of(R"({"m": [[10, 12]]})"), "nested arrays"));
  }

  TEST_CASE("serialization round-trips value-identically") {
    const std::string text = R"({
      "p0": "3/7", "pa": 0.9, "prH0": "8/9", "utilities": [0, 1, 1, 0],
      "n": 5, "m": [8, 12], "targetC": "5/2"
    })";
    const ScenarioConfig cfg = parse(text);
    const std::string dumped = serialize_config(cfg);
    const ScenarioConfig again = parse(dumped);
    CHECK(equivalent(cfg, again));
    CHECK(serialize_config(again) == dumped);
    CHECK(!dumped.empty());
    CHECK(dumped.back() == '\n');
  }

  TEST_CASE("equivalence is literal for quoted text, by value for number tokens") {
    CHECK(equivalent(parse(R"({"pa": 0.5})"), parse(R"({"pa": 5e-1})")));
    CHECK_FALSE(equivalent(parse(R"({"pa": "1/2"})"), parse(R"({"pa": "2/4"})")));
    CHECK_FALSE(equivalent(parse(R"({"pa": "0.5"})"), parse(R"({"pa": 0.5})")));
    CHECK_FALSE(equivalent(parse(R"({"p0": 0.1, "pa": 0.5})"),
                           parse(R"({"pa": 0.5, "p0": 0.1})")));
    CHECK_FALSE(equivalent(parse(R"({"pa": [0.5]})"), parse(R"({"pa": 0.5})")));
  }
}

TEST_SUITE("cli") {
  TEST_CASE("help and version exit cleanly") {
    const RunResult help = run_cli("--help");
    CHECK(help.exit_code == 0);
    CHECK(contains(help.output, "oc"));
    CHECK(contains(help.output, "policy"));
    CHECK(contains(help.output, "verify"));
    CHECK(run_cli("--version").exit_code == 0);
  }

  TEST_CASE("usage and configuration mistakes exit 2") {
    CHECK(run_cli("frobnicate").exit_code == 2);
    CHECK(run_cli("oc").exit_code == 2);  // --config is required

    const RunResult unknown = run_cli("oc --config " + data_file("bad_unknown_field.json"));
    CHECK(unknown.exit_code == 2);
    CHECK(contains(unknown.output, "unknown config field: \"bogus\""));

    const RunResult empty = run_cli("oc --config " + data_file("bad_empty_range.json"));
    CHECK(empty.exit_code == 2);
    CHECK(contains(empty.output, "empty range"));

    const RunResult mangled = run_cli("oc --config " + data_file("bad_not_json.json"));
    CHECK(mangled.exit_code == 2);
    CHECK(contains(mangled.output, "config is not valid JSON"));

    CHECK(run_cli("oc --config " + data_file("no_such_file.json")).exit_code == 2);

    // Ranges belong to sweep; scalar commands refuse them.
    const RunResult ranged = run_cli("oc --config " + data_file("sweep_boundaries.json"));
    CHECK(ranged.exit_code == 2);
    CHECK(contains(ranged.output, "a range is not valid for this command"));
  }

  TEST_CASE("oc reports both designs of the worked example") {
    const RunResult r = run_cli("oc --config " + data_file("oc_worked.json"));
    REQUIRE(r.exit_code == 0);
    CHECK(contains(r.output, "fixed-sample design: n = 5, rejection cutoff = 2"));
    CHECK(contains(r.output, "0.11084667103"));    // Pr[reject | H0]
    CHECK(contains(r.output, "0.848218004403"));   // Pr[reject | Ha]
    CHECK(contains(r.output, "target-ratio design: boundary c = 2, cap m = 10"));
    CHECK(contains(r.output, "0.493661945582"));   // target Pr[reject | H0]
    CHECK(contains(r.output, "exact rational"));   // auto engine picks the exact path
  }

  TEST_CASE("oc --csv writes the schema row by row") {
    const std::string csv_path = temp_path("oc") + ".csv";
    const RunResult r =
        run_cli("oc --config " + data_file("oc_worked.json") + " --csv " + csv_path);
    REQUIRE(r.exit_code == 0);
    const std::vector<std::string> lines = split_lines(read_file(csv_path));
    fs::remove(csv_path);
    REQUIRE(lines.size() == 3);
    CHECK(lines[0] == kOcHeader);
    // Fixed design: no boundary, no hit/overshoot columns, E[N] pinned at n.
    CHECK(lines[1] ==
          "fixed,0.428571428571,0.857142857143,5,,2,0.11084667103,0.848218004403,,,5,5,,,,");
    const std::vector<std::string> target = split_csv(lines[2]);
    REQUIRE(target.size() == 16);
    CHECK(target[0] == "target");
    CHECK(target[4] == "2");                  // boundary c
    CHECK(target[6] == "0.493661945582");     // Pr[reject | H0]
    CHECK(target[8] != "");                   // Pr[hit | H0] present for target
    CHECK(target[14] != "");                  // epsilon present when cutoff == c
  }

  TEST_CASE("policy --json matches the reference decision") {
    const RunResult r =
        run_cli("policy --config " + data_file("policy_reference.json") + " --json");
    REQUIRE(r.exit_code == 0);
    const nlohmann::json doc = nlohmann::json::parse(r.output);
    CHECK(doc.at("pw").get<double>() == doctest::Approx(8.0).epsilon(1e-12));
    CHECK(doc.at("alpha").get<double>() ==
          doctest::Approx(0.0036581568595868879).epsilon(1e-12));
    CHECK(doc.at("beta").get<double>() ==
          doctest::Approx(0.055119427294447298).epsilon(1e-12));
    CHECK(doc.at("delta0").get<double>() ==
          doctest::Approx(0.12133787185242853).epsilon(1e-12));
    CHECK(doc.at("deltaA").get<double>() ==
          doctest::Approx(0.05508765699057061).epsilon(1e-12));
    CHECK(doc.at("epsilon").get<double>() ==
          doctest::Approx(3.971287984641525e-06).epsilon(1e-9));
    CHECK(doc.at("delta").get<double>() ==
          doctest::Approx(3.1770303876688111e-05).epsilon(1e-9));
    CHECK(doc.at("penaltyRequired").get<bool>());
    CHECK(doc.at("recommendedLrT").get<std::string>() == "inf");
    CHECK(doc.at("predictedChoice").get<std::string>() == "fixed");
    CHECK(doc.at("euFixed").get<double>() ==
          doctest::Approx(0.99062392420320633).epsilon(1e-12));
    CHECK(doc.at("euTarget").get<double>() == doctest::Approx(8.0 / 9.0).epsilon(1e-12));
    CHECK_FALSE(doc.contains("bestResponse"));

    const RunResult human = run_cli("policy --config " + data_file("policy_reference.json"));
    REQUIRE(human.exit_code == 0);
    CHECK(contains(human.output, "penalty required          true"));
    CHECK(contains(human.output, "recommended lrT           inf"));
    CHECK(contains(human.output, "predicted design choice   fixed"));
  }

  TEST_CASE("policy reports the scientist's best response to announced cutoffs") {
    const RunResult r =
        run_cli("policy --config " + data_file("policy_announced.json") + " --json");
    REQUIRE(r.exit_code == 0);
    const nlohmann::json doc = nlohmann::json::parse(r.output);
    CHECK(doc.at("pw").get<double>() == doctest::Approx(8.0).epsilon(1e-12));
    CHECK(doc.at("announcedLrF").get<double>() == 2.0);
    CHECK(doc.at("announcedLrT").get<double>() == 2.0);
    CHECK(doc.at("scientistQ").get<double>() == 0.5);
    CHECK(doc.at("bestResponse").get<std::string>() == "target");
    CHECK(doc.at("approvalProbability").get<double>() ==
          doctest::Approx(0.74049291837246956).epsilon(1e-12));
  }

  TEST_CASE("degenerate scenarios exit 3") {
    const RunResult unreachable =
        run_cli("policy --config " + data_file("policy_unreachable.json"));
    CHECK(unreachable.exit_code == 3);
    CHECK(contains(unreachable.output, "boundary-unreachable"));

    // The exact engine refuses horizons past its cap; forcing it is a
    // scenario problem, not a usage problem.
    const std::string big = temp_path("big") + ".json";
    {
      std::ofstream out(big);
      out << R"({"p0": "3/7", "pa": "6/7", "n": 70, "lrF": 2})" << "\n";
    }
    const RunResult forced = run_cli("oc --exact --config " + big);
    fs::remove(big);
    CHECK(forced.exit_code == 3);
    CHECK(contains(forced.output, "exact-unavailable"));
  }

  TEST_CASE("sweep over boundaries walks the overshoot staircase") {
    const RunResult r = run_cli("sweep --config " + data_file("sweep_boundaries.json"));
    REQUIRE(r.exit_code == 0);
    const std::vector<std::string> lines = split_lines(r.output);
    REQUIRE(lines.size() == 5);
    CHECK(lines[0] == kSweepHeader);
    // Boundaries 2, 4, 8 are attainable ratios (overshoot 0); 6 is first
    // crossed at 8 under either hypothesis (overshoot exactly 2).
    const std::vector<std::string> expect_overshoot = {"0", "0", "2", "0"};
    for (std::size_t i = 1; i < lines.size(); ++i) {
      const std::vector<std::string> cells = split_csv(lines[i]);
      REQUIRE(cells.size() == 26);
      CHECK(cells[18] == expect_overshoot[i - 1]);  // expOvershoot0
      CHECK(cells[19] == expect_overshoot[i - 1]);  // expOvershootA
      CHECK(cells[9] == "");                        // pw: no policy fields declared
      CHECK(cells[24] == "");                       // penaltyRequired likewise
      CHECK(cells[12] != "");                       // prHit0 computed per boundary
    }
  }

  TEST_CASE("sweep output is byte-stable against the golden run") {
    const RunResult r = run_cli("sweep --config " + data_file("sweep_policy.json"));
    REQUIRE(r.exit_code == 0);
    CHECK(r.output == read_file(data_file("golden_sweep.csv")));

    const std::string csv_path = temp_path("sweep") + ".csv";
    const RunResult via_file =
        run_cli("sweep --config " + data_file("sweep_policy.json") + " --csv " + csv_path);
    REQUIRE(via_file.exit_code == 0);
    CHECK(read_file(csv_path) == r.output);
    fs::remove(csv_path);
  }

  TEST_CASE("sweep rejects unsupported or underspecified configs") {
    const auto sweep_error = [](const std::string& tag, const std::string& body) {
      const std::string path = temp_path("sweep_" + tag) + ".json";
      {
        std::ofstream out(path);
        out << body << "\n";
      }
      const RunResult r = run_cli("sweep --config " + path);
      fs::remove(path);
      return r;
    };

    const RunResult no_range =
        sweep_error("norange", R"({"p0": "3/7", "pa": "6/7", "targetC": 2, "m": 10})");
    CHECK(no_range.exit_code == 2);
    CHECK(contains(no_range.output, "at least one range field"));

    const RunResult lr_f = sweep_error(
        "lrf", R"({"p0": "3/7", "pa": "6/7", "lrF": 2, "targetC": [2, 4], "m": 10})");
    CHECK(lr_f.exit_code == 2);
    CHECK(contains(lr_f.output, "not used by sweep"));

    const RunResult partial_policy = sweep_error(
        "partial", R"({"p0": "3/7", "pa": "6/7", "prH0": [0.5, 0.75], "m": 10})");
    CHECK(partial_policy.exit_code == 2);
    CHECK(contains(partial_policy.output, "policy columns need"));

    const RunResult no_m =
        sweep_error("nom", R"({"p0": "3/7", "pa": "6/7", "targetC": [2, 4]})");
    CHECK(no_m.exit_code == 2);
    CHECK(contains(no_m.output, "\"m\" is required with targetC"));

    const RunResult nothing =
        sweep_error("nothing", R"({"p0": ["3/7", "1/2"], "pa": "6/7"})");
    CHECK(nothing.exit_code == 2);
    CHECK(contains(nothing.output, "sweep has nothing to compute"));
  }

  TEST_CASE("simulate estimates are shard-invariant and near the exact value") {
    const std::string base =
        "simulate --config " + data_file("simulate_target.json") + " --reps 20000 --seed 7";
    const std::string one_path = temp_path("sim1") + ".csv";
    const std::string five_path = temp_path("sim5") + ".csv";
    const RunResult one = run_cli(base + " --shards 1 --csv " + one_path);
    const RunResult five = run_cli(base + " --shards 5 --csv " + five_path);
    REQUIRE(one.exit_code == 0);
    REQUIRE(five.exit_code == 0);
    CHECK(contains(five.output, "monte carlo: reps = 20000, seed = 7, shards = 5"));

    const std::string one_csv = read_file(one_path);
    const std::string five_csv = read_file(five_path);
    fs::remove(one_path);
    fs::remove(five_path);
    CHECK(one_csv == five_csv);  // sharding only parallelizes; estimates are identical

    const std::vector<std::string> lines = split_lines(one_csv);
    REQUIRE(lines.size() == 3);  // header + target x {H0, Ha}
    CHECK(lines[0] == kSimHeader);
    const std::vector<std::string> h0 = split_csv(lines[1]);
    REQUIRE(h0.size() == 10);
    CHECK(h0[0] == "target");
    CHECK(h0[1] == "H0");
    CHECK(h0[2] == "20000");
    CHECK(h0[3] == "7");
    // The estimate must sit within a wide band of the exactly computed value.
    const double mean = std::stod(h0[4]);
    const double se = std::stod(h0[5]);
    CHECK(std::abs(mean - 0.49366194558164633) <= 6.0 * se + 1e-9);
  }

  TEST_CASE("verify subcommand reports per-check lines and gates the exit code") {
    const RunResult pass = run_cli("verify --reps 20000 --only c1");
    CHECK(pass.exit_code == 0);
    CHECK(contains(pass.output, "verification suite: mc reps = 20000, seed = 1"));
    CHECK(contains(pass.output, "[PASS] c1"));
    CHECK(contains(pass.output, "1 checks, 0 failed"));

    const RunResult fail =
        run_cli("verify --reps 20000 --only c4 --inject-fault wrong-sign-deltaA");
    CHECK(fail.exit_code == 1);
    CHECK(contains(fail.output, "[FAIL] c4"));
    CHECK(contains(fail.output, "1 checks, 1 failed"));

    CHECK(run_cli("verify --reps 1000 --only nope").exit_code == 2);
    CHECK(run_cli("verify --reps 1000 --inject-fault nope").exit_code == 2);
  }
}
