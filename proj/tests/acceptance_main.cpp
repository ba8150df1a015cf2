// Acceptance gate: runs the built-in verification suite through the public C
// API and prints one [PASS]/[FAIL] line per check.  Exits nonzero when any
// check fails.
//
// Usage: seqoc_acceptance [--reps N] [--seed S] [--only ID] [--inject-fault ID]

#include <seqoc/seqoc.h>

#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace {

std::uint64_t parse_u64(const char* text, const char* flag) {
  char* end = nullptr;
  const unsigned long long v = std::strtoull(text, &end, 10);
  if (end == text || *end != '\0') {
    std::fprintf(stderr, "error: %s expects an unsigned integer, got \"%s\"\n", flag, text);
    std::exit(2);
  }
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  std::uint64_t reps = 1'000'000;
  std::uint64_t seed = 1;
  const char* only = nullptr;
  const char* inject = nullptr;

  for (int i = 1; i < argc; ++i) {
    const char* arg = argv[i];
    auto next = [&](const char* flag) -> const char* {
      if (i + 1 >= argc) {
        std::fprintf(stderr, "error: %s expects a value\n", flag);
        std::exit(2);
      }
      return argv[++i];
    };
    if (std::strcmp(arg, "--reps") == 0) {
      reps = parse_u64(next("--reps"), "--reps");
    } else if (std::strcmp(arg, "--seed") == 0) {
      seed = parse_u64(next("--seed"), "--seed");
    } else if (std::strcmp(arg, "--only") == 0) {
      only = next("--only");
    } else if (std::strcmp(arg, "--inject-fault") == 0) {
      inject = next("--inject-fault");
    } else if (std::strcmp(arg, "--help") == 0 || std::strcmp(arg, "-h") == 0) {
      std::printf("usage: %s [--reps N] [--seed S] [--only ID] [--inject-fault ID]\n", argv[0]);
      return 0;
    } else {
      std::fprintf(stderr, "error: unknown argument \"%s\"\n", arg);
      return 2;
    }
  }

  std::printf("verification suite (library %s, mc reps %" PRIu64 ", seed %" PRIu64 ")\n",
              seqoc_version(), reps, seed);

  seqoc_verify* report = nullptr;
  const seqoc_status status = seqoc_verify_run(reps, seed, inject, only, &report);
  if (status != SEQOC_OK) {
    std::fprintf(stderr, "error: %s: %s\n", seqoc_status_name(status), seqoc_last_error());
    return 2;
  }

  size_t count = 0;
  seqoc_verify_count(report, &count);
  int exit_code = 0;
  for (size_t i = 0; i < count; ++i) {
    int passed = 0;
    double ms = 0;
    seqoc_verify_passed(report, i, &passed);
    seqoc_verify_elapsed_ms(report, i, &ms);
    std::printf("[%s] %-4s %s (%.1f ms)\n", passed ? "PASS" : "FAIL", seqoc_verify_id(report, i),
                seqoc_verify_name(report, i), ms);
    std::printf("       %s\n", seqoc_verify_detail(report, i));
    if (!passed) exit_code = 1;
  }

  int all = 0;
  seqoc_verify_all_passed(report, &all);
  std::printf("%zu checks, %s\n", count, all ? "all passed" : "FAILURES PRESENT");
  seqoc_verify_free(report);
  return exit_code;
}
