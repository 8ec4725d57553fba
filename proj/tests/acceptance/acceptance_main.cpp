// End-to-end acceptance suite: one PASS/FAIL line per criterion.
//
//   geostat_acceptance [--seed N] [--only ID]

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "geostat/verification.hpp"

int main(int argc, char** argv) {
  std::uint64_t seed = 20051;
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--seed" && i + 1 < argc) {
      seed = std::strtoull(argv[++i], nullptr, 10);
    } else if (arg == "--only" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: %s [--seed N] [--only ID]\n", argv[0]);
      return 2;
    }
  }

  int failed = 0;
  const auto report = [&](const geostat::CriterionResult& r) {
    std::printf("[%s] criterion %2d: %s (%.2f s) -- %s\n", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(),
                r.seconds, r.detail.c_str());
    std::fflush(stdout);
    if (!r.passed) ++failed;
  };
  if (only > 0) {
    report(geostat::run_criterion(only, seed));
  } else {
    geostat::run_acceptance(seed, report);
  }
  std::printf("%s: %d failed\n", failed == 0 ? "ACCEPTANCE PASSED" : "ACCEPTANCE FAILED", failed);
  return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
