#include <cstdio>
#include <cstdlib>
#include <string>

#include "koszul/acceptance.hpp"

int main(int argc, char** argv) {
  koszul::AcceptanceOptions opts;
  int only = 0;
  for (int k = 1; k < argc; ++k) {
    const std::string arg = argv[k];
    if (arg == "--only" && k + 1 < argc) only = std::atoi(argv[++k]);
  }

  bool all = true;
  const auto report = [&](const koszul::CriterionResult& r) {
    all = all && r.passed;
    std::printf("%s [%d] %s (%zu checks, %.1f s)\n", r.passed ? "PASS" : "FAIL", r.id, r.title.c_str(), r.checks,
                r.seconds);
    for (const auto& f : r.failures) std::printf("    failed: %s\n", f.c_str());
    for (const auto& f : r.findings) std::printf("    finding: %s\n", f.c_str());
    std::fflush(stdout);
  };
  if (only > 0)
    report(koszul::run_acceptance_criterion(only, opts));
  else
    koszul::run_acceptance(opts, report);
  return all ? 0 : 1;
}
