// Acceptance suite: runs every criterion at its pinned tolerance and prints
// one pass/fail line each. Exit code 0 iff all pass. Ratio tables land in
// the working directory.
#include <cstdio>

#include "expsum/verify.hpp"

int main() {
  expsum::VerifyOptions opts;
  opts.threads = expsum::threads_from_env();
  opts.ratio_table_dir = ".";
  const auto results = expsum::run_acceptance(opts);
  bool all_ok = true;
  for (const auto& r : results) {
    std::printf("%s criterion %d: %s — %s (%.2fs)\n", r.passed ? "PASS" : "FAIL", r.index,
                r.name.c_str(), r.detail.c_str(), r.seconds);
    all_ok = all_ok && r.passed;
  }
  std::printf("%s\n", all_ok ? "ACCEPTANCE: all criteria passed"
                             : "ACCEPTANCE: at least one criterion failed");
  return all_ok ? 0 : 1;
}
