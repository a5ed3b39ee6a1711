#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "deltakit/suite.hpp"

using namespace deltakit;

namespace {

constexpr std::uint64_t kSeed = 42;

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

bool runSuiteCli(const std::filesystem::path& out) {
  const std::string cmd = std::string("\"") + DELTAKIT_CLI + "\" verify-suite --seed " + std::to_string(kSeed) +
                          " --format json --out \"" + out.string() + "\"";
  const int status = std::system(cmd.c_str());
  return status != -1 && WIFEXITED(status) && WEXITSTATUS(status) <= 1;
}

}  // namespace

int main() {
  suite::SuiteOptions opts;
  opts.seed = kSeed;
  opts.workers = std::max(1u, std::thread::hardware_concurrency());

  int failed = 0;
  for (int id : suite::criterionIds()) {
    const suite::CriterionResult r = suite::runCriterion(id, opts);
    const bool inTime = r.seconds <= r.limitSeconds;
    const bool ok = r.passed && inTime;
    failed += !ok;
    std::printf("criterion %d: %s %s (%llu checked, %llu failures, %.2fs of %.0fs)\n", id, ok ? "PASS" : "FAIL",
                r.name.c_str(), static_cast<unsigned long long>(r.checked),
                static_cast<unsigned long long>(r.failures), r.seconds, r.limitSeconds);
    if (!ok || id == 8) std::printf("  %s\n", r.detail.dump().c_str());
  }

  const std::filesystem::path dir = ACCEPTANCE_WORK_DIR;
  const auto first = dir / "verify_suite_1.json", second = dir / "verify_suite_2.json";
  std::filesystem::remove(first);
  std::filesystem::remove(second);
  bool ran = runSuiteCli(first) && runSuiteCli(second);
  const std::string a = ran ? slurp(first) : "", b = ran ? slurp(second) : "";
  const bool same = ran && !a.empty() && a == b;
  failed += !same;
  std::printf("criterion 10: %s determinism (verify-suite --seed %llu twice, %zu and %zu bytes, %s)\n",
              same ? "PASS" : "FAIL", static_cast<unsigned long long>(kSeed), a.size(), b.size(),
              !ran ? "cli failed" : same ? "identical" : "different");

  std::printf("%d of 10 criteria failed\n", failed);
  return failed ? 1 : 0;
}
