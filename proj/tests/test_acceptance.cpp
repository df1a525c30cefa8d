// Acceptance suite: one pass/fail line per criterion. Runs from the
// repository root (ctest sets the working directory) so the golden files
// under data/ resolve.
#include "hncomb/acceptance.hpp"

#include <doctest.h>

#include <cstdio>
#include <thread>

using namespace hncomb;

TEST_CASE("acceptance criteria") {
  int jobs = static_cast<int>(std::max(2u, std::thread::hardware_concurrency()));
  jobs = std::min(jobs, 4);
  for (const std::string& name : acceptance_criterion_names()) {
    CriterionResult res = run_acceptance_criterion(name, "data", jobs);
    std::printf("%s  %-16s (%.2fs)  %s\n", res.pass ? "PASS" : "FAIL", res.name.c_str(),
                res.seconds, res.detail.c_str());
    std::fflush(stdout);
    INFO(res.name, ": ", res.detail);
    CHECK(res.pass);
  }
}
