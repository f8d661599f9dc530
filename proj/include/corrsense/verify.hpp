// verify.hpp - named verification suites pitting closed forms against
// independent oracles; shared by the CLI verify command and the test binaries.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace corrsense::verify {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

const std::vector<std::string>& suite_names();

// Runs one suite deterministically for the given seed.  threads only affects
// wall time, never results.
std::vector<CheckResult> run_suite(const std::string& suite, std::uint64_t seed,
                                   int threads = 1);

}  // namespace corrsense::verify
