#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

// Randomized property suites, shared by the standalone property runner and
// the acceptance binary. Each suite reports how many cases it ran and the
// first failing case.
namespace properties {

struct Outcome {
  std::string name;
  unsigned cases = 0;
  unsigned failures = 0;
  std::string first_failure;
  bool ok() const { return failures == 0 && cases > 0; }
};

struct Suite {
  std::string name;
  std::function<Outcome(std::uint64_t seed, unsigned cases)> run;
};

/// `fixture_dir` holds the problem files used by the pipeline-level suites.
std::vector<Suite> suites(const std::string& fixture_dir);

}  // namespace properties
