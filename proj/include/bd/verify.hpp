#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace bd {

// One acceptance gate: a headline statistic compared against a threshold,
// plus a human-readable account of every sub-check behind the verdict.
struct Verdict {
  std::string name;
  double statistic = 0.0;
  double threshold = 0.0;
  bool pass = false;
  std::string detail;
};

struct VerifyOptions {
  double scale = 1.0;  // multiplies every replica budget
  std::uint64_t seed = 20240801ull;
  int threads = 0;   // 0: hardware concurrency
  std::string only;  // run a single named gate ("" = all)
  // Fault-injection hook: multiplies J_n inside the flux-qsd-algebra gate so
  // the gate's ability to fail can itself be demonstrated.
  double corrupt_jn = 1.0;
};

// Runs the acceptance gates (in order) and returns one verdict each. A gate
// that throws is reported as failed with the exception text in `detail`.
std::vector<Verdict> run_acceptance(const VerifyOptions& options = {});

}  // namespace bd
