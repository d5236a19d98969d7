#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "fockq/linalg.hpp"

namespace fockq {

// A named verification of one algebraic identity of the quantization,
// executed on seeded random systems and fixed model systems.  `anchor`
// states the identity being verified in formula form.
struct CheckResult {
  std::string name;
  std::string anchor;
  bool passed = false;
  double residual = 0.0;
  double tolerance = 0.0;
  double seconds = 0.0;
  std::string detail;
};

struct CheckOptions {
  std::uint64_t seed = 1;
  double tol = kDefaultTol;
  int cutoff = 6;  // bosonic truncation used by the checks
  int trials = 3;  // random systems per species per check
  int jobs = 1;
};

struct CheckSpec {
  std::string name;
  std::string anchor;
  // Fills residual/tolerance/detail; `passed` is derived afterwards.
  std::function<void(const CheckOptions&, CheckResult&)> run;
};

// The full catalog, sorted by name.
const std::vector<CheckSpec>& check_registry();

// Runs the named checks (all when `names` is empty) with `jobs` worker
// threads.  Each check draws its randomness from sub_seed(seed, name), so
// results do not depend on scheduling.  Unknown names raise ConfigError.
std::vector<CheckResult> run_checks(const std::vector<std::string>& names,
                                    const CheckOptions& opt);

// Deterministic JSON report (keys sorted, checks sorted by name).
std::string serialize_report(const std::vector<CheckResult>& results,
                             const CheckOptions& opt);

}  // namespace fockq
