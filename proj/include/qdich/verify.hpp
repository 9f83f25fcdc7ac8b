#ifndef QDICH_VERIFY_HPP
#define QDICH_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace qdich {

struct CheckResult {
  std::string name;
  int trials = 0;
  double worst_slack = 0.0;
  bool equality = false;  // pass means |worst_slack| <= tol; otherwise worst_slack >= -tol
  bool pass = false;
};

struct SuiteReport {
  std::vector<CheckResult> checks;  // sorted by worst slack, tightest first
  std::uint64_t seed = 0;
  std::vector<int> dims_tested;
  double tolerance = 0.0;
  bool all_pass = true;

  std::string to_json() const;
  std::string to_table() const;
};

// Runs every paper inequality/identity over seeded random ensembles.
// Deterministic for a fixed (seed, trials, dims): each check draws from an
// independent generator derived from (seed, check name), so the thread count
// never changes results. include_mutation_control enables the deliberately
// corrupted DPI check used as a harness self-test.
SuiteReport run_suite(std::uint64_t seed, int trials, const std::vector<int>& dims,
                      double tolerance, bool include_mutation_control = false);

// names the suite must cover, one per in-scope labeled property
const std::vector<std::string>& coverage_manifest();

}  // namespace qdich

#endif
