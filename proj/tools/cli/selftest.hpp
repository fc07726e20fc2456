#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tcs::cli {

struct CriterionOutcome {
  int id = 0;  // 0 for the structure-map preflight
  std::string title;
  bool pass = false;
  std::string detail;
  std::int64_t millis = 0;
  std::int64_t limitMillis = 0;
  /// SHA-256 of the criterion's canonical computed values.
  std::string digest;
};

/// Structure maps of every cyclic factor: chain-map law for the diagonal,
/// product and inversion, plus mod-q cocommutativity of the diagonal.
/// corruptOddOdd replaces the odd-odd diagonal coefficient.
CriterionOutcome structureMapPreflight(std::optional<long> corruptOddOdd = std::nullopt);

/// Criteria 1..8. Inner loops use up to `threads` workers.
CriterionOutcome runCriterion(int id, unsigned threads);

/// Criterion 9: digests of criteria 1..8 under 1, 2 and 8 workers.
/// known supplies digests already computed at some thread count.
CriterionOutcome determinismCriterion(const std::vector<CriterionOutcome>& known = {}, unsigned knownThreads = 0);

struct SelftestOptions {
  unsigned threads = 1;
  std::optional<long> corruptOddOdd;
};

struct SelftestReport {
  CriterionOutcome preflight;
  std::vector<CriterionOutcome> criteria;  // 1..9
  bool allPass() const;
};

SelftestReport runSelftest(const SelftestOptions& options);

/// "PASS [3] title (12 ms / limit 60000 ms) detail"
std::string formatLine(const CriterionOutcome& c);

}  // namespace tcs::cli
