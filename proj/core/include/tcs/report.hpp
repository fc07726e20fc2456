#pragma once

// Assembly of lower and upper bounds on TC_s for the manifold families the
// engine covers, with the licensing result named on every line.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tcs/chain.hpp"
#include "tcs/cyclic_models.hpp"
#include "tcs/nonorient.hpp"
#include "tcs/orientable.hpp"
#include "tcs/zcl.hpp"

namespace tcs {

/// How "does not divide" is read in the exact-value statement for Z_p:
/// Prime tests p against C(2k, k); LiteralS tests s against C(2k, k)^{floor(s/2)}.
enum class DivisorReading { Prime, LiteralS };

std::string toString(DivisorReading r);
DivisorReading parseDivisorReading(const std::string& text);

struct ManifoldDescriptor {
  GroupSpec group;
  int n = 0;
  bool orientable = true;
  bool catEqualsDim = true;
  /// Overrides the standard fundamental class in orientable cases.
  std::optional<ChainElement> fundamentalClass;
};

struct ReportOptions {
  DivisorReading reading = DivisorReading::Prime;
  /// Obstruction modules run live up to this s; above it the theorem that
  /// covers every s is cited instead.
  int maxLiveS = 6;
  DecideOptions decide{20000, 4000};
  NonorientOptions nonorient{};
};

struct BoundLine {
  int s = 0;
  std::int64_t lower = 0;
  std::int64_t upper = 0;
  std::optional<std::int64_t> exact;
  std::string lowerCitation;
  std::string upperCitation;
  /// Set with exact: the result giving the exact value.
  std::string exactCitation;
  /// How the upper bound was obtained: "live", "cited" or "trivial".
  std::string upperSource;
  std::optional<LensBound> lens;
  std::vector<std::string> notes;
};

struct BoundReport {
  ManifoldDescriptor manifold;
  std::string family;
  bool theoremApplies = false;
  std::vector<BoundLine> lines;
};

/// Throws InvalidInput for sLo < 2, sHi < sLo or n < 2.
BoundReport reportBounds(const ManifoldDescriptor& m, int sLo, int sHi, const ReportOptions& options = {});

}  // namespace tcs
