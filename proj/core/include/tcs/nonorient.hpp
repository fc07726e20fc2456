#pragma once

// Non-orientable manifolds with fundamental group Z_2 and even s = 2*sigma:
// the complex D = C~ (x) (C (x) C~)^{sigma-1} holding the obstruction, the
// closed-form expansion of the obstruction, the binomial-parity certificate,
// the even-to-odd rewriting and a direct boundary-solving oracle.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tcs/chain.hpp"
#include "tcs/cyclic_models.hpp"
#include "tcs/orientable.hpp"

namespace tcs {

struct DComplexSpec {
  int n = 0;  // even manifold dimension
  int s = 0;  // even
  std::optional<int> r;  // set when n = 2^{r+1} - 2

  static DComplexSpec fromR(int r, int s);
  /// Throws MethodInapplicable for odd s and InvalidInput for odd n.
  static DComplexSpec fromDimension(int n, int s);

  int sigma() const { return s / 2; }
  int m() const { return n / 2; }
  int slotCount() const { return s - 1; }
  /// Twisted, plain, twisted, ... (slot count s - 1).
  std::vector<SlotTwist> twistPattern() const;
  /// n = 2^{r+1} - 2 and 2 <= s <= n: the range where the parity certificate
  /// is a theorem.
  bool inTheoremScope() const;
};

/// D restricted to degrees [lo, hi], with the differential written out
/// directly. Throws Error if it disagrees with tensorFactors of the factor
/// complexes on any label.
ChainComplex dComplex(const DComplexSpec& spec, int lo, int hi);

/// The same complex assembled through tensorFactors.
ChainComplex dComplexViaTensor(const DComplexSpec& spec, int lo, int hi);

/// One summand of the obstruction expansion.
struct ExpansionTerm {
  std::vector<int> deltas;  // delta_1 .. delta_{s-2}
  std::vector<int> ps;
  std::vector<int> qs;      // p_i + q_i = m - delta_i
  int sign = 1;             // (-1)^{delta_2 + delta_4 + ...}
  Integer binomialProduct;  // B_{m,p_1} B_{q_1,p_2} ... B_{q_{s-2},m}
  BasisLabel generator;
};

/// Number of admissible (delta, p) tuples, exactly.
Integer expansionTermCount(const DComplexSpec& spec);

/// Calls visit on every term, in lexicographic order of (delta_1, p_1, ...).
/// Throws BudgetExceeded when the count exceeds budget.
void expandObstruction(const DComplexSpec& spec, const std::function<void(const ExpansionTerm&)>& visit,
                       std::uint64_t budget = 10'000'000);

/// Sum of all terms as a chain of degree s*n in D.
ChainElement aggregateObstruction(const DComplexSpec& spec, std::uint64_t budget = 10'000'000);

/// The obstruction computed by composing the twisted diagonals and products
/// on [n]^{(x)s} directly, independent of the closed-form expansion.
ChainElement chiSTwisted(const DComplexSpec& spec);

/// The twisted ^s chi as a chain map from C~^{(x)s} to D, both built to maxDeg.
ChainMapData chiSTwistedMap(const DComplexSpec& spec, int maxDeg);

struct ParityCertificate {
  /// True when no term with delta_1 = 0 has an odd coefficient (for s = 2:
  /// the single coefficient B_{m,m} is even).
  bool holds = false;
  std::size_t reachableStates = 0;
  std::string parityTableDigest;  // SHA-256 of the B_{a,b} mod 2 table, a,b <= m
  /// An accepting (delta, p) path when the certificate fails.
  std::optional<std::pair<std::vector<int>, std::vector<int>>> counterexample;
};

/// Reachability over states (position, q_i, delta_i) with transitions allowed
/// only through odd binomials.
ParityCertificate parityCertificateDP(const DComplexSpec& spec);

/// The same verdict by enumerating every term and testing the parity of the
/// exact coefficient.
bool parityCertificateBruteForce(const DComplexSpec& spec, std::uint64_t budget = 10'000'000);

struct RewriteResult {
  ChainElement rewritten;  // supported on odd labels (first entry odd)
  ChainElement preimage;   // c - rewritten = d(preimage)
};

/// Replaces each even label E (coefficient 2t) through the relation carried by
/// E + e_1. Throws InvalidInput when an even label has an odd coefficient.
RewriteResult rewriteEvenToOdd(const DComplexSpec& spec, const ChainElement& c);

struct NonorientOptions {
  bool oracle = false;
  std::uint64_t budget = 10'000'000;
  std::size_t maxTorsionBasis = 20000;
  std::size_t maxSmithColumns = 6000;
};

struct NonorientVerdict {
  DComplexSpec spec;
  bool inTheoremScope = false;
  // (a) torsion of the homology groups in degree s*n
  bool torsionComputed = false;
  bool torsionHolds = false;
  std::string torsionMethod;
  // (b) parity certificate
  ParityCertificate certificate;
  // (c) direct oracle
  bool oracleRan = false;
  std::string oracleSkipReason;
  Integer termCount;
  ChainElement aggregate;
  std::optional<bool> aggregateIsBoundary;
  std::optional<ChainElement> aggregatePreimage;
  std::optional<bool> rewriteVerified;
  std::optional<ChainElement> rewritten;

  Conclusion conclusion = Conclusion::Inconclusive;
  std::string note;
};

/// Throws MethodInapplicable for odd s.
NonorientVerdict decideNonorientable(const DComplexSpec& spec, const NonorientOptions& options = {});

}  // namespace tcs
