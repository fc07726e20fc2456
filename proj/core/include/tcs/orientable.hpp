#pragma once

// The obstruction chain ^s chi(m^{(x)s}) for orientable manifolds with abelian
// fundamental group, and the verdict it licenses on TC_s versus s * dim.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "tcs/chain.hpp"
#include "tcs/cyclic_models.hpp"

namespace tcs {

/// The image m of the fundamental class in group homology, as a cycle of
/// degree n in groupComplex(group).
struct FundamentalClassSpec {
  GroupSpec group;
  int n = 0;
  ChainElement chain;

  /// The standard choice when it is determined by (group, n):
  ///   Z_q, n odd: [n];  Z_q, n even: 0 (H_n vanishes);
  ///   Z^r, n == r: [1,...,1];  Z^r, n > r: 0.
  /// Throws InvalidInput when a class must be supplied explicitly.
  static FundamentalClassSpec standard(const GroupSpec& group, int n);
};

/// ^s chi = chi^{(x)(s-1)} o (Id (x) Delta^{(x)(s-2)} (x) Id) as a chain map from
/// groupPower(g, s) to groupPower(g, s-1), both built to maxDeg.
ChainMapData chiS(const GroupSpec& g, int s, int maxDeg);

/// ^s chi applied to x_1 (x) ... (x) x_s without expanding the tensor product;
/// each x_i is a chain in groupComplex(g).
ChainElement chiSOnTensor(const GroupSpec& g, const std::vector<ChainElement>& factors);

/// ^s chi(m (x) ... (x) m), an integer chain of degree s*n in the (s-1)-fold
/// power. Throws InvalidInput for s < 2.
ChainElement obstructionChain(const FundamentalClassSpec& f, int s);

enum class ObstructionStatus { ZeroChain, Boundary, NonzeroClass, Unresolved };
enum class Conclusion { NonMaximal, Maximal, Inconclusive };

std::string toString(ObstructionStatus s);
std::string toString(Conclusion c);

struct ObstructionVerdict {
  GroupSpec group;
  int n = 0;
  int s = 0;
  ChainElement obstruction;
  ObstructionStatus status = ObstructionStatus::Unresolved;
  Conclusion conclusion = Conclusion::Inconclusive;
  std::string method;
  std::optional<ChainElement> preimage;        // status Boundary
  std::optional<unsigned long> witnessPrime;   // NonzeroClass found mod p
  std::vector<std::pair<std::size_t, Integer>> residue;  // NonzeroClass found over Z
};

struct DecideOptions {
  /// Largest degree-(sn+1) basis for which the target complex is built.
  std::size_t maxTargetRank = 200000;
  /// Largest basis handed to the integral Smith form.
  std::size_t maxSmithColumns = 6000;
};

/// Zero chain or boundary: TC_s < sn. Class nonzero (mod some prime dividing
/// an order, or integrally): TC_s = sn. Throws InvalidInput if f.chain is not
/// a cycle of degree n.
ObstructionVerdict decideOrientable(const FundamentalClassSpec& f, int s,
                                    const DecideOptions& options = {});

enum class MonomialChoice { EachMonomial, SumOfAll };

struct FreeTimesCyclicResult {
  /// One entry per tested class: the class and whether its obstruction chain
  /// is the zero chain.
  std::vector<std::pair<ChainElement, bool>> cases;
  bool allZero() const;
};

/// Classes sigma (x) [odd] for Z^r x Z_q with exterior monomials sigma, of total
/// degree n. Throws MethodInapplicable when r >= n.
FreeTimesCyclicResult freeTimesCyclicVanishing(int r, unsigned long q, int n, int s,
                                               MonomialChoice choice);

/// The degree-n cycles sigma (x) [2p+1] used above, in label order.
std::vector<BasisLabel> freeTimesCyclicMonomials(int r, int n);

}  // namespace tcs
