#pragma once

// Small chain models for cyclic groups Z_q (the periodic resolution tensored
// down to Z), the twisted model for Z_2 with orientation coefficients, the
// circle model for Z, and their chain-level diagonal, Pontryagin product and
// inversion.

#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "tcs/chain.hpp"

namespace tcs {

/// A finitely generated abelian group as an ordered product of cyclic factors.
/// Order 0 encodes an infinite cyclic factor.
struct GroupSpec {
  std::vector<unsigned long> orders;

  /// Grammar: terms `Z`, `Z^r`, `Z_q` (q >= 2) joined by `x`; whitespace is
  /// ignored. Example: "Z^2 x Z_4".
  static GroupSpec parse(std::string_view text);

  /// Canonical text: consecutive Z factors merged into Z^r, joined by " x ".
  std::string toString() const;

  std::size_t factorCount() const { return orders.size(); }
  std::size_t freeRank() const;
  bool operator==(const GroupSpec&) const = default;
};

enum class SlotTwist { Plain, Twisted };

/// C(Z_q): one generator per degree, d[2k] = q[2k-1], d[odd] = 0.
ChainComplex complexC(unsigned long q, int maxDeg);
/// The Z_2 model with orientation coefficients: d[2k+1] = -2[2k], d[even] = 0.
ChainComplex complexCTilde(int maxDeg);
/// Circle model for Z: generators [0], [1], zero differential.
ChainComplex complexFreeZ(int maxDeg);
/// Dispatch on order (0 = Z) and twist. Twisted is accepted only for order 2.
ChainComplex factorComplex(unsigned long order, SlotTwist twist, int maxDeg);

enum class DiagonalVariant {
  Plain,       // C -> C (x) C
  TwistLeft,   // C~ -> C~ (x) C, all coefficients 1
  TwistRight,  // C~ -> C (x) C~, coefficient (-1)^k on [k] (x) [l]
};

enum class PontryaginPattern {
  Plain,    // C (x) C -> C
  Twisted,  // C~ (x) C~ -> C~ (order 2 only)
};

/// Terms (k, l, coefficient) of the diagonal of [p] for one factor.
/// oddOddCoefficient replaces the odd-odd coefficient q(q-1)/2 of the plain
/// variant (used only to build deliberately corrupted maps in tests).
std::vector<std::tuple<int, int, Integer>> diagonalTerms(
    unsigned long order, DiagonalVariant variant, int p,
    const std::optional<Integer>& oddOddCoefficient = std::nullopt);

/// [a] ^ [b] for one factor as (degree, coefficient), or nothing when zero.
std::optional<std::pair<int, Integer>> pontryaginTerm(unsigned long order, int a, int b);

/// The scalar c with j[i] = c [i].
Integer inversionCoefficient(unsigned long order, int i);

ChainMapData diagonalMap(unsigned long q, DiagonalVariant variant, int maxDeg,
                         const std::optional<Integer>& oddOddCoefficient = std::nullopt);
ChainMapData pontryaginMap(unsigned long q, PontryaginPattern pattern, int maxDeg);
ChainMapData inversionMap(unsigned long q, int maxDeg);

/// Tensor product of the factor complexes, slot f holding factor f.
ChainComplex groupComplex(const GroupSpec& g, const std::vector<SlotTwist>& twist, int maxDeg);
ChainComplex groupComplex(const GroupSpec& g, int maxDeg);

/// The count-fold tensor power of groupComplex(g), restricted to degrees
/// [lo, hi]. Labels are blocks of factorCount() entries, one block per copy.
ChainComplex groupPower(const GroupSpec& g, int count, int lo, int hi);

/// Group-level kernels on single labels. Multi-factor groups act componentwise
/// with the slot interleaving carrying its Koszul sign.
///   groupDiagonal:   [x_1..x_F]                 -> sum [k_1..k_F, l_1..l_F]
///   groupPontryagin: [a_1..a_F, b_1..b_F]       -> sum [c_1..c_F]
///   groupInversion:  [x_1..x_F]                 -> c [x_1..x_F]
///   groupChi:        a (x) b                    -> a ^ j(b)
ChainElement groupDiagonal(const GroupSpec& g, const BasisLabel& x);
ChainElement groupPontryagin(const GroupSpec& g, const BasisLabel& ab);
ChainElement groupInversion(const GroupSpec& g, const BasisLabel& x);
ChainElement groupChi(const GroupSpec& g, const BasisLabel& ab);

enum class StructureKind { Diagonal, Pontryagin, Inversion, Chi };

/// The chain map of the given kind for the whole group, on complexes built to
/// maxDeg.
ChainMapData structureMapsForGroup(const GroupSpec& g, StructureKind kind, int maxDeg);

/// Mod-q graded cocommutativity of the plain diagonal of one factor: with
/// T([k] (x) [l]) = (-1)^{kl} [l] (x) [k], checks T(D[p]) = D[p] mod q for
/// p <= upToDegree. Returns the first failing degree. This detects a wrong
/// odd-odd coefficient, which the chain-map law alone cannot see.
std::optional<int> diagonalCocommutativityViolation(unsigned long q, int upToDegree,
                                                    const std::optional<Integer>& oddOddCoefficient = std::nullopt);

}  // namespace tcs
