#pragma once

// Homology groups and boundary solving for truncated integer chain complexes.

#include <optional>
#include <string>
#include <vector>

#include "tcs/chain.hpp"
#include "tcs/smith.hpp"

namespace tcs {

/// Matrix of d_k : C_k -> C_{k-1} in the sorted bases (rows: degree k-1).
SparseMatrix boundaryMatrix(const ChainComplex& c, int k);

/// Coordinates of a homogeneous chain in basis(x.degree()). Throws
/// InvalidInput when a label is not a basis element.
std::vector<Integer> coordinates(const ChainComplex& c, int k, const ChainElement& x);
ChainElement fromCoordinates(const ChainComplex& c, int k, const std::vector<Integer>& v);

struct HomologyGroup {
  int degree = 0;
  unsigned long modulus = 0;  // 0: integral
  std::size_t freeRank = 0;   // integral only
  std::vector<Integer> torsion;  // invariant factors > 1, ascending; integral only
  std::size_t dimension = 0;     // F_p only

  /// "Z^2 + Z_2 + Z_4", "0", or "F_3^5".
  std::string toString() const;
  bool isZero() const;
};

/// H_k(C) over Z (modulus 0) or H_k(C (x) F_p) for a prime p. Requires
/// minDegree <= k - 1 (or k == 0) and k <= maxDegree - 1.
HomologyGroup homology(const ChainComplex& c, int k, unsigned long modulus = 0);

/// dim H_k(C (x) F_p), an upper bound on the free rank of H_k(C) by universal
/// coefficients. Cheap compared with the integral Smith form.
std::size_t freeRankUpperBound(const ChainComplex& c, int k, unsigned long p);

struct BoundarySolve {
  std::optional<ChainElement> preimage;
  /// Obstruction to solving, as coordinates of U z (see solveInteger).
  std::vector<std::pair<std::size_t, Integer>> residue;
};

/// Solves d x = z over the integers. Throws InvalidInput naming a label if z is
/// not a cycle, or if the complex does not reach degree(z) + 1.
BoundarySolve solveBoundary(const ChainComplex& c, const ChainElement& z);

/// The preimage part of solveBoundary.
std::optional<ChainElement> isBoundary(const ChainComplex& c, const ChainElement& z);

/// Whether z reduced mod p is a boundary in C (x) F_p. z must be a cycle mod p.
bool isBoundaryModP(const ChainComplex& c, const ChainElement& z, unsigned long p);

/// Throws InvalidInput naming the first label of d(z) with a nonzero
/// coefficient (mod p when p != 0).
void requireCycle(const ChainComplex& c, const ChainElement& z, unsigned long p = 0);

}  // namespace tcs
