#pragma once

// Binary-expansion combinatorics (2-adic valuation, block starts, complements)
// and exact or modular binomial coefficients B_{i,j} = C(i+j, i).

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include <gmpxx.h>

namespace tcs {

/// 2-adic valuation. Throws InvalidInput for n = 0.
int nu(std::uint64_t n);

/// Positions of the 1-digits of k. Throws InvalidInput for k = 0.
std::set<int> pset(std::uint64_t k);

/// Positions i > 0 with d_{i+1} = 0, d_i = 1, d_{i-1} = 1.
std::set<int> blockStarts(std::uint64_t n);

/// sum_{j <= i} (1 - d_j) 2^j.
std::uint64_t zComplement(std::uint64_t n, int i);

/// Davis's defect m_{n,s} = max{2^{nu(n+1)} - 1, 2^{i+1} - 1 - s Z_i(n) : i in S(n)},
/// floored at 0. Throws InvalidInput for s < 3 (the s = 2 case belongs to the
/// immersion problem and is outside this formula).
std::int64_t mDefect(std::uint64_t n, std::uint64_t s);

/// Parity of C(i+j, i): odd iff the binary digits of i and j are disjoint.
bool binomIsOdd(std::uint64_t i, std::uint64_t j);

enum class Parity { Even, Odd };
Parity binomParity(std::uint64_t i, std::uint64_t j);

/// Exact C(i+j, i).
mpz_class binomBig(unsigned long i, unsigned long j);

/// C(i+j, i) mod p by Lucas' theorem. Throws InvalidInput if p is not prime.
std::uint64_t binomMod(std::uint64_t i, std::uint64_t j, std::uint64_t p);

/// Smallest s making every block-start term of mDefect non-positive:
/// max{3, ceil((2^{i+1} - 1) / Z_i(n)) : i in S(n)}. Returns nothing when some
/// Z_i(n) = 0 (the threshold is then not determined). Throws for odd n or n < 2.
std::optional<std::uint64_t> maximalityThreshold(std::uint64_t n);

struct BinaryProfile {
  std::uint64_t n = 0;
  std::vector<int> digits;  // d_0, d_1, ...
  int nu = 0;
  std::set<int> blockStarts;
  std::vector<std::uint64_t> complements;  // Z_0(n), Z_1(n), ..., one per digit

  static BinaryProfile of(std::uint64_t n);
};

}  // namespace tcs
