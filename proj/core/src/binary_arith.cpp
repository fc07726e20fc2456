#include "tcs/binary_arith.hpp"

#include <algorithm>
#include <string>

#include "tcs/errors.hpp"
#include "tcs/smith.hpp"

namespace tcs {

__extension__ typedef unsigned __int128 u128;

namespace {

int digit(std::uint64_t n, int i) { return i < 64 ? static_cast<int>((n >> i) & 1u) : 0; }

}  // namespace

int nu(std::uint64_t n) {
  if (n == 0) throw InvalidInput("nu(0) is undefined");
  return __builtin_ctzll(n);
}

std::set<int> pset(std::uint64_t k) {
  if (k == 0) throw InvalidInput("pset needs a positive integer");
  std::set<int> out;
  for (int i = 0; i < 64; ++i)
    if (digit(k, i)) out.insert(i);
  return out;
}

std::set<int> blockStarts(std::uint64_t n) {
  std::set<int> out;
  for (int i = 1; i < 63; ++i)
    if (digit(n, i + 1) == 0 && digit(n, i) == 1 && digit(n, i - 1) == 1) out.insert(i);
  return out;
}

std::uint64_t zComplement(std::uint64_t n, int i) {
  if (i < 0) throw InvalidInput("zComplement needs i >= 0");
  std::uint64_t z = 0;
  for (int j = 0; j <= i && j < 64; ++j)
    if (!digit(n, j)) z += std::uint64_t{1} << j;
  return z;
}

std::int64_t mDefect(std::uint64_t n, std::uint64_t s) {
  if (n == 0) throw InvalidInput("mDefect needs n >= 1");
  if (s < 3)
    throw InvalidInput("mDefect is defined for s >= 3; for s = 2 see the immersion-dimension "
                       "results for TC_2 of projective spaces");
  std::int64_t best = (std::int64_t{1} << nu(n + 1)) - 1;
  for (int i : blockStarts(n)) {
    std::int64_t term = (std::int64_t{1} << (i + 1)) - 1 -
                        static_cast<std::int64_t>(s) * static_cast<std::int64_t>(zComplement(n, i));
    best = std::max(best, term);
  }
  return std::max<std::int64_t>(best, 0);
}

bool binomIsOdd(std::uint64_t i, std::uint64_t j) { return (i & j) == 0; }

Parity binomParity(std::uint64_t i, std::uint64_t j) {
  return binomIsOdd(i, j) ? Parity::Odd : Parity::Even;
}

mpz_class binomBig(unsigned long i, unsigned long j) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), i + j, i);
  return r;
}

std::uint64_t binomMod(std::uint64_t i, std::uint64_t j, std::uint64_t p) {
  if (!isPrime(p)) throw InvalidInput("binomMod needs a prime modulus, got " + std::to_string(p));
  // Lucas: C(N, K) mod p is the product of C(N_t, K_t) over base-p digits.
  u128 N = static_cast<u128>(i) + j;
  u128 K = i;
  std::uint64_t result = 1;
  while (N > 0 || K > 0) {
    const std::uint64_t n = static_cast<std::uint64_t>(N % p);
    const std::uint64_t k = static_cast<std::uint64_t>(K % p);
    if (k > n) return 0;
    // C(n, k) mod p with n < p, as a product of fractions.
    std::uint64_t num = 1, den = 1;
    for (std::uint64_t t = 0; t < k; ++t) {
      num = static_cast<std::uint64_t>(static_cast<u128>(num) * (n - t) % p);
      den = static_cast<std::uint64_t>(static_cast<u128>(den) * (t + 1) % p);
    }
    // den^{-1} by Fermat.
    std::uint64_t inv = 1, b = den, e = p - 2;
    while (e) {
      if (e & 1) inv = static_cast<std::uint64_t>(static_cast<u128>(inv) * b % p);
      b = static_cast<std::uint64_t>(static_cast<u128>(b) * b % p);
      e >>= 1;
    }
    result = static_cast<std::uint64_t>(static_cast<u128>(result) * num % p * inv % p);
    N /= p;
    K /= p;
  }
  return result;
}

std::optional<std::uint64_t> maximalityThreshold(std::uint64_t n) {
  if (n < 2 || n % 2 != 0)
    throw InvalidInput("maximalityThreshold is stated for even n >= 2, got " + std::to_string(n));
  std::uint64_t best = 3;
  for (int i : blockStarts(n)) {
    const std::uint64_t z = zComplement(n, i);
    if (z == 0) return std::nullopt;
    const std::uint64_t num = (std::uint64_t{1} << (i + 1)) - 1;
    best = std::max(best, (num + z - 1) / z);
  }
  return best;
}

BinaryProfile BinaryProfile::of(std::uint64_t n) {
  if (n == 0) throw InvalidInput("BinaryProfile needs n >= 1");
  BinaryProfile p;
  p.n = n;
  for (std::uint64_t m = n; m; m >>= 1) p.digits.push_back(static_cast<int>(m & 1u));
  p.nu = tcs::nu(n);
  p.blockStarts = tcs::blockStarts(n);
  for (std::size_t i = 0; i < p.digits.size(); ++i)
    p.complements.push_back(zComplement(n, static_cast<int>(i)));
  return p;
}

}  // namespace tcs
