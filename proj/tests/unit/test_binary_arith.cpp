#include <gtest/gtest.h>

#include <bitset>
#include <string>

#include "oracles.hpp"
#include "tcs/binary_arith.hpp"
#include "tcs/errors.hpp"

using namespace tcs;

namespace {

// Digits read off a printed bit string, least significant first.
std::vector<int> digitsOf(std::uint64_t n) {
  std::string s = std::bitset<64>(n).to_string();
  s.erase(0, s.find('1'));
  std::vector<int> d;
  for (auto it = s.rbegin(); it != s.rend(); ++it) d.push_back(*it - '0');
  return d;
}

std::int64_t mDefectOracle(std::uint64_t n, std::uint64_t s) {
  std::uint64_t m = n + 1;
  int v = 0;
  while (m % 2 == 0) m /= 2, ++v;
  std::int64_t best = (std::int64_t{1} << v) - 1;
  const auto d = digitsOf(n);
  for (std::size_t i = 1; i + 1 <= d.size(); ++i) {
    const int next = i + 1 < d.size() ? d[i + 1] : 0;
    if (!(d[i] == 1 && d[i - 1] == 1 && next == 0)) continue;
    std::int64_t z = 0;
    for (std::size_t j = 0; j <= i; ++j) z += (1 - d[j]) * (std::int64_t{1} << j);
    best = std::max(best, (std::int64_t{1} << (i + 1)) - 1 - static_cast<std::int64_t>(s) * z);
  }
  return std::max<std::int64_t>(best, 0);
}

}  // namespace

TEST(BinaryArith, Nu) {
  EXPECT_EQ(nu(12), 2);
  EXPECT_EQ(nu(7), 0);
  EXPECT_EQ(nu(1024), 10);
  EXPECT_THROW(nu(0), InvalidInput);
}

TEST(BinaryArith, Pset) {
  EXPECT_EQ(pset(5), (std::set<int>{0, 2}));
  EXPECT_EQ(pset(42), (std::set<int>{1, 3, 5}));
  EXPECT_EQ(pset(1), (std::set<int>{0}));
}

TEST(BinaryArith, BlockStarts) {
  EXPECT_EQ(blockStarts(6), (std::set<int>{2}));
  EXPECT_TRUE(blockStarts(2).empty());
  EXPECT_EQ(blockStarts(14), (std::set<int>{3}));
  EXPECT_EQ(blockStarts(0b1101110), (std::set<int>{3, 6}));
}

TEST(BinaryArith, ZComplement) {
  EXPECT_EQ(zComplement(6, 2), 1u);
  EXPECT_EQ(zComplement(5, 0), 0u);
  EXPECT_EQ(zComplement(14, 3), 1u);
}

TEST(BinaryArith, ZComplementIdentity) {
  for (std::uint64_t n = 1; n <= 4096; ++n)
    for (int i = 0; i <= 11; ++i)
      ASSERT_EQ(zComplement(n, i) + (n % (std::uint64_t{1} << (i + 1))), (std::uint64_t{1} << (i + 1)) - 1)
          << n << ' ' << i;
}

TEST(BinaryArith, ProfileInvariants) {
  for (std::uint64_t n = 1; n <= 600; ++n) {
    const BinaryProfile p = BinaryProfile::of(n);
    std::uint64_t sum = 0;
    for (std::size_t j = 0; j < p.digits.size(); ++j) sum += static_cast<std::uint64_t>(p.digits[j]) << j;
    EXPECT_EQ(sum, n);
    EXPECT_EQ(p.digits, digitsOf(n));
    EXPECT_EQ(p.nu, nu(n));
    for (int i : p.blockStarts) EXPECT_GT(i, 0);
    EXPECT_EQ(p.blockStarts, blockStarts(n));
    for (std::size_t i = 0; i < p.complements.size(); ++i) EXPECT_EQ(p.complements[i], zComplement(n, static_cast<int>(i)));
  }
}

TEST(BinaryArith, MDefect) {
  EXPECT_EQ(mDefect(6, 4), 3);
  EXPECT_EQ(mDefect(6, 7), 0);
  for (std::uint64_t s = 3; s <= 40; ++s) EXPECT_EQ(mDefect(5, s), 1);
  EXPECT_THROW(mDefect(6, 2), InvalidInput);
  for (std::uint64_t n = 1; n <= 300; ++n)
    for (std::uint64_t s = 3; s <= 12; ++s) ASSERT_EQ(mDefect(n, s), mDefectOracle(n, s)) << n << ' ' << s;
}

TEST(BinaryArith, BinomialParity) {
  EXPECT_EQ(binomParity(1, 1), Parity::Even);
  EXPECT_EQ(binomParity(3, 4), Parity::Odd);
  for (std::uint64_t k = 0; k < 50; ++k) EXPECT_EQ(binomParity(k, 0), Parity::Odd);
  for (std::uint64_t i = 0; i <= 64; ++i)
    for (std::uint64_t j = 0; i + j <= 64; ++j) {
      const bool odd = oracle::binomFactorial(i, j) % 2 != 0;
      ASSERT_EQ(binomIsOdd(i, j), odd) << i << ' ' << j;
      ASSERT_EQ(binomParity(i, j) == Parity::Odd, odd);
    }
}

TEST(BinaryArith, BinomialValues) {
  EXPECT_EQ(binomBig(3, 3), 20);
  EXPECT_EQ(binomMod(3, 4, 3), 2u);
  for (std::uint64_t p : {2u, 3u, 5u, 7u}) {
    for (std::uint64_t i = 0; i <= 20; ++i) EXPECT_EQ(binomMod(i, 0, p), 1u);
    for (std::uint64_t i = 0; i <= 40; ++i)
      for (std::uint64_t j = 0; i + j <= 40; ++j) {
        const Integer exact = oracle::binomFactorial(i, j);
        ASSERT_EQ(binomBig(static_cast<unsigned long>(i), static_cast<unsigned long>(j)), exact);
        ASSERT_EQ(Integer(binomMod(i, j, p)), Integer(exact % static_cast<unsigned long>(p))) << i << ' ' << j << ' ' << p;
      }
  }
}

TEST(BinaryArith, MaximalityThreshold) {
  EXPECT_EQ(maximalityThreshold(6), 7u);
  EXPECT_EQ(maximalityThreshold(2), 3u);
  EXPECT_EQ(maximalityThreshold(14), 15u);
  EXPECT_THROW(maximalityThreshold(5), InvalidInput);
  // Independent route: first s >= 3 where the defect vanishes.
  for (std::uint64_t n = 2; n <= 64; n += 2) {
    std::optional<std::uint64_t> first;
    for (std::uint64_t s = 3; s <= 400 && !first; ++s)
      if (mDefectOracle(n, s) == 0) first = s;
    EXPECT_EQ(maximalityThreshold(n), first) << n;
  }
}

TEST(BinaryArith, TwoPowerFamily) {
  for (int r = 1; r <= 8; ++r) {
    const std::uint64_t n = (std::uint64_t{1} << (r + 1)) - 2;
    // n = 2 has no block of two ones.
    EXPECT_EQ(blockStarts(n), r == 1 ? std::set<int>{} : std::set<int>{r});
    EXPECT_EQ(maximalityThreshold(n), (std::uint64_t{1} << (r + 1)) - 1);
    for (std::uint64_t s = 3; s <= 600; s += 7)
      EXPECT_EQ(mDefect(n, s), std::max<std::int64_t>(0, (std::int64_t{1} << (r + 1)) - 1 - static_cast<std::int64_t>(s)));
  }
}
