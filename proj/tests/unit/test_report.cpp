#include <gtest/gtest.h>

#include "tcs/binary_arith.hpp"
#include "tcs/errors.hpp"
#include "tcs/report.hpp"

using namespace tcs;

namespace {

const BoundLine& lineFor(const BoundReport& r, int s) {
  for (const auto& l : r.lines)
    if (l.s == s) return l;
  throw std::runtime_error("missing line");
}

void checkWellFormed(const BoundReport& r) {
  for (const auto& l : r.lines) {
    EXPECT_LE(l.lower, l.upper) << "s=" << l.s;
    EXPECT_FALSE(l.lowerCitation.empty());
    EXPECT_FALSE(l.upperCitation.empty());
    if (l.exact) {
      EXPECT_EQ(l.lower, l.upper);
      EXPECT_EQ(*l.exact, l.lower);
      EXPECT_FALSE(l.exactCitation.empty());
    } else {
      EXPECT_LT(l.lower, l.upper);
    }
  }
}

}  // namespace

TEST(Report, OrientableProjectiveQuotientInDimensionFive) {
  const BoundReport r = reportBounds({GroupSpec::parse("Z_2"), 5, true, true, std::nullopt}, 3, 9);
  checkWellFormed(r);
  EXPECT_TRUE(r.theoremApplies);
  for (int s = 3; s <= 9; ++s) {
    const BoundLine& l = lineFor(r, s);
    ASSERT_TRUE(l.exact) << s;
    EXPECT_EQ(*l.exact, 5 * s - 1);
  }
}

TEST(Report, NonOrientableDimensionSix) {
  const BoundReport r = reportBounds({GroupSpec::parse("Z_2"), 6, false, true, std::nullopt}, 2, 10);
  checkWellFormed(r);
  EXPECT_LE(lineFor(r, 4).upper, 23);
  EXPECT_EQ(lineFor(r, 6).exact, 35);
  for (int s = 7; s <= 10; ++s) EXPECT_EQ(lineFor(r, s).exact, 6 * s);
  EXPECT_EQ(lineFor(r, 6).exactCitation, "z2-nonorientable-exact");
}

TEST(Report, OddPrimeLensQuotients) {
  for (auto [p, k] : {std::pair{3ul, 1}, {5ul, 1}, {5ul, 2}, {7ul, 3}}) {
    if (binomMod(static_cast<std::uint64_t>(k), static_cast<std::uint64_t>(k), p) == 0) continue;
    const int dim = 2 * k + 1;
    const BoundReport r = reportBounds({GroupSpec{{p}}, dim, true, true, std::nullopt}, 2, 6);
    checkWellFormed(r);
    for (int s = 2; s <= 6; ++s) {
      const BoundLine& l = lineFor(r, s);
      ASSERT_TRUE(l.exact) << p << ' ' << k << ' ' << s;
      EXPECT_EQ(*l.exact, s * dim - 1);
      ASSERT_TRUE(l.lens);
    }
  }
}

TEST(Report, LensBoundOnlyWhenBinomialVanishes) {
  // p = 3 divides C(4, 2) = 6, so the exact value is not claimed for dim 5.
  const BoundReport r = reportBounds({GroupSpec::parse("Z_3"), 5, true, true, std::nullopt}, 2, 4);
  checkWellFormed(r);
  EXPECT_EQ(lineFor(r, 2).lower, 5);
}

TEST(Report, UncoveredFamilyIsMarked) {
  const BoundReport r = reportBounds({GroupSpec::parse("Z_4 x Z_6"), 3, true, true, std::nullopt}, 2, 3);
  checkWellFormed(r);
  EXPECT_FALSE(r.theoremApplies);
}

TEST(Report, NeverInverted) {
  for (const char* group : {"Z_2", "Z_3", "Z_4", "Z_5"})
    for (int n = 2; n <= 8; ++n)
      for (bool orientable : {true, false})
        for (bool cat : {true, false}) {
          if (!orientable && (n % 2 || std::string(group) != "Z_2")) continue;
          if (orientable && cat && n % 2 == 0) continue;
          checkWellFormed(reportBounds({GroupSpec::parse(group), n, orientable, cat, std::nullopt}, 2, 9));
        }
}

TEST(Report, RejectsImpossibleDescriptor) {
  for (const char* group : {"Z_2", "Z_3", "Z_6"})
    EXPECT_THROW(reportBounds({GroupSpec::parse(group), 4, true, true, std::nullopt}, 2, 4), InvalidInput);
}

TEST(Report, DivisorReading) {
  EXPECT_EQ(parseDivisorReading("prime"), DivisorReading::Prime);
  EXPECT_EQ(parseDivisorReading("literal-s"), DivisorReading::LiteralS);
  EXPECT_THROW(parseDivisorReading("other"), InvalidInput);
}
