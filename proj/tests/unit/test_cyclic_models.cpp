#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tcs/cyclic_models.hpp"
#include "tcs/errors.hpp"

using namespace tcs;

namespace {

ChainElement diag(unsigned long q, DiagonalVariant v, int p, std::optional<Integer> alpha = std::nullopt) {
  ChainElement out(p);
  for (const auto& [k, l, c] : diagonalTerms(q, v, p, alpha)) out.addTerm(BasisLabel{k, l}, c);
  return out;
}

}  // namespace

TEST(GroupSpec, ParseRoundTrip) {
  for (const char* text : {"Z_3 x Z_3", "Z^2 x Z_3", "Z_2", "Z", "Z^3", "Z x Z_4 x Z_2"}) {
    const GroupSpec g = GroupSpec::parse(text);
    EXPECT_EQ(GroupSpec::parse(g.toString()), g) << text;
  }
  EXPECT_EQ(GroupSpec::parse("Z x Z x Z_5").toString(), "Z^2 x Z_5");
  EXPECT_EQ(GroupSpec::parse("Z^2 x Z_3").freeRank(), 2u);
  EXPECT_THROW(GroupSpec::parse(""), InvalidInput);
  EXPECT_THROW(GroupSpec::parse("Z_1"), InvalidInput);
  EXPECT_THROW(GroupSpec::parse("Q_8"), InvalidInput);
}

TEST(Models, Differentials) {
  const ChainComplex c2 = complexC(2, 6);
  EXPECT_EQ(c2.differential(BasisLabel{2}), ChainElement::parse("2[1]"));
  EXPECT_TRUE(c2.differential(BasisLabel{1}).isZero());
  const ChainComplex z = complexFreeZ(3);
  EXPECT_EQ(z.rank(0), 1u);
  EXPECT_EQ(z.rank(1), 1u);
  EXPECT_EQ(z.rank(2), 0u);
  EXPECT_EQ(homology(z, 1).toString(), "Z");
  EXPECT_THROW(factorComplex(3, SlotTwist::Twisted, 4), InvalidInput);
}

TEST(Models, GroupComplexBasis) {
  const ChainComplex c = groupComplex(GroupSpec::parse("Z_3 x Z_3"), 6);
  std::vector<BasisLabel> want{{0, 5}, {1, 4}, {2, 3}, {3, 2}, {4, 1}, {5, 0}};
  EXPECT_TRUE(std::ranges::equal(c.basis(5), want));
  const ChainComplex single = groupComplex(GroupSpec::parse("Z_5"), 6);
  const ChainComplex direct = complexC(5, 6);
  for (int k = 0; k <= 6; ++k) EXPECT_TRUE(std::ranges::equal(single.basis(k), direct.basis(k)));
  const ChainComplex z2 = groupComplex(GroupSpec::parse("Z^2"), 3);
  EXPECT_EQ(z2.rank(2), 1u);
  EXPECT_TRUE(std::ranges::equal(z2.basis(2), std::vector<BasisLabel>{{1, 1}}));
}

TEST(StructureMaps, DiagonalValues) {
  EXPECT_EQ(diag(3, DiagonalVariant::Plain, 2), ChainElement::parse("[0,2] + 3[1,1] + [2,0]"));
  EXPECT_EQ(diag(5, DiagonalVariant::Plain, 0), ChainElement::parse("[0,0]"));
  ChainElement right(6);
  for (int k = 0; k <= 6; ++k) right.addTerm(BasisLabel{k, 6 - k}, k % 2 ? -1 : 1);
  EXPECT_EQ(diag(2, DiagonalVariant::TwistRight, 6), right);
  for (const auto& [k, l, c] : diagonalTerms(2, DiagonalVariant::TwistLeft, 7)) EXPECT_EQ(c, 1);
  EXPECT_THROW(diagonalTerms(3, DiagonalVariant::TwistLeft, 2), InvalidInput);
}

TEST(StructureMaps, DiagonalCoefficientTable) {
  for (unsigned long q = 2; q <= 9; ++q)
    for (int p = 0; p <= 12; ++p) {
      const ChainElement d = diag(q, DiagonalVariant::Plain, p);
      for (int k = 0; k <= p; ++k) {
        const Integer want = (k * (p - k)) % 2 ? Integer(q * (q - 1) / 2) : Integer(1);
        EXPECT_EQ(d.coefficient(BasisLabel{k, p - k}), want);
      }
    }
}

TEST(StructureMaps, CounitLaw) {
  for (unsigned long q = 2; q <= 6; ++q)
    for (int p = 0; p <= 12; ++p) {
      Integer left = 0, right = 0;
      for (const auto& [k, l, c] : diagonalTerms(q, DiagonalVariant::Plain, p)) {
        if (l == 0) right += c;
        if (k == 0) left += c;
      }
      EXPECT_EQ(left, 1);
      EXPECT_EQ(right, 1);
    }
}

TEST(StructureMaps, ChainMapLaw) {
  for (unsigned long q = 2; q <= 6; ++q) {
    EXPECT_TRUE(verifyChainMap(diagonalMap(q, DiagonalVariant::Plain, 11), 10));
    EXPECT_TRUE(verifyChainMap(pontryaginMap(q, PontryaginPattern::Plain, 11), 10));
    EXPECT_TRUE(verifyChainMap(inversionMap(q, 11), 10));
  }
  EXPECT_TRUE(verifyChainMap(diagonalMap(2, DiagonalVariant::TwistLeft, 11), 10));
  EXPECT_TRUE(verifyChainMap(diagonalMap(2, DiagonalVariant::TwistRight, 11), 10));
  EXPECT_TRUE(verifyChainMap(pontryaginMap(2, PontryaginPattern::Twisted, 11), 10));
  const GroupSpec g = GroupSpec::parse("Z_2 x Z_3");
  for (auto kind : {StructureKind::Diagonal, StructureKind::Pontryagin, StructureKind::Inversion, StructureKind::Chi})
    EXPECT_TRUE(verifyChainMap(structureMapsForGroup(g, kind, 9), 8));
}

// The chain-map law holds for any odd-odd coefficient with trivial
// coefficients, so a wrong value has to be caught by cocommutativity mod q.
TEST(StructureMaps, CorruptedCoefficientIsDetected) {
  EXPECT_TRUE(verifyChainMap(diagonalMap(3, DiagonalVariant::Plain, 11, Integer(1)), 10));
  EXPECT_EQ(diagonalCocommutativityViolation(3, 10, Integer(1)), 2);
  for (unsigned long q = 2; q <= 8; ++q) EXPECT_FALSE(diagonalCocommutativityViolation(q, 12));
}

TEST(StructureMaps, Pontryagin) {
  EXPECT_EQ(pontryaginTerm(2, 2, 2), (std::make_pair(4, Integer(2))));
  for (int k = 0; k <= 9; ++k) EXPECT_EQ(pontryaginTerm(4, 0, k), (std::make_pair(k, Integer(1))));
  EXPECT_FALSE(pontryaginTerm(3, 3, 5));
  // Unit and graded commutativity: [a][b] = (-1)^{ab}[b][a].
  for (int a = 0; a <= 12; ++a)
    for (int b = 0; a + b <= 12; ++b) {
      const auto ab = pontryaginTerm(5, a, b);
      const auto ba = pontryaginTerm(5, b, a);
      ASSERT_EQ(ab.has_value(), ba.has_value());
      if (ab) {
        EXPECT_EQ(ab->second, ((a * b) % 2 ? -1 : 1) * ba->second);
        EXPECT_EQ(ab->second, oracle::binomFactorial(static_cast<unsigned long>(a / 2), static_cast<unsigned long>(b / 2)));
      }
    }
}

TEST(StructureMaps, Inversion) {
  EXPECT_EQ(inversionCoefficient(3, 4), 4);
  EXPECT_EQ(inversionCoefficient(7, 0), 1);
  for (int i = 0; i <= 12; ++i) EXPECT_EQ(inversionCoefficient(2, i), 1);
  for (unsigned long q = 2; q <= 6; ++q)
    for (int i = 0; i <= 10; ++i) {
      Integer want = 1;
      for (int t = 0; t < (i + 1) / 2; ++t) want *= static_cast<long>(q) - 1;
      EXPECT_EQ(inversionCoefficient(q, i), want);
    }
}

TEST(StructureMaps, GroupLevelExamples) {
  const GroupSpec g = GroupSpec::parse("Z_3 x Z_3");
  // componentwise ([0][0]) (x) ([4][5]) with sign (-1)^{4*0}
  const ChainElement prod = groupPontryagin(g, BasisLabel{0, 4, 0, 5});
  EXPECT_EQ(prod, ChainElement::parse("6[0,9]"));  // B_{2,2} = 6
  const ChainElement chi = groupChi(g, BasisLabel{0, 4, 0, 5});
  EXPECT_EQ(chi, ChainElement::parse("48[0,9]"));  // j[0,5] = 2^3 [0,5]
  EXPECT_TRUE(reduceMod(chi, 3).isZero());
  const GroupSpec z5 = GroupSpec::parse("Z_5");
  for (int k = 0; k <= 6; ++k) {
    ChainElement d(k);
    for (const auto& [a, b, c] : diagonalTerms(5, DiagonalVariant::Plain, k)) d.addTerm(BasisLabel{a, b}, c);
    EXPECT_EQ(groupDiagonal(z5, BasisLabel{k}), d);
  }
}
