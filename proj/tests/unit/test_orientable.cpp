#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tcs/cyclic_models.hpp"
#include "tcs/errors.hpp"
#include "tcs/homology.hpp"
#include "tcs/orientable.hpp"

using namespace tcs;

namespace {

BasisLabel slice(const BasisLabel& x, std::size_t from, std::size_t count) {
  return BasisLabel(std::vector<int>(x.factors.begin() + static_cast<long>(from),
                                     x.factors.begin() + static_cast<long>(from + count)));
}

// Expands (1 (x) D (x) ... (x) D (x) 1) fully, then applies chi to each
// consecutive pair and tensors the results.
ChainElement chiSNaive(const GroupSpec& g, const std::vector<ChainElement>& xs) {
  const std::size_t F = g.orders.size();
  const std::size_t s = xs.size();
  int degree = 0;
  for (const auto& x : xs) degree += x.degree();
  std::vector<std::pair<std::vector<BasisLabel>, Integer>> words{{{}, Integer(1)}};
  for (std::size_t i = 0; i < s; ++i) {
    std::vector<std::pair<std::vector<BasisLabel>, Integer>> next;
    for (const auto& [w, c] : words)
      for (const auto& [b, cb] : xs[i].terms()) {
        if (i == 0 || i + 1 == s) {
          auto w2 = w;
          w2.push_back(b);
          next.emplace_back(std::move(w2), c * cb);
          continue;
        }
        const ChainElement d = groupDiagonal(g, b);
        for (const auto& [kl, cd] : d.terms()) {
          auto w2 = w;
          w2.push_back(slice(kl, 0, F));
          w2.push_back(slice(kl, F, F));
          next.emplace_back(std::move(w2), c * cb * cd);
        }
      }
    words = std::move(next);
  }
  ChainElement out(degree);
  for (const auto& [w, c] : words) {
    ChainElement acc = ChainElement::single(BasisLabel(), c);
    for (std::size_t k = 0; k + 1 < w.size(); k += 2) acc = tensorProduct(acc, groupChi(g, concat(w[k], w[k + 1])));
    out += acc;
  }
  return out;
}

ChainElement randomCycle(oracle::Gen& gen, const ChainComplex& c, int k) {
  ChainElement w(k + 1);
  for (const auto& lab : c.basis(k + 1))
    if (gen.range(0, 3) == 0) w.addTerm(lab, gen.range(-2, 2));
  return c.boundary(w);
}

}  // namespace

TEST(Chi, TwoFoldIsProductWithInverse) {
  const GroupSpec g = GroupSpec::parse("Z_5");
  for (int a = 0; a <= 6; ++a)
    for (int b = 0; b <= 6; ++b) {
      ChainElement want(a + b);
      if (const auto t = pontryaginTerm(5, a, b)) want.addTerm(BasisLabel{t->first}, t->second * inversionCoefficient(5, b));
      EXPECT_EQ(groupChi(g, BasisLabel{a, b}), want);
      EXPECT_EQ(chiSOnTensor(g, {ChainElement::single(BasisLabel{a}), ChainElement::single(BasisLabel{b})}), want);
    }
}

TEST(Chi, UnitsGoToUnits) {
  for (const char* text : {"Z_3", "Z_2 x Z_4", "Z^2 x Z_3"}) {
    const GroupSpec g = GroupSpec::parse(text);
    const BasisLabel zero(std::vector<int>(g.orders.size(), 0));
    for (int s = 2; s <= 5; ++s) {
      const ChainElement out = chiSOnTensor(g, std::vector<ChainElement>(static_cast<std::size_t>(s), ChainElement::single(zero)));
      BasisLabel want;
      for (int i = 0; i + 1 < s; ++i) want = concat(want, zero);
      EXPECT_EQ(out, ChainElement::single(want)) << text << " s=" << s;
    }
  }
}

TEST(Chi, StreamingMatchesFullExpansion) {
  oracle::Gen gen(3);
  for (const char* text : {"Z_3", "Z_2 x Z_3", "Z_3 x Z_3", "Z x Z_2"}) {
    const GroupSpec g = GroupSpec::parse(text);
    const ChainComplex c = groupComplex(g, 5);
    for (int trial = 0; trial < 6; ++trial) {
      const int s = static_cast<int>(gen.range(2, 4));
      std::vector<ChainElement> xs;
      for (int i = 0; i < s; ++i) {
        const int k = static_cast<int>(gen.range(0, 4));
        ChainElement x(k);
        for (const auto& lab : c.basis(k))
          if (gen.coin()) x.addTerm(lab, gen.range(-3, 3));
        xs.push_back(x);
      }
      EXPECT_EQ(chiSOnTensor(g, xs), chiSNaive(g, xs)) << text;
    }
  }
}

TEST(Chi, IsAChainMap) {
  EXPECT_TRUE(verifyChainMap(chiS(GroupSpec::parse("Z_3"), 3, 13), 12));
  EXPECT_TRUE(verifyChainMap(chiS(GroupSpec::parse("Z_2 x Z_2"), 3, 7), 6));
}

TEST(Obstruction, CyclicOddDimensionIsZeroChain) {
  for (unsigned long q = 2; q <= 6; ++q)
    for (int n : {1, 3, 5, 7})
      for (int s = 2; s <= 4; ++s)
        for (long lambda : {1L, 2L, -3L}) {
          const GroupSpec g{{q}};
          FundamentalClassSpec f{g, n, ChainElement::single(BasisLabel{n}, lambda)};
          EXPECT_TRUE(obstructionChain(f, s).isZero()) << q << ' ' << n << ' ' << s;
        }
  const ObstructionVerdict v = decideOrientable(FundamentalClassSpec::standard(GroupSpec::parse("Z_2"), 3), 2);
  EXPECT_EQ(v.status, ObstructionStatus::ZeroChain);
  EXPECT_EQ(v.conclusion, Conclusion::NonMaximal);
}

TEST(Obstruction, EvenDimensionalCyclicClassIsZero) {
  const FundamentalClassSpec f = FundamentalClassSpec::standard(GroupSpec::parse("Z_4"), 4);
  EXPECT_TRUE(f.chain.isZero());
  EXPECT_EQ(decideOrientable(f, 3).conclusion, Conclusion::NonMaximal);
}

TEST(Obstruction, MultilinearInTheClass) {
  const GroupSpec g = GroupSpec::parse("Z_3 x Z_3");
  const ChainElement m = ChainElement::parse("[0,5]+[5,0]");
  for (int s : {2, 3}) {
    const ChainElement base = obstructionChain({g, 5, m}, s);
    for (long lambda : {2L, -1L, 3L}) {
      Integer scale = 1;
      for (int i = 0; i < s; ++i) scale *= lambda;
      EXPECT_EQ(obstructionChain({g, 5, m * Integer(lambda)}, s), base * scale);
    }
  }
}

TEST(Obstruction, IsACycle) {
  const GroupSpec g = GroupSpec::parse("Z_3 x Z_3");
  const ChainElement ob = obstructionChain({g, 5, ChainElement::parse("[0,5]+[5,0]")}, 3);
  const ChainComplex target = groupPower(g, 2, 14, 16);
  EXPECT_TRUE(target.boundary(ob).isZero());
}

TEST(Obstruction, ProductExampleIsMaximalModThree) {
  const GroupSpec g = GroupSpec::parse("Z_3 x Z_3");
  const ObstructionVerdict v = decideOrientable({g, 5, ChainElement::parse("[0,5]+[5,0]")}, 3);
  EXPECT_EQ(v.status, ObstructionStatus::NonzeroClass);
  EXPECT_EQ(v.conclusion, Conclusion::Maximal);
  ASSERT_TRUE(v.witnessPrime);
  EXPECT_EQ(*v.witnessPrime, 3u);
  ChainElement component(15);
  const ChainElement reduced = reduceMod(v.obstruction, 3);
  for (const auto& [lab, c] : reduced.terms())
    if (lab.factors[0] == 5 && lab.factors[1] == 1) component.addTerm(lab, c);
  EXPECT_EQ(component, ChainElement::parse("[5,1,5,4]"));
}

TEST(Obstruction, ProductExampleSymmetricUnderFactorSwap) {
  const GroupSpec g = GroupSpec::parse("Z_3 x Z_3");
  const ChainElement ob = reduceMod(obstructionChain({g, 5, ChainElement::parse("[0,5]+[5,0]")}, 3), 3);
  ChainElement swapped(15);
  for (const auto& [lab, c] : ob.terms())
    swapped.addTerm(BasisLabel{lab.factors[1], lab.factors[0], lab.factors[3], lab.factors[2]},
                    c * permutationSign(BasisLabel{lab.factors[0], lab.factors[1]}, std::vector<int>{1, 0}) *
                        permutationSign(BasisLabel{lab.factors[2], lab.factors[3]}, std::vector<int>{1, 0}));
  EXPECT_EQ(reduceMod(swapped, 3), ob);
}

TEST(Obstruction, VerdictInvariantUnderBoundaries) {
  oracle::Gen gen(17);
  const GroupSpec g = GroupSpec::parse("Z_3 x Z_3");
  const ChainComplex c = groupComplex(g, 7);
  const ChainElement m = ChainElement::parse("[0,5]+[5,0]");
  for (int trial = 0; trial < 3; ++trial) {
    const ChainElement shifted = m + randomCycle(gen, c, 5);
    const ObstructionVerdict v = decideOrientable({g, 5, shifted}, 3);
    EXPECT_EQ(v.conclusion, Conclusion::Maximal);
  }
  const GroupSpec z4 = GroupSpec::parse("Z_4");
  const ChainComplex c4 = complexC(4, 8);
  for (int trial = 0; trial < 5; ++trial) {
    const ChainElement shifted = ChainElement::single(BasisLabel{5}) + randomCycle(gen, c4, 5);
    const ObstructionVerdict v = decideOrientable({z4, 5, shifted}, 3);
    EXPECT_EQ(v.conclusion, Conclusion::NonMaximal);
  }
}

TEST(Obstruction, FreeAbelian) {
  for (int r = 1; r <= 4; ++r)
    for (int s = 2; s <= 4; ++s) {
      GroupSpec g;
      g.orders.assign(static_cast<std::size_t>(r), 0);
      const int n = r;
      const ChainComplex target = groupPower(g, s - 1, 0, s * n + 1);
      if (s * n > (s - 1) * r) {
        EXPECT_EQ(homology(target, s * n).freeRank, 0u);
        EXPECT_EQ(decideOrientable(FundamentalClassSpec::standard(g, n), s).conclusion, Conclusion::NonMaximal);
      }
    }
}

TEST(Obstruction, FreeTimesCyclic) {
  for (int s : {2, 3}) {
    EXPECT_TRUE(freeTimesCyclicVanishing(1, 2, 3, s, MonomialChoice::EachMonomial).allZero());
    EXPECT_TRUE(freeTimesCyclicVanishing(1, 2, 3, s, MonomialChoice::SumOfAll).allZero());
  }
  const auto r = freeTimesCyclicVanishing(2, 3, 3, 2, MonomialChoice::EachMonomial);
  EXPECT_EQ(r.cases.size(), freeTimesCyclicMonomials(2, 3).size());
  EXPECT_TRUE(r.allZero());
  EXPECT_THROW(freeTimesCyclicVanishing(3, 2, 3, 2, MonomialChoice::EachMonomial), MethodInapplicable);
  // With no free part the criterion is the cyclic one.
  EXPECT_TRUE(freeTimesCyclicVanishing(0, 5, 3, 3, MonomialChoice::SumOfAll).allZero());
}

TEST(Obstruction, RejectsBadClasses) {
  const GroupSpec g = GroupSpec::parse("Z_3");
  EXPECT_THROW(decideOrientable({g, 5, ChainElement::parse("[4]")}, 2), InvalidInput);
  EXPECT_THROW(decideOrientable({g, 4, ChainElement::parse("[4]")}, 2), InvalidInput);
  EXPECT_THROW(decideOrientable({g, 3, ChainElement::parse("[3,0]")}, 2), InvalidInput);
  EXPECT_THROW(decideOrientable({g, 3, ChainElement::parse("[3]")}, 1), InvalidInput);
  EXPECT_THROW(FundamentalClassSpec::standard(GroupSpec::parse("Z_3 x Z_3"), 5), InvalidInput);
}
