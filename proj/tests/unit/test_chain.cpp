#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "oracles.hpp"
#include "tcs/chain.hpp"
#include "tcs/cyclic_models.hpp"
#include "tcs/errors.hpp"
#include "tcs/homology.hpp"
#include "tcs/smith.hpp"

using namespace tcs;

namespace {

ChainElement randomChain(oracle::Gen& g, const ChainComplex& c, int k) {
  ChainElement x(k);
  for (const auto& lab : c.basis(k))
    if (g.range(0, 2) == 0) x.addTerm(lab, g.range(-5, 5));
  return x;
}

std::vector<int> randomPermutation(oracle::Gen& g, int n) {
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  for (int i = n - 1; i > 0; --i) std::swap(p[static_cast<std::size_t>(i)], p[static_cast<std::size_t>(g.range(0, i))]);
  return p;
}

}  // namespace

TEST(ChainElement, ParseAndSerializeRoundTrip) {
  const ChainElement x = ChainElement::parse("[0,5] + [5,0] - 3[1,4]");
  EXPECT_EQ(x.coefficient(BasisLabel{1, 4}), -3);
  EXPECT_EQ(x.degree(), 5);
  EXPECT_EQ(ChainElement::parse(x.toString()), x);
  EXPECT_EQ(ChainElement::parse(ChainElement::parse("-16*[1,5,4,5] + 96*[5,1,0,9]").toString()).size(), 2u);
}

TEST(ChainElement, RejectsMixedDegrees) {
  ChainElement x = ChainElement::single(BasisLabel{1, 2});
  EXPECT_THROW(x.addTerm(BasisLabel{1, 1}, 1), InvalidInput);
  EXPECT_THROW(ChainElement::parse("[1,2"), InvalidInput);
}

TEST(ChainElement, CancellationDropsTerms) {
  ChainElement x = ChainElement::parse("2[3] - 2[3]");
  EXPECT_TRUE(x.isZero());
}

TEST(ChainElement, ReduceMod) {
  EXPECT_TRUE(reduceMod(ChainElement::parse("-6[0,9]"), 3).isZero());
  EXPECT_TRUE(reduceMod(ChainElement::parse("20[12]"), 2).isZero());
  EXPECT_EQ(reduceMod(ChainElement::parse("-1[5,4]"), 3), ChainElement::parse("2[5,4]"));
}

TEST(Permutation, OddOddSwapIsNegative) {
  const std::vector<int> swap{1, 0};
  EXPECT_EQ(permutationSign(BasisLabel{1, 1}, swap), -1);
  EXPECT_EQ(permutationSign(BasisLabel{0, 4}, swap), 1);
  EXPECT_EQ(permutationSign(BasisLabel{4, 5}, swap), 1);
  EXPECT_EQ(permuteSlotsWithSign(ChainElement::single(BasisLabel{1, 1}), swap),
            ChainElement::single(BasisLabel{1, 1}, -1));
}

TEST(Permutation, InverseRestoresElement) {
  oracle::Gen g(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int arity = static_cast<int>(g.range(1, 5));
    ChainElement x(0);
    bool first = true;
    int degree = 0;
    for (int t = 0; t < 4; ++t) {
      std::vector<int> f(static_cast<std::size_t>(arity));
      int sum = 0;
      for (auto& v : f) sum += (v = static_cast<int>(g.range(0, 4)));
      if (first) degree = sum;
      if (sum != degree) continue;
      first = false;
      x.addTerm(BasisLabel(f), g.range(-3, 3));
    }
    const auto p = randomPermutation(g, arity);
    std::vector<int> inv(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) inv[static_cast<std::size_t>(p[i])] = static_cast<int>(i);
    EXPECT_EQ(permuteSlotsWithSign(permuteSlotsWithSign(x, p), inv), x);
  }
}

TEST(Permutation, RejectsNonPermutation) {
  const std::vector<int> bad{0, 0};
  EXPECT_THROW(permuteSlotsWithSign(ChainElement::single(BasisLabel{1, 2}), bad), InvalidInput);
}

TEST(ChainComplex, SquareZeroOnCyclicTensor) {
  const ChainComplex c = complexC(3, 12);
  const ChainComplex t = tensor(c, c);
  EXPECT_FALSE(t.squareZeroViolation());
  // Direct check of d(d x) on every label, independent of squareZeroViolation.
  for (int k = 2; k <= 12; ++k)
    for (const auto& lab : t.basis(k)) EXPECT_TRUE(t.boundary(t.differential(lab)).isZero()) << lab.toString();
}

TEST(ChainComplex, KoszulSignOnTensor) {
  const ChainComplex c = complexC(2, 6);
  const ChainComplex ct = complexCTilde(6);
  const ChainComplex t = tensor(ct, c);
  // d([1] (x) [2]) = d[1] (x) [2] - [1] (x) d[2] = -2[0,2] - 2[1,1]
  EXPECT_EQ(t.differential(BasisLabel{1, 2}), ChainElement::parse("-2[0,2] - 2[1,1]"));
}

TEST(ChainComplex, TensorUnit) {
  const ChainComplex c = complexC(4, 8);
  const ChainComplex t = tensor(c, ChainComplex::onePoint(8));
  for (int k = 0; k <= 8; ++k) {
    ASSERT_EQ(t.rank(k), c.rank(k));
    for (const auto& lab : c.basis(k)) {
      const BasisLabel ext = concat(lab, BasisLabel{0});
      ASSERT_TRUE(t.contains(ext));
      ChainElement expected(k - 1);
      for (const auto& [l, v] : c.differential(lab).terms()) expected.addTerm(concat(l, BasisLabel{0}), v);
      EXPECT_EQ(t.differential(ext), expected);
    }
  }
}

TEST(ChainComplex, TensorIsAssociative) {
  const ChainComplex a = complexC(2, 7);
  const ChainComplex b = complexCTilde(7);
  const ChainComplex c = complexC(3, 7);
  const ChainComplex left = tensor(tensor(a, b), c);
  const ChainComplex right = tensor(a, tensor(b, c));
  const ChainComplex* parts[] = {&a, &b, &c};
  const ChainComplex flat = tensorFactors(parts, 0, 7);
  for (int k = 0; k <= 7; ++k) {
    ASSERT_TRUE(std::ranges::equal(left.basis(k), right.basis(k)));
    ASSERT_TRUE(std::ranges::equal(left.basis(k), flat.basis(k)));
    for (const auto& lab : left.basis(k)) {
      EXPECT_EQ(left.differential(lab), right.differential(lab));
      EXPECT_EQ(left.differential(lab), flat.differential(lab));
    }
  }
}

TEST(ChainComplex, EmptyComplexHasZeroHomology) {
  const ChainComplex empty(1, 4, std::vector<std::vector<BasisLabel>>(5), [](const BasisLabel&) {
    return ChainElement(0);
  });
  for (int k = 0; k < 4; ++k) EXPECT_TRUE(homology(empty, k).isZero());
}

TEST(ChainMap, IdentityAndZeroAreChainMaps) {
  auto c = std::make_shared<const ChainComplex>(complexC(5, 9));
  EXPECT_TRUE(verifyChainMap(identityMap(c), 8));
  EXPECT_TRUE(verifyChainMap(zeroMap(c, c), 8));
  const auto idModP = reduceMod(identityMap(c), 3);
  for (const auto& lab : c->basis(4)) EXPECT_EQ(idModP(lab), ChainElement::single(lab));
}

TEST(ChainMap, DetectsBrokenMap) {
  auto c = std::make_shared<const ChainComplex>(complexC(3, 6));
  ChainMapData f = identityMap(c);
  f.onLabel = [](const BasisLabel& x) {
    return x.factors[0] == 2 ? ChainElement::single(x, 2) : ChainElement::single(x);
  };
  EXPECT_FALSE(verifyChainMap(f, 5));
  EXPECT_EQ(chainMapViolation(f, 5), (BasisLabel{2}));
}

TEST(Smith, MatchesDeterminantalDivisors) {
  oracle::Gen g(2024);
  for (int trial = 0; trial < 150; ++trial) {
    const auto rows = static_cast<std::size_t>(g.range(1, 5));
    const auto cols = static_cast<std::size_t>(g.range(1, 5));
    const oracle::Dense m = g.matrix(rows, cols, -9, 9, static_cast<int>(g.range(0, 2)));
    SparseMatrix a;
    a.rows = rows;
    a.cols = cols;
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j)
        if (m[i][j] != 0) a.add(i, j, m[i][j]);
    const SmithCertificate cert = smithNormalForm(a);
    EXPECT_TRUE(cert.divisibilityChainHolds());
    std::vector<Integer> got = cert.diagonal;
    for (auto& d : got) d = abs(d);
    std::sort(got.begin(), got.end());
    std::vector<Integer> want = oracle::invariantFactors(m);
    for (auto& d : want) d = abs(d);
    std::sort(want.begin(), want.end());
    EXPECT_EQ(got, want) << "trial " << trial;

    // U A V is diagonal with the certificate's entries, and U, V are invertible.
    const DenseMatrix u = cert.leftMatrix(), v = cert.rightMatrix();
    const DenseMatrix uav = multiply(multiply(u, toDense(a)), v);
    std::size_t nonzero = 0;
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j)
        if (uav[i][j] != 0) ++nonzero;
    EXPECT_EQ(nonzero, cert.rank());
    EXPECT_EQ(multiply(u, cert.leftInverse()), identityMatrix(rows));
    EXPECT_EQ(multiply(v, cert.rightInverse()), identityMatrix(cols));
  }
}

TEST(Smith, SolveIntegerFindsSolutionsExactly) {
  oracle::Gen g(77);
  for (int trial = 0; trial < 100; ++trial) {
    const auto rows = static_cast<std::size_t>(g.range(1, 5));
    const auto cols = static_cast<std::size_t>(g.range(1, 5));
    const oracle::Dense m = g.matrix(rows, cols, -4, 4);
    SparseMatrix a;
    a.rows = rows;
    a.cols = cols;
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j)
        if (m[i][j] != 0) a.add(i, j, m[i][j]);
    std::vector<Integer> x(cols);
    for (auto& xi : x) xi = g.range(-3, 3);
    std::vector<Integer> b(rows);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) b[i] += m[i][j] * x[j];
    const IntegerSolve sol = solveInteger(smithNormalForm(a), b);
    ASSERT_TRUE(sol.solution.has_value());
    for (std::size_t i = 0; i < rows; ++i) {
      Integer acc = 0;
      for (std::size_t j = 0; j < cols; ++j) acc += m[i][j] * (*sol.solution)[j];
      EXPECT_EQ(acc, b[i]);
    }
  }
}

TEST(ModPEchelon, RankAgreesWithNaiveElimination) {
  oracle::Gen g(5);
  for (unsigned long p : {2ul, 3ul, 5ul, 7ul}) {
    for (int trial = 0; trial < 40; ++trial) {
      const oracle::Dense m = g.matrix(static_cast<std::size_t>(g.range(1, 6)), 6, -6, 6);
      SparseMatrix a;
      a.rows = m.size();
      a.cols = 6;
      for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < 6; ++j)
          if (m[i][j] != 0) a.add(i, j, m[i][j]);
      EXPECT_EQ(rankModP(a, p), oracle::rankModP(m, p));
    }
  }
  EXPECT_TRUE(isPrime(251));
  EXPECT_FALSE(isPrime(1));
  EXPECT_FALSE(isPrime(91));
}

TEST(Homology, CyclicComplex) {
  for (unsigned long q = 2; q <= 6; ++q) {
    const ChainComplex c = complexC(q, 11);
    EXPECT_EQ(homology(c, 0).toString(), "Z");
    for (int k = 1; k <= 10; ++k) {
      const HomologyGroup h = homology(c, k);
      if (k % 2 == 1) {
        EXPECT_EQ(h.freeRank, 0u);
        ASSERT_EQ(h.torsion.size(), 1u);
        EXPECT_EQ(h.torsion[0], q);
      } else {
        EXPECT_TRUE(h.isZero()) << "q=" << q << " k=" << k;
      }
    }
  }
  EXPECT_EQ(homology(complexC(4, 5), 3).toString(), "Z_4");
}

TEST(Homology, TwistedComplex) {
  const ChainComplex c = complexCTilde(13);
  EXPECT_EQ(c.differential(BasisLabel{1}), ChainElement::parse("-2[0]"));
  EXPECT_TRUE(c.differential(BasisLabel{2}).isZero());
  for (int k = 0; k <= 12; ++k) EXPECT_EQ(homology(c, k).toString(), k % 2 == 0 ? "Z_2" : "0") << k;
}

TEST(Homology, FreeModelRanksAreBinomial) {
  for (int r = 1; r <= 4; ++r) {
    std::vector<ChainComplex> factors;
    for (int i = 0; i < r; ++i) factors.push_back(complexFreeZ(r + 1));
    std::vector<const ChainComplex*> ptrs;
    for (const auto& f : factors) ptrs.push_back(&f);
    const ChainComplex t = tensorFactors(ptrs, 0, r + 1);
    for (int k = 0; k <= r; ++k)
      EXPECT_EQ(homology(t, k).freeRank, oracle::binomFactorial(static_cast<unsigned long>(k),
                                                                static_cast<unsigned long>(r - k)));
  }
}

TEST(Homology, AgreesWithNaiveOracle) {
  const std::vector<GroupSpec> groups = {GroupSpec::parse("Z_2 x Z_3"), GroupSpec::parse("Z_4 x Z_2"),
                                         GroupSpec::parse("Z x Z_3"), GroupSpec::parse("Z_6")};
  for (const auto& g : groups) {
    const ChainComplex c = groupComplex(g, 6);
    for (int k = 0; k <= 4; ++k) {
      const HomologyGroup h = homology(c, k);
      const auto naive = oracle::homologyNaive(c, k);
      EXPECT_EQ(h.freeRank, naive.freeRank) << g.toString() << " H_" << k;
      EXPECT_EQ(h.torsion, naive.torsion) << g.toString() << " H_" << k;
    }
  }
}

TEST(Homology, KunnethOverF3) {
  const ChainComplex c = groupComplex(GroupSpec::parse("Z_3 x Z_3"), 9);
  for (int k = 0; k <= 8; ++k) {
    EXPECT_EQ(homology(c, k, 3).dimension, static_cast<std::size_t>(k + 1));
    EXPECT_EQ(oracle::homologyDimModP(c, k, 3), static_cast<std::size_t>(k + 1));
  }
  const ChainComplex c6 = groupComplex(GroupSpec::parse("Z_6 x Z_6"), 9);
  for (unsigned long p : {2ul, 3ul})
    for (int k = 0; k <= 8; ++k) EXPECT_EQ(homology(c6, k, p).dimension, static_cast<std::size_t>(k + 1));
}

TEST(Boundary, KnownSolves) {
  const ChainComplex ct = complexCTilde(14);
  const auto pre = isBoundary(ct, ChainElement::parse("20[12]"));
  ASSERT_TRUE(pre);
  EXPECT_EQ(*pre, ChainElement::parse("-10[13]"));
  const auto zero = isBoundary(ct, ChainElement(12));
  ASSERT_TRUE(zero);
  EXPECT_TRUE(zero->isZero());
  const ChainComplex c3 = complexC(3, 4);
  EXPECT_FALSE(isBoundary(c3, ChainElement::parse("[1]")));
  EXPECT_FALSE(solveBoundary(c3, ChainElement::parse("[1]")).residue.empty());
  EXPECT_THROW(isBoundary(c3, ChainElement::parse("[2]")), InvalidInput);
}

TEST(Boundary, RandomBoundariesAreRecognised) {
  oracle::Gen g(99);
  const ChainComplex c = groupComplex(GroupSpec::parse("Z_2 x Z_4"), 7);
  for (int trial = 0; trial < 60; ++trial) {
    const int k = static_cast<int>(g.range(1, 5));
    const ChainElement w = randomChain(g, c, k + 1);
    const ChainElement z = c.boundary(w);
    const auto pre = isBoundary(c, z);
    ASSERT_TRUE(pre);
    EXPECT_EQ(c.boundary(*pre), z);
    EXPECT_TRUE(isBoundaryModP(c, z, 2));
    // A cycle that is not a boundary stays detected after adding a boundary.
    const ChainElement gen = ChainElement::single(BasisLabel{1, 0});
    if (k == 1) EXPECT_FALSE(isBoundary(c, gen + z));
  }
}
