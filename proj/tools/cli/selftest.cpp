#include "cli/selftest.hpp"

#include <map>
#include <chrono>
#include <functional>
#include <memory>
#include <sstream>

#include "tcs/binary_arith.hpp"
#include "tcs/cyclic_models.hpp"
#include "tcs/digest.hpp"
#include "tcs/homology.hpp"
#include "tcs/nonorient.hpp"
#include "tcs/orientable.hpp"
#include "tcs/parallel.hpp"
#include "tcs/report.hpp"
#include "tcs/zcl.hpp"

namespace tcs::cli {

namespace {

struct Check {
  bool pass = true;
  std::ostringstream log;     // canonical values, hashed
  std::string firstFailure;

  void expect(bool ok, const std::string& what) {
    if (!ok && pass) firstFailure = what;
    pass = pass && ok;
  }
};

using Clock = std::chrono::steady_clock;

CriterionOutcome timed(int id, std::string title, std::int64_t limitMillis, const std::function<void(Check&)>& body) {
  CriterionOutcome out;
  out.id = id;
  out.title = std::move(title);
  out.limitMillis = limitMillis;
  Check c;
  const auto t0 = Clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.expect(false, std::string("exception: ") + e.what());
  }
  out.millis = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
  out.pass = c.pass && out.millis <= limitMillis;
  out.detail = !c.pass ? c.firstFailure : (out.millis > limitMillis ? "time limit exceeded" : "ok");
  out.digest = sha256Hex(c.log.str());
  return out;
}

// 1. Zero obstruction chains for cyclic groups in odd dimension.
void cyclicVanishing(Check& c, unsigned threads) {
  struct Case {
    unsigned long q;
    int n, s, lambda;
  };
  std::vector<Case> cases;
  for (unsigned long q = 2; q <= 6; ++q)
    for (int n = 1; n <= 9; n += 2)
      for (int s = 2; s <= 5; ++s)
        for (int lambda = 1; lambda <= 2; ++lambda) cases.push_back({q, n, s, lambda});
  auto results = parallelMap(cases.size(), threads, [&](std::size_t i) {
    const Case& k = cases[i];
    FundamentalClassSpec f{GroupSpec{{k.q}}, k.n, ChainElement::single(BasisLabel{k.n}, k.lambda)};
    return obstructionChain(f, k.s).toString();
  });
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const Case& k = cases[i];
    c.log << k.q << ' ' << k.n << ' ' << k.s << ' ' << k.lambda << ' ' << results[i] << '\n';
    c.expect(results[i] == "0", "Z_" + std::to_string(k.q) + " n=" + std::to_string(k.n) + " s=" +
                                    std::to_string(k.s) + " lambda=" + std::to_string(k.lambda) +
                                    ": obstruction chain is not zero");
  }
}

// 2. The Z_3 x Z_3 example.
void z3z3Maximality(Check& c) {
  const GroupSpec g = GroupSpec::parse("Z_3 x Z_3");
  FundamentalClassSpec f{g, 5, ChainElement::parse("[0,5]+[5,0]")};
  ObstructionVerdict v = decideOrientable(f, 3);
  const ChainElement reduced = reduceMod(v.obstruction, 3);
  ChainElement component(reduced.degree());
  for (const auto& [label, coeff] : reduced.terms())
    if (label.factors[0] == 5 && label.factors[1] == 1) component.addTerm(label, coeff);
  c.log << v.obstruction.toString() << '\n' << component.toString() << '\n' << toString(v.conclusion) << '\n';
  const BasisLabel expected{5, 1, 5, 4};
  const bool single = component.size() == 1 && component.coefficient(expected) != 0;
  c.expect(single, "component over [5,1] is " + component.toString() + ", expected +-[5,1,5,4]");
  // recorded sign: +1 (the residue is 1 mod 3)
  c.expect(component.coefficient(expected) == 1, "sign of the [5,1,5,4] component changed");
  c.expect(v.status == ObstructionStatus::NonzeroClass, "class not detected as nonzero");
  c.expect(v.conclusion == Conclusion::Maximal, "decideOrientable did not return TC_3 = 15");
  c.expect(v.witnessPrime == 3ul, "nonzero class not witnessed mod 3");
}

// 3. Free and mixed groups.
void freeAndMixed(Check& c, unsigned threads) {
  struct Case {
    int r, s, n;
  };
  std::vector<Case> cases;
  for (int r = 1; r <= 4; ++r)
    for (int s = 2; s <= 4; ++s)
      for (int n = 1; n <= 4; ++n)
        if (s * n > (s - 1) * r) cases.push_back({r, s, n});
  auto ranks = parallelMap(cases.size(), threads, [&](std::size_t i) {
    const Case& k = cases[i];
    GroupSpec g{std::vector<unsigned long>(static_cast<std::size_t>(k.r), 0)};
    const int top = k.s * k.n;
    ChainComplex target = groupPower(g, k.s - 1, std::max(0, top - 1), top + 1);
    return homology(target, top).freeRank;
  });
  for (std::size_t i = 0; i < cases.size(); ++i) {
    c.log << "free " << cases[i].r << ' ' << cases[i].s << ' ' << cases[i].n << ' ' << ranks[i] << '\n';
    c.expect(ranks[i] == 0, "rank H_sn nonzero for r=" + std::to_string(cases[i].r) + " s=" +
                                std::to_string(cases[i].s) + " n=" + std::to_string(cases[i].n));
  }
  for (unsigned long q : {2ul, 3ul}) {
    for (int s : {2, 3}) {
      for (MonomialChoice choice : {MonomialChoice::EachMonomial, MonomialChoice::SumOfAll}) {
        FreeTimesCyclicResult res = freeTimesCyclicVanishing(1, q, 3, s, choice);
        for (const auto& [m, zero] : res.cases) c.log << "mixed " << q << ' ' << s << ' ' << m.toString() << ' ' << zero << '\n';
        c.expect(res.allZero() && !res.cases.empty(),
                 "Z x Z_" + std::to_string(q) + " s=" + std::to_string(s) + ": obstruction chain did not vanish");
      }
    }
  }
}

// 4. Closed forms for projective spaces.
void davisForms(Check& c) {
  for (std::uint64_t s = 3; s <= 10; ++s) {
    const auto m = mDefect(6, s);
    c.log << "m6 " << s << ' ' << m << '\n';
    c.expect(m == std::max<std::int64_t>(0, 7 - static_cast<std::int64_t>(s)), "mDefect(6," + std::to_string(s) + ")");
  }
  const std::vector<std::pair<std::uint64_t, std::uint64_t>> thresholds{{2, 3}, {4, 3}, {8, 3}, {10, 3}, {6, 7}, {14, 15}};
  for (auto [n, t] : thresholds) {
    const auto got = maximalityThreshold(n);
    c.log << "thr " << n << ' ' << (got ? *got : 0) << '\n';
    c.expect(got == t, "maximalityThreshold(" + std::to_string(n) + ")");
  }
  c.expect(davisZcl(6, 6) == 35, "davisZcl(6,6)");
  c.expect(davisZcl(2, 3) == 6, "davisZcl(2,3)");
  for (std::uint64_t s = 3; s <= 12; ++s) {
    c.log << "z5 " << s << ' ' << davisZcl(5, s) << '\n';
    c.expect(davisZcl(5, s) == static_cast<std::int64_t>(5 * s - 1), "davisZcl(5," + std::to_string(s) + ")");
  }
}

// 5. Zero-divisor cup-length search.
void zclSearch(Check& c, unsigned threads) {
  const int tiny = exhaustiveZclTiny(GradedRingSpec::projective(2), 3);
  c.log << "tiny " << tiny << '\n';
  c.expect(tiny == 6, "exhaustive zcl of P^2 at s=3 is " + std::to_string(tiny));
  for (int n : {2, 4, 6}) {
    for (int s : {3, 4}) {
      TensorPowerRing ring(GradedRingSpec::projective(n), s);
      const auto pool = defaultPool(ring);
      const auto davis = davisZcl(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(s));
      ZclSearchResult res = searchZclLower(ring, pool, static_cast<int>(davis), 20'000'000, threads);
      c.log << "search " << n << ' ' << s << ' ' << res.bestLength << ' ';
      for (int e : res.exponents) c.log << e << ',';
      c.log << '\n';
      c.expect(res.bestLength <= davis, "search exceeded the closed form at n=" + std::to_string(n));
      c.expect(validateWitness(ring, pool, res.exponents), "witness failed to re-validate at n=" + std::to_string(n));
      std::int64_t length = 0;
      for (int e : res.exponents) length += e;
      c.expect(length == res.bestLength, "witness length mismatch");
    }
  }
}

// 6. Non-orientable certificate, brute force and boundary oracle.
void nonorientCertificate(Check& c, unsigned threads) {
  std::vector<std::pair<int, int>> grid;
  for (int r = 1; r <= 6; ++r)
    for (int s = 2; s <= (1 << (r + 1)) - 2; s += 2) grid.emplace_back(r, s);
  auto certs = parallelMap(grid.size(), threads, [&](std::size_t i) {
    return parityCertificateDP(DComplexSpec::fromR(grid[i].first, grid[i].second));
  });
  for (std::size_t i = 0; i < grid.size(); ++i) {
    c.log << "dp " << grid[i].first << ' ' << grid[i].second << ' ' << certs[i].holds << ' '
          << certs[i].reachableStates << ' ' << certs[i].parityTableDigest << '\n';
    c.expect(certs[i].holds, "certificate fails at r=" + std::to_string(grid[i].first) + " s=" +
                                 std::to_string(grid[i].second));
  }

  std::vector<std::pair<int, int>> brute{{1, 2}, {1, 4}, {1, 6}, {2, 2}, {2, 4}, {2, 6}, {3, 2}, {3, 4}};
  auto agree = parallelMap(brute.size(), threads, [&](std::size_t i) {
    const auto spec = DComplexSpec::fromR(brute[i].first, brute[i].second);
    return std::make_pair(parityCertificateDP(spec).holds, parityCertificateBruteForce(spec));
  });
  for (std::size_t i = 0; i < brute.size(); ++i) {
    c.log << "bf " << brute[i].first << ' ' << brute[i].second << ' ' << agree[i].first << agree[i].second << '\n';
    c.expect(agree[i].first == agree[i].second, "DP and enumeration disagree at r=" + std::to_string(brute[i].first) +
                                                    " s=" + std::to_string(brute[i].second));
  }

  std::vector<std::pair<int, int>> oracle{{1, 2}, {2, 2}, {2, 4}};
  auto verdicts = parallelMap(oracle.size(), threads, [&](std::size_t i) {
    NonorientOptions opt;
    opt.oracle = true;
    const auto spec = DComplexSpec::fromR(oracle[i].first, oracle[i].second);
    NonorientVerdict v = decideNonorientable(spec, opt);
    const bool direct = chiSTwisted(spec) == v.aggregate;
    return std::make_pair(std::move(v), direct);
  });
  for (std::size_t i = 0; i < oracle.size(); ++i) {
    const auto& [v, direct] = verdicts[i];
    const std::string tag = "r=" + std::to_string(oracle[i].first) + " s=" + std::to_string(oracle[i].second);
    c.log << "oracle " << tag << ' ' << v.aggregate.toString() << ' '
          << (v.aggregatePreimage ? v.aggregatePreimage->toString() : "none") << ' '
          << (v.rewritten ? v.rewritten->toString() : "none") << '\n';
    c.expect(v.oracleRan, tag + ": oracle skipped (" + v.oracleSkipReason + ")");
    c.expect(v.aggregateIsBoundary.value_or(false), tag + ": aggregate is not an integral boundary");
    c.expect(v.rewriteVerified.value_or(false), tag + ": rewrite not verified");
    c.expect(direct, tag + ": closed-form expansion differs from the direct composite");
  }
}

// 7. Homology engine.
void homologyOracles(Check& c, unsigned threads) {
  for (unsigned long q = 2; q <= 6; ++q) {
    ChainComplex cq = complexC(q, 11);
    c.expect(!cq.squareZeroViolation(), "d^2 != 0 on C(Z_" + std::to_string(q) + ")");
    for (int k = 0; k <= 10; ++k) {
      HomologyGroup h = homology(cq, k);
      c.log << "Zq " << q << ' ' << k << ' ' << h.toString() << '\n';
      std::string expected = k == 0 ? "Z" : (k % 2 == 1 ? "Z_" + std::to_string(q) : "0");
      c.expect(h.toString() == expected, "H_" + std::to_string(k) + "(Z_" + std::to_string(q) + ") = " + h.toString());
    }
  }
  ChainComplex ct = complexCTilde(13);
  c.expect(!ct.squareZeroViolation(), "d^2 != 0 on the twisted complex");
  for (int k = 0; k <= 12; ++k) {
    HomologyGroup h = homology(ct, k);
    c.log << "Ct " << k << ' ' << h.toString() << '\n';
    c.expect(h.toString() == (k % 2 == 0 ? "Z_2" : "0"), "twisted H_" + std::to_string(k) + " = " + h.toString());
  }
  ChainComplex z3 = groupComplex(GroupSpec::parse("Z_3 x Z_3"), 9);
  c.expect(!z3.squareZeroViolation(), "d^2 != 0 on the Z_3 x Z_3 complex");
  for (int k = 0; k <= 8; ++k) {
    HomologyGroup h = homology(z3, k, 3);
    c.log << "Z3Z3 " << k << ' ' << h.dimension << '\n';
    c.expect(h.dimension == static_cast<std::size_t>(k + 1), "dim H_" + std::to_string(k) + "((Z_3)^2; F_3)");
  }
  // every other complex the engine builds for the acceptance grid
  std::vector<std::function<ChainComplex()>> builders;
  for (unsigned long q = 2; q <= 6; ++q) builders.push_back([q] { return tensor(complexC(q, 12), complexC(q, 12)); });
  builders.push_back([] { return groupPower(GroupSpec::parse("Z_3 x Z_3"), 2, 0, 12); });
  builders.push_back([] { return groupPower(GroupSpec::parse("Z^2 x Z_3"), 2, 0, 10); });
  builders.push_back([] { return groupComplex(GroupSpec::parse("Z_2"), {SlotTwist::Twisted}, 12); });
  for (auto [r, s] : std::vector<std::pair<int, int>>{{1, 2}, {2, 2}, {2, 4}, {2, 6}, {3, 4}}) {
    builders.push_back([r, s] {
      const auto spec = DComplexSpec::fromR(r, s);
      return dComplex(spec, 0, std::min(s * spec.n + 1, 14));
    });
  }
  auto violations = parallelMap(builders.size(), threads, [&](std::size_t i) {
    auto v = builders[i]().squareZeroViolation();
    return v ? v->toString() : std::string("none");
  });
  for (std::size_t i = 0; i < violations.size(); ++i) {
    c.log << "d2 " << i << ' ' << violations[i] << '\n';
    c.expect(violations[i] == "none", "d^2 != 0 at " + violations[i]);
  }
}

// 8. Report assembly.
void reportRows(Check& c) {
  auto log = [&](const BoundReport& rep) {
    for (const auto& l : rep.lines)
      c.log << rep.family << ' ' << l.s << ' ' << l.lower << ' ' << l.upper << ' ' << (l.exact ? *l.exact : -1) << ' '
            << l.exactCitation << '\n';
  };
  {
    ManifoldDescriptor m{GroupSpec::parse("Z_2"), 5, true, true, std::nullopt};
    BoundReport rep = reportBounds(m, 3, 10);
    log(rep);
    for (const auto& l : rep.lines) {
      c.expect(l.exact == 5 * l.s - 1, "orientable Z_2, n=5: TC_" + std::to_string(l.s) + " not 5s-1");
      c.expect(!l.exactCitation.empty(), "orientable Z_2 line without citation");
    }
  }
  {
    ManifoldDescriptor m{GroupSpec::parse("Z_2"), 6, false, true, std::nullopt};
    BoundReport rep = reportBounds(m, 4, 10);
    log(rep);
    for (const auto& l : rep.lines) {
      if (l.s == 4) c.expect(l.upper == 23 && !l.upperCitation.empty(), "non-orientable n=6: TC_4 <= 23 missing");
      if (l.s == 6) c.expect(l.exact == 35 && !l.exactCitation.empty(), "non-orientable n=6: TC_6 = 35 missing");
      if (l.s >= 7) c.expect(l.exact == 6 * l.s && !l.exactCitation.empty(), "non-orientable n=6: TC_s = 6s missing");
    }
  }
  for (auto [p, k] : std::vector<std::pair<unsigned long, int>>{{3, 1}, {5, 1}, {3, 3}, {5, 2}, {7, 3}}) {
    if (binomBig(static_cast<unsigned long>(k), static_cast<unsigned long>(k)) % p == 0) continue;
    const int dim = 2 * k + 1;
    ManifoldDescriptor m{GroupSpec{{p}}, dim, true, true, std::nullopt};
    BoundReport rep = reportBounds(m, 2, 6);
    log(rep);
    for (const auto& l : rep.lines)
      c.expect(l.exact == std::int64_t{l.s} * dim - 1 && !l.exactCitation.empty(),
               "Z_" + std::to_string(p) + " dim " + std::to_string(dim) + ": TC_" + std::to_string(l.s) + " not s*dim-1");
  }
}

const std::vector<std::pair<std::string, std::int64_t>>& criterionTable() {
  static const std::vector<std::pair<std::string, std::int64_t>> table{
      {"cyclic groups: obstruction chain is zero", 60'000},
      {"Z_3 x Z_3 example: class nonzero mod 3, TC_3 = 15", 120'000},
      {"free and free-times-cyclic groups vanish", 60'000},
      {"closed forms for projective spaces", 1'000},
      {"zero-divisor cup-length search", 600'000},
      {"non-orientable certificate, enumeration and oracle", 660'000},
      {"homology engine oracles", 60'000},
      {"bound reports reproduce the headline values", 10'000},
      {"digests identical under 1, 2 and 8 workers", 2'400'000},
  };
  return table;
}

}  // namespace

CriterionOutcome structureMapPreflight(std::optional<long> corruptOddOdd) {
  return timed(0, "structure maps of the cyclic models", 60'000, [&](Check& c) {
    std::optional<Integer> alpha;
    if (corruptOddOdd) alpha = Integer(*corruptOddOdd);
    for (unsigned long q = 2; q <= 6; ++q) {
      const std::string tag = "Z_" + std::to_string(q);
      c.expect(verifyChainMap(diagonalMap(q, DiagonalVariant::Plain, 11, alpha), 10), tag + ": diagonal is not a chain map");
      c.expect(verifyChainMap(pontryaginMap(q, PontryaginPattern::Plain, 11), 10), tag + ": product is not a chain map");
      c.expect(verifyChainMap(inversionMap(q, 11), 10), tag + ": inversion is not a chain map");
      const auto bad = diagonalCocommutativityViolation(q, 10, alpha);
      c.log << tag << ' ' << (bad ? *bad : -1) << '\n';
      c.expect(!bad, tag + ": diagonal not cocommutative mod q in degree " + std::to_string(bad.value_or(-1)));
      for (int deg = 0; deg <= 10; ++deg) {
        std::map<int, Integer> got;
        for (const auto& [k, l, coeff] : diagonalTerms(q, DiagonalVariant::Plain, deg, alpha)) got[k] = coeff;
        for (int k = 0; k <= deg; ++k) {
          const Integer expected = ((k * (deg - k)) & 1) ? Integer(q * (q - 1) / 2) : Integer(1);
          const Integer actual = got.count(k) ? got[k] : Integer(0);
          c.expect(actual == expected, tag + ": diagonal coefficient on [" + std::to_string(k) + "]x[" +
                                           std::to_string(deg - k) + "] is " + actual.get_str());
        }
      }
    }
    for (auto v : {DiagonalVariant::TwistLeft, DiagonalVariant::TwistRight})
      c.expect(verifyChainMap(diagonalMap(2, v, 11), 10), "twisted diagonal is not a chain map");
    c.expect(verifyChainMap(pontryaginMap(2, PontryaginPattern::Twisted, 11), 10), "twisted product is not a chain map");
  });
}

CriterionOutcome runCriterion(int id, unsigned threads) {
  const auto& t = criterionTable().at(static_cast<std::size_t>(id - 1));
  switch (id) {
    case 1: return timed(id, t.first, t.second, [&](Check& c) { cyclicVanishing(c, threads); });
    case 2: return timed(id, t.first, t.second, z3z3Maximality);
    case 3: return timed(id, t.first, t.second, [&](Check& c) { freeAndMixed(c, threads); });
    case 4: return timed(id, t.first, t.second, davisForms);
    case 5: return timed(id, t.first, t.second, [&](Check& c) { zclSearch(c, threads); });
    case 6: return timed(id, t.first, t.second, [&](Check& c) { nonorientCertificate(c, threads); });
    case 7: return timed(id, t.first, t.second, [&](Check& c) { homologyOracles(c, threads); });
    case 8: return timed(id, t.first, t.second, reportRows);
    default: break;
  }
  CriterionOutcome bad;
  bad.id = id;
  bad.detail = "no such criterion";
  return bad;
}

CriterionOutcome determinismCriterion(const std::vector<CriterionOutcome>& known, unsigned knownThreads) {
  const auto& t = criterionTable().back();
  return timed(9, t.first, t.second, [&](Check& c) {
    std::vector<std::string> reference;
    for (unsigned threads : {1u, 2u, 8u}) {
      std::vector<std::string> digests;
      if (threads == knownThreads && known.size() == 8) {
        for (const auto& k : known) digests.push_back(k.digest);
      } else {
        for (int id = 1; id <= 8; ++id) digests.push_back(runCriterion(id, threads).digest);
      }
      c.log << threads;
      for (const auto& d : digests) c.log << ' ' << d;
      c.log << '\n';
      if (reference.empty()) {
        reference = digests;
        continue;
      }
      for (std::size_t i = 0; i < digests.size(); ++i)
        c.expect(digests[i] == reference[i], "criterion " + std::to_string(i + 1) + " digest differs under " +
                                                 std::to_string(threads) + " workers");
    }
  });
}

bool SelftestReport::allPass() const {
  if (!preflight.pass) return false;
  for (const auto& c : criteria)
    if (!c.pass) return false;
  return !criteria.empty();
}

SelftestReport runSelftest(const SelftestOptions& options) {
  SelftestReport rep;
  rep.preflight = structureMapPreflight(options.corruptOddOdd);
  for (int id = 1; id <= 8; ++id) rep.criteria.push_back(runCriterion(id, options.threads));
  rep.criteria.push_back(determinismCriterion(rep.criteria, options.threads));
  return rep;
}

std::string formatLine(const CriterionOutcome& c) {
  std::ostringstream out;
  out << (c.pass ? "PASS" : "FAIL") << " [" << c.id << "] " << c.title << " (" << c.millis << " ms / limit "
      << c.limitMillis << " ms) " << c.detail;
  return out.str();
}

}  // namespace tcs::cli
