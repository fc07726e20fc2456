#include "tcs/nonorient.hpp"

#include <array>
#include <map>
#include <memory>

#include "tcs/binary_arith.hpp"
#include "tcs/digest.hpp"
#include "tcs/errors.hpp"
#include "tcs/homology.hpp"

namespace tcs {

DComplexSpec DComplexSpec::fromR(int r, int s) {
  if (r < 1 || r > 29) throw InvalidInput("r must be between 1 and 29");
  DComplexSpec spec = fromDimension((1 << (r + 1)) - 2, s);
  return spec;
}

DComplexSpec DComplexSpec::fromDimension(int n, int s) {
  if (s % 2 != 0)
    throw MethodInapplicable("s = " + std::to_string(s) +
                             " is odd: the coefficient module needed for the obstruction cannot "
                             "be formed, so this method does not apply");
  if (s < 2) throw InvalidInput("s must be at least 2");
  if (n < 2 || n % 2 != 0) throw InvalidInput("the dimension must be even and at least 2");
  DComplexSpec spec;
  spec.n = n;
  spec.s = s;
  const int n2 = n + 2;
  if ((n2 & (n2 - 1)) == 0) spec.r = __builtin_ctz(static_cast<unsigned>(n2)) - 1;
  return spec;
}

std::vector<SlotTwist> DComplexSpec::twistPattern() const {
  std::vector<SlotTwist> t;
  for (int i = 0; i < slotCount(); ++i) t.push_back(i % 2 == 0 ? SlotTwist::Twisted : SlotTwist::Plain);
  return t;
}

bool DComplexSpec::inTheoremScope() const { return r.has_value() && s >= 2 && s <= n; }

namespace {

void enumerateTuples(int slots, int remaining, std::vector<int>& cur, std::vector<BasisLabel>& out) {
  if (static_cast<int>(cur.size()) == slots - 1) {
    cur.push_back(remaining);
    out.emplace_back(cur);
    cur.pop_back();
    return;
  }
  for (int v = 0; v <= remaining; ++v) {
    cur.push_back(v);
    enumerateTuples(slots, remaining - v, cur, out);
    cur.pop_back();
  }
}

// d[u_1, v_1, ..., u_sigma]: slot t has prefix degree P; even slots (C~)
// contribute -(-1)^P 2 odd(u) [.., u-1, ..], odd slots (C) contribute
// (-1)^P 2 even(v) [.., v-1, ..] for v >= 1.
ChainElement dDifferential(const BasisLabel& x) {
  ChainElement out(x.degree() - 1);
  int prefix = 0;
  for (std::size_t t = 0; t < x.factors.size(); ++t) {
    const int e = x.factors[t];
    const int sign = (prefix & 1) ? -1 : 1;
    if (t % 2 == 0) {
      if (e & 1) {
        BasisLabel y = x;
        y.factors[t] -= 1;
        out.addTerm(y, Integer(-2 * sign));
      }
    } else if (e >= 2 && e % 2 == 0) {
      BasisLabel y = x;
      y.factors[t] -= 1;
      out.addTerm(y, Integer(2 * sign));
    }
    prefix += e;
  }
  return out;
}

}  // namespace

ChainComplex dComplexViaTensor(const DComplexSpec& spec, int lo, int hi) {
  ChainComplex ct = complexCTilde(hi);
  ChainComplex c = complexC(2, hi);
  std::vector<const ChainComplex*> parts;
  for (SlotTwist t : spec.twistPattern()) parts.push_back(t == SlotTwist::Twisted ? &ct : &c);
  return tensorFactors(parts, lo, hi);
}

ChainComplex dComplex(const DComplexSpec& spec, int lo, int hi) {
  std::vector<std::vector<BasisLabel>> basis(static_cast<std::size_t>(hi - lo + 1));
  std::vector<int> cur;
  for (int k = lo; k <= hi; ++k) enumerateTuples(spec.slotCount(), k, cur, basis[k - lo]);
  ChainComplex d(spec.slotCount(), hi, std::move(basis), dDifferential, lo);

  ChainComplex check = dComplexViaTensor(spec, lo, hi);
  for (int k = lo; k <= hi; ++k) {
    auto a = d.basis(k);
    auto b = check.basis(k);
    if (a.size() != b.size()) throw Error("D complex: basis size mismatch in degree " + std::to_string(k));
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] != b[i] || !(d.differential(a[i]) == check.differential(b[i])))
        throw Error("D complex: differential mismatch at " + a[i].toString());
    }
  }
  return d;
}

Integer expansionTermCount(const DComplexSpec& spec) {
  const int len = spec.s - 2;
  if (len == 0) return 1;
  const Integer m = spec.m();
  Integer c0 = m + 1;  // sequences ending with delta = 0
  Integer c1 = m;      // ending with delta = 1
  for (int i = 1; i < len; ++i) {
    Integer n0 = (c0 + c1) * (m + 1);
    Integer n1 = c0 * m;
    c0 = n0;
    c1 = n1;
  }
  return c0 + c1;
}

void expandObstruction(const DComplexSpec& spec, const std::function<void(const ExpansionTerm&)>& visit,
                       std::uint64_t budget) {
  const Integer count = expansionTermCount(spec);
  if (count > Integer(static_cast<unsigned long>(budget)))
    throw BudgetExceeded("the expansion has " + count.get_str() + " terms, above the budget of " +
                         std::to_string(budget) + "; use the parity certificate instead");
  const int m = spec.m();
  const int n = spec.n;
  const int len = spec.s - 2;
  if (len == 0) {
    ExpansionTerm t;
    t.binomialProduct = binomBig(m, m);
    t.generator = BasisLabel{2 * n};
    visit(t);
    return;
  }
  ExpansionTerm t;
  t.deltas.resize(len);
  t.ps.resize(len);
  t.qs.resize(len);
  std::function<void(int)> rec = [&](int i) {
    if (i == len) {
      Integer prod = binomBig(m, t.ps[0]);
      for (int j = 1; j < len; ++j) prod *= binomBig(t.qs[j - 1], t.ps[j]);
      prod *= binomBig(t.qs[len - 1], m);
      int parity = 0;
      for (int j = 1; j < len; j += 2) parity += t.deltas[j];  // delta_2, delta_4, ...
      t.sign = (parity & 1) ? -1 : 1;
      t.binomialProduct = prod;
      std::vector<int> g(static_cast<std::size_t>(len + 1));
      g[0] = n + 2 * t.ps[0] + t.deltas[0];
      for (int j = 1; j < len; ++j)
        g[j] = 2 * (t.qs[j - 1] + t.ps[j]) + t.deltas[j - 1] + t.deltas[j];
      g[len] = n + 2 * t.qs[len - 1] + t.deltas[len - 1];
      t.generator = BasisLabel(std::move(g));
      visit(t);
      return;
    }
    for (int d = 0; d <= 1; ++d) {
      if (d == 1 && i > 0 && t.deltas[i - 1] == 1) continue;
      t.deltas[i] = d;
      for (int p = 0; p <= m - d; ++p) {
        t.ps[i] = p;
        t.qs[i] = m - d - p;
        rec(i + 1);
      }
    }
  };
  rec(0);
}

ChainElement aggregateObstruction(const DComplexSpec& spec, std::uint64_t budget) {
  ChainElement out(spec.s * spec.n);
  expandObstruction(spec, [&](const ExpansionTerm& t) {
    out.addTerm(t.generator, t.sign * t.binomialProduct);
  }, budget);
  return out;
}

namespace {

ChainElement twistedChiOnTensor(const std::vector<int>& entries) {
  const std::size_t s = entries.size();
  int degree = 0;
  for (int e : entries) degree += e;
  // (output so far, pending entry) -> coefficient
  std::map<std::pair<std::vector<int>, int>, Integer> state;
  state[{{}, entries[0]}] = 1;
  for (std::size_t i = 1; i + 1 < s; ++i) {
    const DiagonalVariant v = (i % 2 == 1) ? DiagonalVariant::TwistLeft : DiagonalVariant::TwistRight;
    std::map<std::pair<std::vector<int>, int>, Integer> next;
    for (const auto& [key, c] : state) {
      const auto& [prefix, pending] = key;
      for (const auto& [k, l, cd] : diagonalTerms(2, v, entries[i])) {
        auto prod = pontryaginTerm(2, pending, k);
        if (!prod) continue;
        std::vector<int> np = prefix;
        np.push_back(prod->first);
        next[{np, l}] += c * cd * prod->second;
      }
    }
    state.clear();
    for (auto& [key, c] : next)
      if (c != 0) state.emplace(key, std::move(c));
  }
  ChainElement out(degree);
  for (const auto& [key, c] : state) {
    const auto& [prefix, pending] = key;
    auto prod = pontryaginTerm(2, pending, entries[s - 1]);
    if (!prod) continue;
    std::vector<int> lab = prefix;
    lab.push_back(prod->first);
    out.addTerm(BasisLabel(std::move(lab)), c * prod->second);
  }
  return out;
}

}  // namespace

ChainElement chiSTwisted(const DComplexSpec& spec) {
  return twistedChiOnTensor(std::vector<int>(static_cast<std::size_t>(spec.s), spec.n));
}

ChainMapData chiSTwistedMap(const DComplexSpec& spec, int maxDeg) {
  ChainComplex ct = complexCTilde(maxDeg);
  std::vector<const ChainComplex*> parts(static_cast<std::size_t>(spec.s), &ct);
  ChainMapData f;
  f.source = std::make_shared<const ChainComplex>(tensorFactors(parts, 0, maxDeg));
  f.target = std::make_shared<const ChainComplex>(dComplex(spec, 0, maxDeg));
  f.onLabel = [](const BasisLabel& x) { return twistedChiOnTensor(x.factors); };
  return f;
}

ParityCertificate parityCertificateDP(const DComplexSpec& spec) {
  ParityCertificate cert;
  const int m = spec.m();
  std::string table;
  table.reserve(static_cast<std::size_t>((m + 1) * (m + 2)));
  for (int a = 0; a <= m; ++a) {
    for (int b = 0; b <= m; ++b) table += binomIsOdd(a, b) ? '1' : '0';
    table += '\n';
  }
  cert.parityTableDigest = sha256Hex(table);

  const int len = spec.s - 2;
  if (len == 0) {
    cert.holds = !binomIsOdd(m, m);
    if (!cert.holds) cert.counterexample = std::make_pair(std::vector<int>{}, std::vector<int>{});
    return cert;
  }

  // reach[i][q][delta]: some admissible prefix of length i+1 with all factors
  // odd ends with (q_i, delta_i). parent records one predecessor for the
  // counterexample path.
  struct Parent {
    int q = -1, delta = -1, p = -1;
  };
  std::vector<std::vector<std::array<bool, 2>>> reach(
      static_cast<std::size_t>(len), std::vector<std::array<bool, 2>>(m + 1, {false, false}));
  std::vector<std::vector<std::array<Parent, 2>>> parent(
      static_cast<std::size_t>(len), std::vector<std::array<Parent, 2>>(m + 1));
  for (int p = 0; p <= m; ++p) {
    if (!binomIsOdd(m, p)) continue;
    const int q = m - p;
    if (!reach[0][q][0]) {
      reach[0][q][0] = true;
      parent[0][q][0] = Parent{-1, -1, p};
    }
  }
  for (int i = 1; i < len; ++i) {
    for (int q = 0; q <= m; ++q) {
      for (int d = 0; d <= 1; ++d) {
        if (!reach[i - 1][q][d]) continue;
        for (int nd = 0; nd <= 1; ++nd) {
          if (d == 1 && nd == 1) continue;
          for (int p = 0; p <= m - nd; ++p) {
            if (!binomIsOdd(q, p)) continue;
            const int nq = m - nd - p;
            if (!reach[i][nq][nd]) {
              reach[i][nq][nd] = true;
              parent[i][nq][nd] = Parent{q, d, p};
            }
          }
        }
      }
    }
  }
  for (const auto& level : reach)
    for (const auto& qd : level) cert.reachableStates += qd[0] + qd[1];

  cert.holds = true;
  for (int q = 0; q <= m && cert.holds; ++q) {
    for (int d = 0; d <= 1; ++d) {
      if (!reach[len - 1][q][d] || !binomIsOdd(q, m)) continue;
      cert.holds = false;
      std::vector<int> deltas(static_cast<std::size_t>(len)), ps(static_cast<std::size_t>(len));
      int cq = q, cd = d;
      for (int i = len - 1; i >= 0; --i) {
        const Parent& pr = parent[i][cq][cd];
        deltas[i] = cd;
        ps[i] = pr.p;
        cq = pr.q;
        cd = pr.delta;
      }
      cert.counterexample = std::make_pair(std::move(deltas), std::move(ps));
      break;
    }
  }
  return cert;
}

bool parityCertificateBruteForce(const DComplexSpec& spec, std::uint64_t budget) {
  bool oddFound = false;
  expandObstruction(spec, [&](const ExpansionTerm& t) {
    const bool firstDeltaZero = t.deltas.empty() || t.deltas[0] == 0;
    if (firstDeltaZero && mpz_odd_p(t.binomialProduct.get_mpz_t())) oddFound = true;
  }, budget);
  return !oddFound;
}

RewriteResult rewriteEvenToOdd(const DComplexSpec& spec, const ChainElement& c) {
  RewriteResult res{c, ChainElement(c.degree() + 1)};
  for (const auto& [label, coeff] : c.terms()) {
    if (label.slotCount() != static_cast<std::size_t>(spec.slotCount()))
      throw InvalidInput("label " + label.toString() + " is not a basis element of D");
    if (label.factors[0] % 2 != 0) continue;
    if (mpz_odd_p(coeff.get_mpz_t()))
      throw InvalidInput("even label " + label.toString() + " has odd coefficient " + coeff.get_str() +
                         "; the binomial parity certificate fails for this input");
    const Integer t = coeff / 2;
    BasisLabel odd = label;
    odd.factors[0] += 1;
    // d(odd) = -2 label + (odd-supported rest)
    res.rewritten += t * dDifferential(odd);
    res.preimage.addTerm(odd, -t);
  }
  for (const auto& [label, coeff] : res.rewritten.terms())
    if (label.factors[0] % 2 == 0) throw Error("internal: rewrite left an even label");
  return res;
}

namespace {

Integer tupleCount(int slots, int degree) {
  return binomBig(static_cast<unsigned long>(degree), static_cast<unsigned long>(slots - 1));
}

}  // namespace

NonorientVerdict decideNonorientable(const DComplexSpec& spec, const NonorientOptions& options) {
  if (spec.s % 2 != 0) throw MethodInapplicable("odd s: method inapplicable");
  NonorientVerdict v;
  v.spec = spec;
  v.inTheoremScope = spec.inTheoremScope();
  const int top = spec.s * spec.n;

  // (a) torsion in degree s*n of both homology groups
  const Integer dSize = tupleCount(spec.slotCount(), top + 1);
  const Integer cSize = tupleCount(spec.s, top + 1);
  const Integer limit = static_cast<unsigned long>(options.maxTorsionBasis);
  if (dSize <= limit && cSize <= limit) {
    ChainComplex d = dComplex(spec, top - 1, top + 1);
    ChainComplex ct = complexCTilde(top + 1);
    std::vector<const ChainComplex*> parts(static_cast<std::size_t>(spec.s), &ct);
    ChainComplex cs = tensorFactors(parts, top - 1, top + 1);
    v.torsionComputed = true;
    if (d.rank(top + 1) <= options.maxSmithColumns) {
      v.torsionHolds = homology(d, top, 0).freeRank == 0 && freeRankUpperBound(cs, top, 3) == 0;
      v.torsionMethod = "Smith form of D, F_3 Betti bound for the source";
    } else {
      v.torsionHolds = freeRankUpperBound(d, top, 3) == 0 && freeRankUpperBound(cs, top, 3) == 0;
      v.torsionMethod = "F_3 Betti bound";
    }
  } else {
    v.torsionHolds = true;
    v.torsionMethod = "Kunneth: the twisted factor has 2-torsion homology in every degree";
  }

  // (b)
  v.certificate = parityCertificateDP(spec);

  // (c)
  v.termCount = expansionTermCount(spec);
  if (options.oracle) {
    if (v.termCount > Integer(static_cast<unsigned long>(options.budget))) {
      v.oracleSkipReason = "expansion exceeds the term budget";
    } else if (dSize > Integer(static_cast<unsigned long>(options.maxSmithColumns))) {
      v.oracleSkipReason = "degree s*n+1 of D exceeds the Smith form budget";
    } else {
      v.oracleRan = true;
      v.aggregate = aggregateObstruction(spec, options.budget);
      ChainComplex d = dComplex(spec, top - 1, top + 1);
      BoundarySolve solve = solveBoundary(d, v.aggregate);
      v.aggregateIsBoundary = solve.preimage.has_value();
      v.aggregatePreimage = std::move(solve.preimage);
      try {
        RewriteResult rw = rewriteEvenToOdd(spec, v.aggregate);
        const bool direct = d.boundary(rw.preimage) == v.aggregate - rw.rewritten;
        const bool solved = isBoundary(d, v.aggregate - rw.rewritten).has_value();
        v.rewriteVerified = direct && solved;
        v.rewritten = std::move(rw.rewritten);
      } catch (const InvalidInput&) {
        v.rewriteVerified = false;
      }
    }
  }

  if (v.inTheoremScope && v.torsionHolds && v.certificate.holds) {
    v.conclusion = Conclusion::NonMaximal;
    v.note = "torsion class in the torsion-free odd subgroup";
    if (v.aggregateIsBoundary && !*v.aggregateIsBoundary) {
      v.conclusion = Conclusion::Inconclusive;
      v.note = "certificate and boundary oracle disagree";
    }
  } else if (!v.inTheoremScope) {
    v.note = "outside the range n = 2^{r+1}-2, 2 <= s <= n; certificate outcome is experimental";
  } else {
    v.note = "certificate did not hold";
  }
  return v;
}

}  // namespace tcs
