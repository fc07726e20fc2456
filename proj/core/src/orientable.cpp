#include "tcs/orientable.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <set>

#include "tcs/errors.hpp"
#include "tcs/homology.hpp"

namespace tcs {

FundamentalClassSpec FundamentalClassSpec::standard(const GroupSpec& group, int n) {
  if (n < 1) throw InvalidInput("manifold dimension must be positive");
  FundamentalClassSpec f{group, n, ChainElement(n)};
  const auto& o = group.orders;
  if (o.size() == 1 && o[0] != 0) {
    if (n % 2 == 1) f.chain = ChainElement::single(BasisLabel{n});
    return f;
  }
  const std::size_t r = group.freeRank();
  if (r == o.size()) {
    if (static_cast<std::size_t>(n) > r) return f;
    if (static_cast<std::size_t>(n) == r) {
      f.chain = ChainElement::single(BasisLabel(std::vector<int>(r, 1)));
      return f;
    }
  }
  throw InvalidInput("no standard fundamental class for " + group.toString() + " in dimension " +
                     std::to_string(n) + "; supply one with --class");
}

namespace {

BasisLabel slice(const BasisLabel& x, std::size_t from, std::size_t count) {
  return BasisLabel(std::vector<int>(x.factors.begin() + from, x.factors.begin() + from + count));
}

void append(std::vector<int>& out, const BasisLabel& x) {
  out.insert(out.end(), x.factors.begin(), x.factors.end());
}

}  // namespace

ChainElement chiSOnTensor(const GroupSpec& g, const std::vector<ChainElement>& factors) {
  const std::size_t s = factors.size();
  if (s < 2) throw InvalidInput("^s chi needs s >= 2");
  const std::size_t F = g.orders.size();
  int degree = 0;
  for (const auto& x : factors) degree += x.degree();

  // State: (output blocks so far, block still waiting for its chi partner).
  std::map<std::pair<BasisLabel, BasisLabel>, Integer> state;
  for (const auto& [a, c] : factors[0].terms()) {
    if (a.slotCount() != F) throw InvalidInput("chain does not live in the group complex");
    state[{BasisLabel(), a}] += c;
  }

  auto step = [&](const BasisLabel& pending, const BasisLabel& incoming, const BasisLabel& prefix,
                  const Integer& c, std::vector<std::pair<BasisLabel, Integer>>& out) {
    BasisLabel pair = concat(pending, incoming);
    const ChainElement chi = groupChi(g, pair);
    for (const auto& [lab, d] : chi.terms()) {
      std::vector<int> f = prefix.factors;
      append(f, lab);
      out.emplace_back(BasisLabel(std::move(f)), c * d);
    }
  };

  for (std::size_t i = 1; i + 1 < s; ++i) {
    std::map<std::pair<BasisLabel, BasisLabel>, Integer> next;
    for (const auto& [key, c] : state) {
      const auto& [prefix, pending] = key;
      for (const auto& [b, cb] : factors[i].terms()) {
        const ChainElement diag = groupDiagonal(g, b);
        for (const auto& [kl, cd] : diag.terms()) {
          BasisLabel k = slice(kl, 0, F);
          BasisLabel l = slice(kl, F, F);
          std::vector<std::pair<BasisLabel, Integer>> produced;
          step(pending, k, prefix, c * cb * cd, produced);
          for (auto& [np, v] : produced) {
            auto& slot = next[{np, l}];
            slot += v;
          }
        }
      }
    }
    state.clear();
    for (auto& [key, v] : next)
      if (v != 0) state.emplace(key, std::move(v));
  }

  ChainElement out(degree);
  for (const auto& [key, c] : state) {
    const auto& [prefix, pending] = key;
    for (const auto& [b, cb] : factors[s - 1].terms()) {
      std::vector<std::pair<BasisLabel, Integer>> produced;
      step(pending, b, prefix, c * cb, produced);
      for (auto& [lab, v] : produced) out.addTerm(lab, v);
    }
  }
  return out;
}

ChainMapData chiS(const GroupSpec& g, int s, int maxDeg) {
  if (s < 2) throw InvalidInput("^s chi needs s >= 2");
  ChainMapData f;
  f.source = std::make_shared<const ChainComplex>(groupPower(g, s, 0, maxDeg));
  f.target = std::make_shared<const ChainComplex>(groupPower(g, s - 1, 0, maxDeg));
  const std::size_t F = g.orders.size();
  f.onLabel = [g, s, F](const BasisLabel& x) {
    std::vector<ChainElement> parts;
    for (int i = 0; i < s; ++i) parts.push_back(ChainElement::single(slice(x, i * F, F)));
    return chiSOnTensor(g, parts);
  };
  return f;
}

ChainElement obstructionChain(const FundamentalClassSpec& f, int s) {
  if (s < 2) throw InvalidInput("the obstruction needs s >= 2");
  if (f.chain.isZero()) return ChainElement(s * f.n);
  return chiSOnTensor(f.group, std::vector<ChainElement>(static_cast<std::size_t>(s), f.chain));
}

std::string toString(ObstructionStatus s) {
  switch (s) {
    case ObstructionStatus::ZeroChain: return "zero-chain";
    case ObstructionStatus::Boundary: return "boundary";
    case ObstructionStatus::NonzeroClass: return "nonzero-class";
    case ObstructionStatus::Unresolved: return "unresolved";
  }
  return "unresolved";
}

std::string toString(Conclusion c) {
  switch (c) {
    case Conclusion::NonMaximal: return "non-maximal";
    case Conclusion::Maximal: return "maximal";
    case Conclusion::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

namespace {

std::set<unsigned long> primeDivisors(const GroupSpec& g) {
  std::set<unsigned long> out;
  for (unsigned long q : g.orders) {
    unsigned long m = q;
    for (unsigned long d = 2; d * d <= m; ++d) {
      if (m % d == 0) {
        out.insert(d);
        while (m % d == 0) m /= d;
      }
    }
    if (m > 1) out.insert(m);
  }
  return out;
}

}  // namespace

ObstructionVerdict decideOrientable(const FundamentalClassSpec& f, int s, const DecideOptions& options) {
  if (s < 2) throw InvalidInput("decide needs s >= 2");
  ObstructionVerdict v;
  v.group = f.group;
  v.n = f.n;
  v.s = s;
  if (!f.chain.isZero()) {
    if (f.chain.degree() != f.n)
      throw InvalidInput("fundamental class has degree " + std::to_string(f.chain.degree()) +
                         ", expected " + std::to_string(f.n));
    ChainComplex home = groupComplex(f.group, f.n + 1);
    for (const auto& [label, c] : f.chain.terms())
      if (!home.contains(label))
        throw InvalidInput("label " + label.toString() + " is not a basis element of the " +
                           f.group.toString() + " complex");
    requireCycle(home, f.chain);
  }

  v.obstruction = obstructionChain(f, s);
  if (v.obstruction.isZero()) {
    v.status = ObstructionStatus::ZeroChain;
    v.conclusion = Conclusion::NonMaximal;
    v.method = "obstruction chain vanishes identically";
    return v;
  }

  const int top = s * f.n;
  ChainComplex target = groupPower(f.group, s - 1, top - 1, top + 1);
  if (target.rank(top + 1) > options.maxTargetRank) {
    v.method = "target complex exceeds the size budget";
    return v;
  }

  for (unsigned long p : primeDivisors(f.group)) {
    if (!isBoundaryModP(target, v.obstruction, p)) {
      v.status = ObstructionStatus::NonzeroClass;
      v.conclusion = Conclusion::Maximal;
      v.witnessPrime = p;
      v.method = "class is nonzero after reduction mod " + std::to_string(p);
      return v;
    }
  }

  if (target.rank(top + 1) > options.maxSmithColumns) {
    v.method = "boundary mod every relevant prime; integral solve exceeds the size budget";
    return v;
  }
  BoundarySolve solve = solveBoundary(target, v.obstruction);
  if (solve.preimage) {
    v.status = ObstructionStatus::Boundary;
    v.conclusion = Conclusion::NonMaximal;
    v.preimage = std::move(solve.preimage);
    v.method = "integral boundary";
  } else {
    v.status = ObstructionStatus::NonzeroClass;
    v.conclusion = Conclusion::Maximal;
    v.residue = std::move(solve.residue);
    v.method = "integral Smith form residue is nonzero";
  }
  return v;
}

bool FreeTimesCyclicResult::allZero() const {
  for (const auto& [m, zero] : cases)
    if (!zero) return false;
  return true;
}

std::vector<BasisLabel> freeTimesCyclicMonomials(int r, int n) {
  std::vector<BasisLabel> out;
  for (unsigned mask = 0; mask < (1u << r); ++mask) {
    const int w = __builtin_popcount(mask);
    const int c = n - w;
    if (c < 1 || c % 2 == 0) continue;
    std::vector<int> f;
    for (int i = 0; i < r; ++i) f.push_back((mask >> i) & 1u);
    f.push_back(c);
    out.emplace_back(std::move(f));
  }
  std::sort(out.begin(), out.end());
  return out;
}

FreeTimesCyclicResult freeTimesCyclicVanishing(int r, unsigned long q, int n, int s,
                                               MonomialChoice choice) {
  if (r < 0 || q < 2) throw InvalidInput("need r >= 0 and q >= 2");
  if (r >= n)
    throw MethodInapplicable("Z^r x Z_q vanishing needs r < n (got r=" + std::to_string(r) +
                             ", n=" + std::to_string(n) + ")");
  GroupSpec g;
  g.orders.assign(static_cast<std::size_t>(r), 0);
  g.orders.push_back(q);
  FreeTimesCyclicResult res;
  auto mons = freeTimesCyclicMonomials(r, n);
  auto run = [&](const ChainElement& m) {
    FundamentalClassSpec f{g, n, m};
    res.cases.emplace_back(m, obstructionChain(f, s).isZero());
  };
  if (choice == MonomialChoice::EachMonomial) {
    for (const auto& lab : mons) run(ChainElement::single(lab));
  } else {
    ChainElement sum(n);
    for (const auto& lab : mons) sum.addTerm(lab, 1);
    run(sum);
  }
  return res;
}

}  // namespace tcs
