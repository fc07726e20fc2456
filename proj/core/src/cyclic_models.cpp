#include "tcs/cyclic_models.hpp"

#include <algorithm>
#include <cctype>
#include <memory>

#include "tcs/binary_arith.hpp"
#include "tcs/errors.hpp"

namespace tcs {

// ---------------------------------------------------------------------------
// GroupSpec

GroupSpec GroupSpec::parse(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw InvalidInput("empty group specification");
  GroupSpec g;
  std::size_t pos = 0;
  auto fail = [&](const std::string& why) {
    throw InvalidInput("cannot parse group '" + std::string(text) + "': " + why);
  };
  auto readNumber = [&]() -> unsigned long {
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (start == pos) fail("expected a number");
    if (pos - start > 9) fail("number too large");
    return std::stoul(s.substr(start, pos - start));
  };
  while (true) {
    if (pos >= s.size() || s[pos] != 'Z') fail("expected 'Z'");
    ++pos;
    if (pos < s.size() && s[pos] == '^') {
      ++pos;
      unsigned long r = readNumber();
      if (r == 0) fail("Z^0 is not a factor");
      for (unsigned long i = 0; i < r; ++i) g.orders.push_back(0);
    } else if (pos < s.size() && s[pos] == '_') {
      ++pos;
      unsigned long q = readNumber();
      if (q < 2) fail("cyclic order must be at least 2");
      g.orders.push_back(q);
    } else {
      g.orders.push_back(0);
    }
    if (pos == s.size()) break;
    if (s[pos] != 'x') fail("expected 'x' between factors");
    ++pos;
  }
  return g;
}

std::string GroupSpec::toString() const {
  std::string out;
  std::size_t i = 0;
  while (i < orders.size()) {
    if (!out.empty()) out += " x ";
    if (orders[i] == 0) {
      std::size_t j = i;
      while (j < orders.size() && orders[j] == 0) ++j;
      out += j - i == 1 ? "Z" : "Z^" + std::to_string(j - i);
      i = j;
    } else {
      out += "Z_" + std::to_string(orders[i]);
      ++i;
    }
  }
  return out;
}

std::size_t GroupSpec::freeRank() const {
  return static_cast<std::size_t>(std::count(orders.begin(), orders.end(), 0ul));
}

// ---------------------------------------------------------------------------
// Factor complexes

namespace {

std::vector<std::vector<BasisLabel>> onePerDegree(int maxDeg, int top) {
  std::vector<std::vector<BasisLabel>> basis(maxDeg + 1);
  for (int k = 0; k <= std::min(maxDeg, top); ++k) basis[k].push_back(BasisLabel{k});
  return basis;
}

}  // namespace

ChainComplex complexC(unsigned long q, int maxDeg) {
  if (q < 2) throw InvalidInput("complexC needs q >= 2");
  return ChainComplex(1, maxDeg, onePerDegree(maxDeg, maxDeg), [q](const BasisLabel& l) {
    const int k = l.factors[0];
    if (k == 0 || k % 2 == 1) return ChainElement(k - 1);
    return ChainElement::single(BasisLabel{k - 1}, Integer(q));
  });
}

ChainComplex complexCTilde(int maxDeg) {
  return ChainComplex(1, maxDeg, onePerDegree(maxDeg, maxDeg), [](const BasisLabel& l) {
    const int k = l.factors[0];
    if (k % 2 == 0) return ChainElement(k - 1);
    return ChainElement::single(BasisLabel{k - 1}, Integer(-2));
  });
}

ChainComplex complexFreeZ(int maxDeg) {
  return ChainComplex(1, maxDeg, onePerDegree(maxDeg, 1),
                      [](const BasisLabel& l) { return ChainElement(l.degree() - 1); });
}

ChainComplex factorComplex(unsigned long order, SlotTwist twist, int maxDeg) {
  if (twist == SlotTwist::Twisted) {
    if (order != 2) throw InvalidInput("twisted coefficients are supported only for Z_2 factors");
    return complexCTilde(maxDeg);
  }
  if (order == 0) return complexFreeZ(maxDeg);
  return complexC(order, maxDeg);
}

// ---------------------------------------------------------------------------
// Per-factor structure maps

std::vector<std::tuple<int, int, Integer>> diagonalTerms(unsigned long order,
                                                         DiagonalVariant variant, int p,
                                                         const std::optional<Integer>& oddOdd) {
  std::vector<std::tuple<int, int, Integer>> out;
  if (order == 0) {
    if (variant != DiagonalVariant::Plain)
      throw InvalidInput("twisted diagonals are supported only for Z_2");
    if (p == 0) out.emplace_back(0, 0, Integer(1));
    if (p == 1) {
      out.emplace_back(0, 1, Integer(1));
      out.emplace_back(1, 0, Integer(1));
    }
    return out;
  }
  if (variant != DiagonalVariant::Plain && order != 2)
    throw InvalidInput("twisted diagonals are supported only for Z_2");
  const Integer alpha = oddOdd ? *oddOdd : Integer(order * (order - 1) / 2);
  for (int k = 0; k <= p; ++k) {
    const int l = p - k;
    Integer c = 1;
    switch (variant) {
      case DiagonalVariant::Plain:
        if ((k & 1) && (l & 1)) c = alpha;
        break;
      case DiagonalVariant::TwistLeft:
        break;
      case DiagonalVariant::TwistRight:
        if (k & 1) c = -1;
        break;
    }
    if (c != 0) out.emplace_back(k, l, c);
  }
  return out;
}

std::optional<std::pair<int, Integer>> pontryaginTerm(unsigned long order, int a, int b) {
  if ((a & 1) && (b & 1)) return std::nullopt;
  if (order == 0 && a + b > 1) return std::nullopt;
  return std::make_pair(a + b, Integer(binomBig(static_cast<unsigned long>(a / 2),
                                                static_cast<unsigned long>(b / 2))));
}

Integer inversionCoefficient(unsigned long order, int i) {
  if (order == 0) return i == 1 ? Integer(-1) : Integer(1);
  Integer c;
  mpz_ui_pow_ui(c.get_mpz_t(), order - 1, static_cast<unsigned long>((i + 1) / 2));
  return c;
}

namespace {

std::shared_ptr<const ChainComplex> share(ChainComplex c) {
  return std::make_shared<const ChainComplex>(std::move(c));
}

}  // namespace

ChainMapData diagonalMap(unsigned long q, DiagonalVariant variant, int maxDeg,
                         const std::optional<Integer>& oddOdd) {
  ChainMapData f;
  SlotTwist srcTwist = variant == DiagonalVariant::Plain ? SlotTwist::Plain : SlotTwist::Twisted;
  SlotTwist left = variant == DiagonalVariant::TwistLeft ? SlotTwist::Twisted : SlotTwist::Plain;
  SlotTwist right = variant == DiagonalVariant::TwistRight ? SlotTwist::Twisted : SlotTwist::Plain;
  ChainComplex a = factorComplex(q, left, maxDeg);
  ChainComplex b = factorComplex(q, right, maxDeg);
  f.source = share(factorComplex(q, srcTwist, maxDeg));
  f.target = share(tensor(a, b));
  f.onLabel = [q, variant, oddOdd](const BasisLabel& x) {
    ChainElement out(x.degree());
    for (const auto& [k, l, c] : diagonalTerms(q, variant, x.factors[0], oddOdd))
      out.addTerm(BasisLabel{k, l}, c);
    return out;
  };
  return f;
}

ChainMapData pontryaginMap(unsigned long q, PontryaginPattern pattern, int maxDeg) {
  const SlotTwist t = pattern == PontryaginPattern::Twisted ? SlotTwist::Twisted : SlotTwist::Plain;
  if (t == SlotTwist::Twisted && q != 2)
    throw InvalidInput("the twisted Pontryagin product is supported only for Z_2");
  ChainComplex c = factorComplex(q, t, maxDeg);
  ChainMapData f;
  f.source = share(tensor(c, c));
  f.target = share(std::move(c));
  f.onLabel = [q](const BasisLabel& ab) {
    ChainElement out(ab.degree());
    if (auto t = pontryaginTerm(q, ab.factors[0], ab.factors[1]))
      out.addTerm(BasisLabel{t->first}, t->second);
    return out;
  };
  return f;
}

ChainMapData inversionMap(unsigned long q, int maxDeg) {
  ChainMapData f;
  f.source = share(factorComplex(q, SlotTwist::Plain, maxDeg));
  f.target = f.source;
  f.onLabel = [q](const BasisLabel& x) {
    return ChainElement::single(x, inversionCoefficient(q, x.factors[0]));
  };
  return f;
}

// ---------------------------------------------------------------------------
// Groups

ChainComplex groupComplex(const GroupSpec& g, const std::vector<SlotTwist>& twist, int maxDeg) {
  if (g.orders.empty()) throw InvalidInput("group with no factors");
  if (twist.size() != g.orders.size()) throw InvalidInput("twist pattern length mismatch");
  std::vector<ChainComplex> parts;
  parts.reserve(g.orders.size());
  for (std::size_t f = 0; f < g.orders.size(); ++f)
    parts.push_back(factorComplex(g.orders[f], twist[f], maxDeg));
  if (parts.size() == 1) return std::move(parts[0]);
  std::vector<const ChainComplex*> ptrs;
  for (const auto& p : parts) ptrs.push_back(&p);
  return tensorFactors(ptrs, 0, maxDeg);
}

ChainComplex groupComplex(const GroupSpec& g, int maxDeg) {
  return groupComplex(g, std::vector<SlotTwist>(g.orders.size(), SlotTwist::Plain), maxDeg);
}

ChainComplex groupPower(const GroupSpec& g, int count, int lo, int hi) {
  if (count < 1) throw InvalidInput("groupPower needs a positive count");
  std::vector<ChainComplex> parts;
  for (unsigned long q : g.orders) parts.push_back(factorComplex(q, SlotTwist::Plain, hi));
  std::vector<const ChainComplex*> ptrs;
  for (int c = 0; c < count; ++c)
    for (const auto& p : parts) ptrs.push_back(&p);
  return tensorFactors(ptrs, lo, hi);
}

namespace {

// Signs of the interleavings [k_1,l_1,...,k_F,l_F] <-> [k_1..k_F, l_1..l_F].
std::vector<int> blockToPairs(std::size_t F) {
  // output [a_1,b_1,a_2,b_2,...] from input [a_1..a_F, b_1..b_F]
  std::vector<int> perm(2 * F);
  for (std::size_t f = 0; f < F; ++f) {
    perm[2 * f] = static_cast<int>(f);
    perm[2 * f + 1] = static_cast<int>(F + f);
  }
  return perm;
}

std::vector<int> pairsToBlock(std::size_t F) {
  // output [k_1..k_F, l_1..l_F] from input [k_1,l_1,...]
  std::vector<int> perm(2 * F);
  for (std::size_t f = 0; f < F; ++f) {
    perm[f] = static_cast<int>(2 * f);
    perm[F + f] = static_cast<int>(2 * f + 1);
  }
  return perm;
}

void requireArity(const GroupSpec& g, const BasisLabel& x, std::size_t mult) {
  if (x.slotCount() != mult * g.orders.size())
    throw InvalidInput("label " + x.toString() + " does not match group " + g.toString());
}

}  // namespace

ChainElement groupDiagonal(const GroupSpec& g, const BasisLabel& x) {
  requireArity(g, x, 1);
  const std::size_t F = g.orders.size();
  // Cartesian product over factors of the per-factor terms, built as the
  // pair-interleaved label and then moved into block order.
  std::vector<std::pair<std::vector<int>, Integer>> acc{{{}, Integer(1)}};
  for (std::size_t f = 0; f < F; ++f) {
    auto terms = diagonalTerms(g.orders[f], DiagonalVariant::Plain, x.factors[f]);
    std::vector<std::pair<std::vector<int>, Integer>> next;
    for (const auto& [lab, c] : acc) {
      for (const auto& [k, l, d] : terms) {
        std::vector<int> nl = lab;
        nl.push_back(k);
        nl.push_back(l);
        next.emplace_back(std::move(nl), c * d);
      }
    }
    acc = std::move(next);
  }
  ChainElement interleaved(x.degree());
  for (auto& [lab, c] : acc) interleaved.addTerm(BasisLabel(std::move(lab)), c);
  if (F == 1) return interleaved;
  auto perm = pairsToBlock(F);
  return permuteSlotsWithSign(interleaved, perm);
}

namespace {

template <typename PairFn>
ChainElement pairwise(const GroupSpec& g, const BasisLabel& ab, PairFn fn) {
  requireArity(g, ab, 2);
  const std::size_t F = g.orders.size();
  BasisLabel paired = ab;
  int sign = 1;
  if (F > 1) {
    auto perm = blockToPairs(F);
    sign = permutationSign(ab, perm);
    for (std::size_t i = 0; i < 2 * F; ++i) paired.factors[i] = ab.factors[perm[i]];
  }
  std::vector<int> out(F);
  Integer coeff = sign;
  for (std::size_t f = 0; f < F; ++f) {
    auto t = fn(g.orders[f], paired.factors[2 * f], paired.factors[2 * f + 1]);
    if (!t) return ChainElement(ab.degree());
    out[f] = t->first;
    coeff *= t->second;
  }
  ChainElement r(ab.degree());
  r.addTerm(BasisLabel(std::move(out)), coeff);
  return r;
}

}  // namespace

ChainElement groupPontryagin(const GroupSpec& g, const BasisLabel& ab) {
  return pairwise(g, ab, [](unsigned long q, int a, int b) { return pontryaginTerm(q, a, b); });
}

ChainElement groupInversion(const GroupSpec& g, const BasisLabel& x) {
  requireArity(g, x, 1);
  Integer c = 1;
  for (std::size_t f = 0; f < g.orders.size(); ++f) c *= inversionCoefficient(g.orders[f], x.factors[f]);
  return ChainElement::single(x, c);
}

ChainElement groupChi(const GroupSpec& g, const BasisLabel& ab) {
  return pairwise(g, ab, [](unsigned long q, int a, int b) -> std::optional<std::pair<int, Integer>> {
    auto t = pontryaginTerm(q, a, b);
    if (!t) return std::nullopt;
    t->second *= inversionCoefficient(q, b);
    return t;
  });
}

ChainMapData structureMapsForGroup(const GroupSpec& g, StructureKind kind, int maxDeg) {
  auto single = share(groupComplex(g, maxDeg));
  ChainMapData f;
  switch (kind) {
    case StructureKind::Diagonal:
      f.source = single;
      f.target = share(groupPower(g, 2, 0, maxDeg));
      f.onLabel = [g](const BasisLabel& x) { return groupDiagonal(g, x); };
      break;
    case StructureKind::Pontryagin:
      f.source = share(groupPower(g, 2, 0, maxDeg));
      f.target = single;
      f.onLabel = [g](const BasisLabel& x) { return groupPontryagin(g, x); };
      break;
    case StructureKind::Inversion:
      f.source = single;
      f.target = single;
      f.onLabel = [g](const BasisLabel& x) { return groupInversion(g, x); };
      break;
    case StructureKind::Chi:
      f.source = share(groupPower(g, 2, 0, maxDeg));
      f.target = single;
      f.onLabel = [g](const BasisLabel& x) { return groupChi(g, x); };
      break;
  }
  return f;
}

std::optional<int> diagonalCocommutativityViolation(unsigned long q, int upToDegree,
                                                    const std::optional<Integer>& oddOdd) {
  if (q < 2) throw InvalidInput("cocommutativity check needs a finite cyclic factor");
  for (int p = 0; p <= upToDegree; ++p) {
    ChainElement d(p), swapped(p);
    for (const auto& [k, l, c] : diagonalTerms(q, DiagonalVariant::Plain, p, oddOdd)) {
      d.addTerm(BasisLabel{k, l}, c);
      swapped.addTerm(BasisLabel{l, k}, ((k * l) & 1) ? Integer(-c) : c);
    }
    if (!(reduceMod(d - swapped, q).isZero())) return p;
  }
  return std::nullopt;
}

}  // namespace tcs
