#include "tcs/zcl.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "tcs/binary_arith.hpp"
#include "tcs/errors.hpp"
#include "tcs/parallel.hpp"
#include "tcs/smith.hpp"

namespace tcs {

GradedRingSpec GradedRingSpec::projective(int n) {
  if (n < 1) throw InvalidInput("projective space dimension must be positive");
  return GradedRingSpec{RingFamily::Projective, 2, n};
}

GradedRingSpec GradedRingSpec::lens(unsigned p, int n) {
  if (p < 3 || p > 251 || !isPrime(p)) throw InvalidInput("lens rings need an odd prime p <= 251");
  if (n < 0) throw InvalidInput("lens space parameter n must be non-negative");
  return GradedRingSpec{RingFamily::Lens, p, n};
}

int GradedRingSpec::slotDimension() const { return family == RingFamily::Projective ? n + 1 : 2 * (n + 1); }

int GradedRingSpec::topDegree() const { return family == RingFamily::Projective ? n : 2 * n + 1; }

int GradedRingSpec::slotProduct(int i, int j) const {
  if (family == RingFamily::Lens && (i & 1) && (j & 1)) return -1;
  return i + j <= topDegree() ? i + j : -1;
}

std::string GradedRingSpec::toString() const {
  if (family == RingFamily::Projective) return "F_2[x]/(x^" + std::to_string(n + 1) + ")";
  return "F_" + std::to_string(p) + "[x,y]/(x^2,y^" + std::to_string(n + 1) + ")";
}

bool RingElement::isZero() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](std::uint8_t c) { return c == 0; });
}

TensorPowerRing::TensorPowerRing(GradedRingSpec spec, int s) : spec_(spec), s_(s), dim_(1) {
  if (s < 1) throw InvalidInput("tensor power needs s >= 1");
  const auto d = static_cast<std::size_t>(spec_.slotDimension());
  stride_.assign(static_cast<std::size_t>(s), 1);
  for (int i = s - 1; i >= 0; --i) {
    stride_[i] = dim_;
    if (dim_ > kMaxEntries / d)
      throw BudgetExceeded("tensor power of dimension " + std::to_string(d) + "^" + std::to_string(s) +
                           " exceeds the 2^24 entry cap");
    dim_ *= d;
  }
}

std::vector<int> TensorPowerRing::slots(std::size_t index) const {
  std::vector<int> out(static_cast<std::size_t>(s_));
  const auto d = static_cast<std::size_t>(spec_.slotDimension());
  for (int i = s_ - 1; i >= 0; --i) {
    out[i] = static_cast<int>(index % d);
    index /= d;
  }
  return out;
}

std::size_t TensorPowerRing::indexOf(const std::vector<int>& slots) const {
  if (slots.size() != static_cast<std::size_t>(s_)) throw InvalidInput("slot count mismatch");
  std::size_t idx = 0;
  for (int i = 0; i < s_; ++i) {
    if (slots[i] < 0 || slots[i] >= spec_.slotDimension()) throw InvalidInput("slot index out of range");
    idx += static_cast<std::size_t>(slots[i]) * stride_[i];
  }
  return idx;
}

int TensorPowerRing::degreeOf(std::size_t index) const {
  int deg = 0;
  for (int e : slots(index)) deg += e;
  return deg;
}

std::optional<int> TensorPowerRing::homogeneousDegree(const RingElement& u) const {
  std::optional<int> deg;
  for (std::size_t i = 0; i < dim_; ++i) {
    if (!u.coeffs[i]) continue;
    const int d = degreeOf(i);
    if (deg && *deg != d) return std::nullopt;
    deg = d;
  }
  return deg;
}

RingElement TensorPowerRing::zero() const { return RingElement{std::vector<std::uint8_t>(dim_, 0)}; }

RingElement TensorPowerRing::one() const { return monomial(std::vector<int>(static_cast<std::size_t>(s_), 0)); }

RingElement TensorPowerRing::monomial(const std::vector<int>& slots, unsigned coeff) const {
  RingElement u = zero();
  u.coeffs[indexOf(slots)] = static_cast<std::uint8_t>(coeff % spec_.p);
  return u;
}

RingElement TensorPowerRing::slotGenerator(int slot, int basisIndex) const {
  std::vector<int> sl(static_cast<std::size_t>(s_), 0);
  sl.at(static_cast<std::size_t>(slot)) = basisIndex;
  return monomial(sl);
}

RingElement TensorPowerRing::add(const RingElement& a, const RingElement& b) const {
  RingElement out = zero();
  for (std::size_t i = 0; i < dim_; ++i) out.coeffs[i] = static_cast<std::uint8_t>((a.coeffs[i] + b.coeffs[i]) % spec_.p);
  return out;
}

RingElement TensorPowerRing::scale(const RingElement& a, unsigned c) const {
  RingElement out = zero();
  c %= spec_.p;
  for (std::size_t i = 0; i < dim_; ++i) out.coeffs[i] = static_cast<std::uint8_t>((a.coeffs[i] * c) % spec_.p);
  return out;
}

RingElement TensorPowerRing::multiply(const RingElement& a, const RingElement& b) const {
  struct Term {
    std::vector<int> slots;
    unsigned coeff;
  };
  std::vector<Term> bt;
  for (std::size_t j = 0; j < dim_; ++j)
    if (b.coeffs[j]) bt.push_back({slots(j), b.coeffs[j]});
  RingElement out = zero();
  const unsigned p = spec_.p;
  std::vector<int> prod(static_cast<std::size_t>(s_));
  for (std::size_t i = 0; i < dim_; ++i) {
    if (!a.coeffs[i]) continue;
    const std::vector<int> as = slots(i);
    for (const Term& t : bt) {
      bool zeroProduct = false;
      // (a_1..a_s)(b_1..b_s): b_j moves past a_i for i > j
      int signParity = 0;
      int oddA = 0;  // parity of sum of a-degrees to the right of slot j
      for (int k = s_ - 1; k >= 0; --k) {
        signParity ^= (oddA & t.slots[k] & 1);
        oddA ^= as[k] & 1;
        const int q = spec_.slotProduct(as[k], t.slots[k]);
        if (q < 0) {
          zeroProduct = true;
          break;
        }
        prod[k] = q;
      }
      if (zeroProduct) continue;
      std::size_t idx = 0;
      for (int k = 0; k < s_; ++k) idx += static_cast<std::size_t>(prod[k]) * stride_[k];
      unsigned c = (a.coeffs[i] * t.coeff) % p;
      if (signParity && p != 2) c = (p - c) % p;
      out.coeffs[idx] = static_cast<std::uint8_t>((out.coeffs[idx] + c) % p);
    }
  }
  return out;
}

std::vector<unsigned> TensorPowerRing::cupImage(const RingElement& u) const {
  std::vector<unsigned> out(static_cast<std::size_t>(spec_.slotDimension()), 0);
  for (std::size_t i = 0; i < dim_; ++i) {
    if (!u.coeffs[i]) continue;
    int acc = 0;
    bool zero = false;
    for (int e : slots(i)) {
      // even generators commute with everything, so no sign arises here
      acc = spec_.slotProduct(acc, e);
      if (acc < 0) {
        zero = true;
        break;
      }
    }
    if (!zero) out[acc] = (out[acc] + u.coeffs[i]) % spec_.p;
  }
  return out;
}

bool TensorPowerRing::isZeroDivisor(const RingElement& u) const {
  auto img = cupImage(u);
  return std::all_of(img.begin(), img.end(), [](unsigned c) { return c == 0; });
}

std::string TensorPowerRing::format(const RingElement& u) const {
  auto slotName = [&](int e) -> std::string {
    if (e == 0) return "1";
    if (spec_.family == RingFamily::Projective) return e == 1 ? "x" : "x^" + std::to_string(e);
    std::string out = (e & 1) ? "x" : "";
    const int b = e / 2;
    if (b > 0) out += b == 1 ? "y" : "y^" + std::to_string(b);
    return out;
  };
  std::string out;
  for (std::size_t i = 0; i < dim_; ++i) {
    if (!u.coeffs[i]) continue;
    if (!out.empty()) out += " + ";
    if (u.coeffs[i] != 1) out += std::to_string(u.coeffs[i]) + "*";
    const auto sl = slots(i);
    for (int k = 0; k < s_; ++k) out += (k ? "(x)" : "") + slotName(sl[k]);
  }
  return out.empty() ? "0" : out;
}

std::vector<PoolElement> defaultPool(const TensorPowerRing& ring) {
  const int s = ring.s();
  const unsigned p = ring.spec().p;
  std::vector<PoolElement> pool;
  auto gen = [&](int slot) { return ring.slotGenerator(slot, 1); };
  if (s <= 20) {
    for (unsigned mask = 1; mask < (1u << s); ++mask) {
      const int w = __builtin_popcount(mask);
      if (w % static_cast<int>(p) != 0) continue;
      RingElement u = ring.zero();
      std::string label;
      for (int i = 0; i < s; ++i) {
        if (!(mask >> i & 1u)) continue;
        u = ring.add(u, gen(i));
        label += (label.empty() ? "x" : "+x") + std::to_string(i + 1);
      }
      pool.push_back({std::move(u), 1, std::move(label)});
    }
  }
  if (p != 2) {
    for (int i = 0; i < s; ++i)
      for (int j = i + 1; j < s; ++j)
        pool.push_back({ring.add(gen(i), ring.scale(gen(j), p - 1)), 1,
                        "x" + std::to_string(i + 1) + "-x" + std::to_string(j + 1)});
  }

  // degree 2
  std::vector<std::size_t> monomials;
  for (std::size_t i = 0; i < ring.dimension(); ++i)
    if (ring.degreeOf(i) == 2) monomials.push_back(i);
  std::optional<std::size_t> reference;
  auto name = [&](std::size_t idx) {
    std::string out;
    const auto sl = ring.slots(idx);
    for (int k = 0; k < s; ++k) {
      if (sl[k] == 0) continue;
      if (!out.empty()) out += "*";
      out += std::to_string(k + 1) + ":" + std::to_string(sl[k]);
    }
    return out;
  };
  for (std::size_t idx : monomials) {
    RingElement m = ring.zero();
    m.coeffs[idx] = 1;
    if (ring.isZeroDivisor(m)) {
      pool.push_back({m, 2, "[" + name(idx) + "]"});
    } else if (!reference) {
      reference = idx;
    } else {
      RingElement r = ring.zero();
      r.coeffs[*reference] = 1;
      RingElement diff = ring.add(m, ring.scale(r, p - 1));
      if (ring.isZeroDivisor(diff)) pool.push_back({std::move(diff), 2, "[" + name(idx) + "]-[" + name(*reference) + "]"});
    }
  }
  return pool;
}

namespace {

struct BranchResult {
  int best = 0;
  std::vector<int> exps;
  std::uint64_t nodes = 0;
  bool budgetHit = false;
};

class Searcher {
 public:
  Searcher(const TensorPowerRing& ring, const std::vector<PoolElement>& pool, int target, std::uint64_t budget)
      : ring_(ring), pool_(pool), target_(target), budget_(budget), minDegFrom_(pool.size() + 1, 0) {
    int m = 1 << 30;
    for (std::size_t k = pool.size(); k-- > 0;) {
      m = std::min(m, pool[k].degree);
      minDegFrom_[k] = m;
    }
  }

  // Powers u_k^1 .. u_k^e multiplied onto base, stopping at zero or the degree cap.
  std::vector<RingElement> powers(std::size_t k, const RingElement& base, int degree) const {
    std::vector<RingElement> chain;
    RingElement cur = base;
    const int top = ring_.topDegree();
    for (int e = 1; degree + e * pool_[k].degree <= top; ++e) {
      cur = ring_.multiply(cur, pool_[k].element);
      if (cur.isZero()) break;
      chain.push_back(cur);
    }
    return chain;
  }

  void run(std::size_t k, const RingElement& product, int length, int degree, std::vector<int>& exps,
           BranchResult& res) const {
    if (res.budgetHit || res.best >= target_) return;
    if (++res.nodes > budget_) {
      res.budgetHit = true;
      return;
    }
    if (length > res.best) {
      res.best = length;
      res.exps = exps;
      if (res.best >= target_) return;
    }
    if (k == pool_.size()) return;
    if (length + (ring_.topDegree() - degree) / minDegFrom_[k] <= res.best) return;
    const auto chain = powers(k, product, degree);
    for (std::size_t e = chain.size() + 1; e-- > 0;) {
      exps[k] = static_cast<int>(e);
      run(k + 1, e ? chain[e - 1] : product, length + static_cast<int>(e),
          degree + static_cast<int>(e) * pool_[k].degree, exps, res);
      if (res.budgetHit || res.best >= target_) break;
    }
    exps[k] = 0;
  }

 private:
  const TensorPowerRing& ring_;
  const std::vector<PoolElement>& pool_;
  int target_;
  std::uint64_t budget_;
  std::vector<int> minDegFrom_;
};

void validatePool(const TensorPowerRing& ring, const std::vector<PoolElement>& pool) {
  if (pool.empty()) throw InvalidInput("zero-divisor pool is empty");
  for (const auto& u : pool) {
    if (u.element.coeffs.size() != ring.dimension()) throw InvalidInput("pool element " + u.label + " has the wrong size");
    const auto deg = ring.homogeneousDegree(u.element);
    if (!deg || *deg != u.degree || u.degree < 1)
      throw InvalidInput("pool element " + u.label + " is not homogeneous of its stated positive degree");
    if (!ring.isZeroDivisor(u.element)) throw InvalidInput("pool element " + u.label + " is not a zero divisor");
  }
}

}  // namespace

ZclSearchResult searchZclLower(const TensorPowerRing& ring, const std::vector<PoolElement>& pool, int targetLength,
                               std::uint64_t budget, unsigned threads) {
  validatePool(ring, pool);
  const int target = std::min(targetLength, ring.topDegree());
  Searcher searcher(ring, pool, target, budget);
  const RingElement one = ring.one();
  const auto chain = searcher.powers(0, one, 0);
  // branch b takes exponent chain.size() - b for the first pool element
  const std::size_t branches = chain.size() + 1;
  auto results = parallelMap(branches, threads, [&](std::size_t b) {
    BranchResult res;
    std::vector<int> exps(pool.size(), 0);
    const int e = static_cast<int>(chain.size() - b);
    exps[0] = e;
    res.exps = exps;
    searcher.run(1, e ? chain[e - 1] : one, e, e * pool[0].degree, exps, res);
    return res;
  });
  ZclSearchResult out;
  for (const auto& r : results) {
    out.nodes += r.nodes;
    out.budgetHit = out.budgetHit || r.budgetHit;
    if (r.best > out.bestLength || out.exponents.empty()) {
      out.bestLength = r.best;
      out.exponents = r.exps;
    }
  }
  return out;
}

bool validateWitness(const TensorPowerRing& ring, const std::vector<PoolElement>& pool, const std::vector<int>& exponents) {
  if (exponents.size() != pool.size()) return false;
  RingElement prod = ring.one();
  for (std::size_t k = pool.size(); k-- > 0;) {
    if (exponents[k] < 0) return false;
    if (exponents[k] > 0 && !ring.isZeroDivisor(pool[k].element)) return false;
    for (int e = 0; e < exponents[k]; ++e) prod = ring.multiply(pool[k].element, prod);
  }
  return !prod.isZero();
}

namespace {

ModPEchelon::Vector toSparse(const RingElement& u) {
  ModPEchelon::Vector v;
  for (std::size_t i = 0; i < u.coeffs.size(); ++i)
    if (u.coeffs[i]) v[i] = u.coeffs[i];
  return v;
}


}  // namespace

std::vector<RingElement> zeroDivisorBasis(const TensorPowerRing& ring, int degree) {
  const unsigned p = ring.spec().p;
  std::vector<RingElement> out;
  std::optional<std::pair<std::size_t, unsigned>> reference;  // (index, image coefficient)
  std::optional<std::size_t> targetSlot;
  for (std::size_t i = 0; i < ring.dimension(); ++i) {
    if (ring.degreeOf(i) != degree) continue;
    RingElement m = ring.zero();
    m.coeffs[i] = 1;
    const auto img = ring.cupImage(m);
    std::optional<std::size_t> nz;
    for (std::size_t j = 0; j < img.size(); ++j) {
      if (!img[j]) continue;
      if (nz) throw Error("internal: cup image of a monomial has two terms");
      nz = j;
    }
    if (!nz) {
      out.push_back(std::move(m));
      continue;
    }
    if (targetSlot && *targetSlot != *nz) throw Error("internal: base ring has two classes in one degree");
    targetSlot = nz;
    if (!reference) {
      reference = {i, img[*nz]};
      continue;
    }
    // m - (c_m / c_ref) ref
    unsigned inv = 1;
    for (unsigned k = 1; k < p; ++k)
      if ((reference->second * k) % p == 1) inv = k;
    const unsigned factor = (img[*nz] * inv) % p;
    m.coeffs[reference->first] = static_cast<std::uint8_t>((p - factor) % p);
    out.push_back(std::move(m));
  }
  return out;
}

int exhaustiveZclTiny(const GradedRingSpec& spec, int s) {
  TensorPowerRing ring(spec, s);
  if (ring.dimension() > 100)
    throw BudgetExceeded("exhaustive zero-divisor cup length is limited to ring dimension 100 (got " +
                         std::to_string(ring.dimension()) + ")");
  std::vector<RingElement> generators;
  for (int d = 1; d <= ring.topDegree(); ++d)
    for (auto& u : zeroDivisorBasis(ring, d)) generators.push_back(std::move(u));
  if (generators.empty()) return 0;

  // basis of the ideal power K^len
  std::vector<RingElement> power = generators;
  int len = 1;
  while (true) {
    ModPEchelon next(spec.p);
    std::vector<RingElement> nextBasis;
    for (const auto& a : power) {
      for (const auto& g : generators) {
        RingElement prod = ring.multiply(a, g);
        if (prod.isZero()) continue;
        if (next.insert(toSparse(prod))) nextBasis.push_back(std::move(prod));
      }
    }
    if (nextBasis.empty()) return len;
    power = std::move(nextBasis);
    ++len;
  }
}

std::int64_t davisZcl(std::uint64_t n, std::uint64_t s) {
  if (s < 3) throw InvalidInput("the closed form for the zero-divisor cup length needs s >= 3");
  return static_cast<std::int64_t>(s * n) - mDefect(n, s);
}

LensBound lensLowerBound(unsigned p, int n, int s) {
  if (p < 3 || !isPrime(p)) throw InvalidInput("lens bounds need an odd prime p");
  if (n < 0) throw InvalidInput("lens parameter n must be non-negative");
  if (s < 2) throw InvalidInput("lens bounds need s >= 2");
  LensBound best{-1, 0, 0};
  for (int l = 0; l <= n; ++l) {
    for (int lp = 0; lp <= n; ++lp) {
      if (binomMod(static_cast<std::uint64_t>(l), static_cast<std::uint64_t>(lp), p) == 0) continue;
      const std::int64_t v = (s % 2 == 0) ? std::int64_t{s} * (l + lp + 1) - 1
                                          : std::int64_t{s - 1} * (l + lp) + s + 2 * n - 1;
      if (v > best.value) best = LensBound{v, l, lp};
    }
  }
  return best;
}

}  // namespace tcs
