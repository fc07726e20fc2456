#include "tcs/chain.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "tcs/errors.hpp"

namespace tcs {

int BasisLabel::degree() const { return std::accumulate(factors.begin(), factors.end(), 0); }

std::string BasisLabel::toString() const {
  std::string out = "[";
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(factors[i]);
  }
  out += ']';
  return out;
}

BasisLabel concat(const BasisLabel& a, const BasisLabel& b) {
  std::vector<int> f;
  f.reserve(a.factors.size() + b.factors.size());
  f.insert(f.end(), a.factors.begin(), a.factors.end());
  f.insert(f.end(), b.factors.begin(), b.factors.end());
  return BasisLabel(std::move(f));
}

// ---------------------------------------------------------------------------
// ChainElement

ChainElement ChainElement::single(const BasisLabel& label, const Integer& coefficient) {
  ChainElement x(label.degree());
  x.addTerm(label, coefficient);
  return x;
}

Integer ChainElement::coefficient(const BasisLabel& label) const {
  auto it = terms_.find(label);
  return it == terms_.end() ? Integer(0) : it->second;
}

void ChainElement::addTerm(const BasisLabel& label, const Integer& coefficient) {
  if (coefficient == 0) return;
  const int d = label.degree();
  if (terms_.empty()) {
    degree_ = d;
  } else if (d != degree_) {
    throw InvalidInput("mixed degrees in chain: " + label.toString() + " has degree " +
                       std::to_string(d) + ", chain has degree " + std::to_string(degree_));
  }
  auto [it, inserted] = terms_.try_emplace(label, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second == 0) terms_.erase(it);
  }
}

ChainElement& ChainElement::operator+=(const ChainElement& other) {
  for (const auto& [label, c] : other.terms_) addTerm(label, c);
  return *this;
}

ChainElement& ChainElement::operator-=(const ChainElement& other) {
  for (const auto& [label, c] : other.terms_) addTerm(label, -c);
  return *this;
}

ChainElement& ChainElement::operator*=(const Integer& factor) {
  if (factor == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [label, c] : terms_) c *= factor;
  return *this;
}

ChainElement ChainElement::operator-() const {
  ChainElement r = *this;
  for (auto& [label, c] : r.terms_) c = -c;
  return r;
}

bool ChainElement::operator==(const ChainElement& other) const {
  if (terms_.empty() || other.terms_.empty()) return terms_.empty() && other.terms_.empty();
  return terms_ == other.terms_;
}

std::string ChainElement::toString() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [label, c] : terms_) {
    if (!first) out += " + ";
    first = false;
    out += c.get_str();
    out += '*';
    out += label.toString();
  }
  return out;
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  ChainElement run() {
    skip();
    if (pos_ < s_.size() && s_[pos_] == '0') {
      std::size_t save = pos_;
      ++pos_;
      skip();
      if (pos_ == s_.size()) return ChainElement();
      pos_ = save;
    }
    ChainElement out;
    bool first = true;
    while (true) {
      skip();
      if (pos_ == s_.size()) break;
      int sign = 1;
      bool sawSign = false;
      while (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) {
        if (s_[pos_] == '-') sign = -sign;
        sawSign = true;
        ++pos_;
        skip();
      }
      if (!first && !sawSign) fail("expected '+' or '-'");
      Integer coeff = 1;
      if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        coeff = Integer(readDigits());
        skip();
        if (pos_ < s_.size() && s_[pos_] == '*') {
          ++pos_;
          skip();
        }
      }
      BasisLabel label = readLabel();
      out.addTerm(label, sign * coeff);
      first = false;
    }
    if (first) fail("empty chain");
    return out;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw InvalidInput("cannot parse chain '" + std::string(s_) + "' at offset " +
                       std::to_string(pos_) + ": " + what);
  }

  std::string readDigits() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected digits");
    return std::string(s_.substr(start, pos_ - start));
  }

  BasisLabel readLabel() {
    if (pos_ >= s_.size() || s_[pos_] != '[') fail("expected '['");
    ++pos_;
    std::vector<int> f;
    while (true) {
      skip();
      std::string digits = readDigits();
      if (digits.size() > 6) fail("label entry too large");
      f.push_back(std::stoi(digits));
      skip();
      if (pos_ < s_.size() && s_[pos_] == ',') {
        ++pos_;
        continue;
      }
      if (pos_ < s_.size() && s_[pos_] == ']') {
        ++pos_;
        break;
      }
      fail("expected ',' or ']'");
    }
    return BasisLabel(std::move(f));
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

ChainElement ChainElement::parse(std::string_view text) { return Parser(text).run(); }

ChainElement tensorProduct(const ChainElement& a, const ChainElement& b) {
  ChainElement out(a.degree() + b.degree());
  for (const auto& [la, ca] : a.terms())
    for (const auto& [lb, cb] : b.terms()) out.addTerm(concat(la, lb), ca * cb);
  return out;
}

int permutationSign(const BasisLabel& label, std::span<const int> perm) {
  // Output position i holds input slot perm[i]; a pair of input slots a < b
  // that appear in reversed order contributes deg(a)*deg(b).
  long parity = 0;
  for (std::size_t i = 0; i < perm.size(); ++i)
    for (std::size_t j = i + 1; j < perm.size(); ++j)
      if (perm[i] > perm[j]) parity += static_cast<long>(label.factors[perm[i]]) * label.factors[perm[j]];
  return (parity & 1) ? -1 : 1;
}

ChainElement permuteSlotsWithSign(const ChainElement& x, std::span<const int> perm) {
  ChainElement out(x.degree());
  std::vector<char> seen(perm.size(), 0);
  for (int p : perm) {
    if (p < 0 || static_cast<std::size_t>(p) >= perm.size() || seen[p])
      throw InvalidInput("slot permutation is not a bijection");
    seen[p] = 1;
  }
  for (const auto& [label, c] : x.terms()) {
    if (label.slotCount() != perm.size())
      throw InvalidInput("slot permutation arity does not match label " + label.toString());
    std::vector<int> f(perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) f[i] = label.factors[perm[i]];
    out.addTerm(BasisLabel(std::move(f)), permutationSign(label, perm) * c);
  }
  return out;
}

ChainElement reduceMod(const ChainElement& x, unsigned long p) {
  ChainElement out(x.degree());
  Integer m(p);
  for (const auto& [label, c] : x.terms()) {
    Integer r = c % m;
    if (r < 0) r += m;
    out.addTerm(label, r);
  }
  return out;
}

// ---------------------------------------------------------------------------
// ChainComplex

ChainComplex::ChainComplex(int slotCount, int maxDegree,
                           std::vector<std::vector<BasisLabel>> basisByDegree,
                           const DifferentialFn& differential, int minDegree)
    : slotCount_(slotCount), minDegree_(minDegree), maxDegree_(maxDegree) {
  if (minDegree < 0 || maxDegree < minDegree - 1)
    throw InvalidInput("bad degree window for chain complex");
  const std::size_t width = static_cast<std::size_t>(maxDegree - minDegree + 1);
  if (basisByDegree.size() != width)
    throw InvalidInput("basis list does not match the degree window");
  basis_ = std::move(basisByDegree);
  differential_.resize(width);
  for (std::size_t w = 0; w < width; ++w) {
    auto& b = basis_[w];
    std::sort(b.begin(), b.end());
    if (std::adjacent_find(b.begin(), b.end()) != b.end())
      throw InvalidInput("duplicate basis label in degree " + std::to_string(minDegree + int(w)));
    for (const auto& label : b) {
      if (label.slotCount() != static_cast<std::size_t>(slotCount) ||
          label.degree() != minDegree + static_cast<int>(w))
        throw InvalidInput("basis label " + label.toString() + " misplaced");
    }
    differential_[w].reserve(b.size());
    for (const auto& label : b) {
      ChainElement d = differential(label);
      if (!d.isZero() && d.degree() != label.degree() - 1)
        throw InvalidInput("differential of " + label.toString() + " has wrong degree");
      differential_[w].push_back(std::move(d));
    }
  }
}

ChainComplex ChainComplex::onePoint(int maxDegree) {
  std::vector<std::vector<BasisLabel>> basis(maxDegree + 1);
  basis[0].push_back(BasisLabel{0});
  return ChainComplex(1, maxDegree, std::move(basis),
                      [](const BasisLabel&) { return ChainElement(-1); });
}

std::span<const BasisLabel> ChainComplex::basis(int k) const {
  if (k < minDegree_ || k > maxDegree_) return {};
  return basis_[k - minDegree_];
}

std::size_t ChainComplex::totalRank() const {
  std::size_t n = 0;
  for (const auto& b : basis_) n += b.size();
  return n;
}

std::optional<std::size_t> ChainComplex::indexOf(const BasisLabel& label) const {
  const int k = label.degree();
  if (k < minDegree_ || k > maxDegree_) return std::nullopt;
  const auto& b = basis_[k - minDegree_];
  auto it = std::lower_bound(b.begin(), b.end(), label);
  if (it == b.end() || *it != label) return std::nullopt;
  return static_cast<std::size_t>(it - b.begin());
}

const ChainElement& ChainComplex::differential(const BasisLabel& label) const {
  auto idx = indexOf(label);
  if (!idx) throw InvalidInput("label " + label.toString() + " is not a basis element of the complex");
  return differential_[label.degree() - minDegree_][*idx];
}

ChainElement ChainComplex::boundary(const ChainElement& x) const {
  ChainElement out(x.degree() - 1);
  for (const auto& [label, c] : x.terms()) {
    const ChainElement& d = differential(label);
    for (const auto& [l2, c2] : d.terms()) out.addTerm(l2, c * c2);
  }
  return out;
}

std::optional<BasisLabel> ChainComplex::squareZeroViolation() const {
  for (int k = minDegree_ + 1; k <= maxDegree_; ++k) {
    for (const auto& label : basis(k)) {
      const ChainElement& d = differential(label);
      if (k - 1 == minDegree_) {
        // d lands in the bottom of the window; d(d) is outside and unknown.
        continue;
      }
      if (!boundary(d).isZero()) return label;
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Tensor products

namespace {

void enumerateLabels(std::span<const ChainComplex* const> factors, std::size_t slot, int remaining,
                     std::vector<int>& current, std::vector<BasisLabel>& out) {
  if (slot == factors.size()) {
    if (remaining == 0) out.emplace_back(current);
    return;
  }
  const ChainComplex& f = *factors[slot];
  const int upto = std::min(remaining, f.maxDegree());
  for (int d = 0; d <= upto; ++d) {
    for (const auto& lab : f.basis(d)) {
      current.insert(current.end(), lab.factors.begin(), lab.factors.end());
      enumerateLabels(factors, slot + 1, remaining - d, current, out);
      current.resize(current.size() - lab.factors.size());
    }
  }
}

}  // namespace

ChainComplex tensorFactors(std::span<const ChainComplex* const> factors, int lo, int hi) {
  if (factors.empty()) throw InvalidInput("empty tensor product");
  int slots = 0;
  std::vector<int> offset;
  for (const ChainComplex* f : factors) {
    if (f->minDegree() != 0) throw InvalidInput("tensor factors must start in degree 0");
    if (f->maxDegree() < hi) throw InvalidInput("tensor factor truncated below requested degree");
    offset.push_back(slots);
    slots += f->slotCount();
  }
  offset.push_back(slots);

  std::vector<std::vector<BasisLabel>> basis(static_cast<std::size_t>(hi - lo + 1));
  std::vector<int> current;
  for (int k = lo; k <= hi; ++k) enumerateLabels(factors, 0, k, current, basis[k - lo]);

  auto diff = [&](const BasisLabel& label) {
    ChainElement out(label.degree() - 1);
    int prefixDegree = 0;
    for (std::size_t i = 0; i < factors.size(); ++i) {
      BasisLabel part(std::vector<int>(label.factors.begin() + offset[i],
                                       label.factors.begin() + offset[i + 1]));
      const int sign = (prefixDegree & 1) ? -1 : 1;
      const ChainElement& dPart = factors[i]->differential(part);
      for (const auto& [l2, c2] : dPart.terms()) {
        std::vector<int> f = label.factors;
        std::copy(l2.factors.begin(), l2.factors.end(), f.begin() + offset[i]);
        out.addTerm(BasisLabel(std::move(f)), sign * c2);
      }
      prefixDegree += part.degree();
    }
    return out;
  };
  return ChainComplex(slots, hi, std::move(basis), diff, lo);
}

ChainComplex tensor(const ChainComplex& a, const ChainComplex& b) {
  const ChainComplex* fs[2] = {&a, &b};
  return tensorFactors(fs, 0, std::min(a.maxDegree(), b.maxDegree()));
}

// ---------------------------------------------------------------------------
// Chain maps

ChainElement ChainMapData::operator()(const ChainElement& x) const {
  ChainElement out(x.degree() + degreeShift);
  for (const auto& [label, c] : x.terms()) {
    ChainElement v = onLabel(label);
    for (const auto& [l2, c2] : v.terms()) out.addTerm(l2, c * c2);
  }
  return out;
}

std::map<BasisLabel, ChainElement> ChainMapData::values(int upToDegree) const {
  std::map<BasisLabel, ChainElement> out;
  for (int k = source->minDegree(); k <= std::min(upToDegree, source->maxDegree()); ++k)
    for (const auto& label : source->basis(k)) out.emplace(label, onLabel(label));
  return out;
}

ChainMapData compose(const ChainMapData& g, const ChainMapData& f) {
  if (f.target->slotCount() != g.source->slotCount())
    throw InvalidInput("cannot compose chain maps with mismatched slot counts");
  ChainMapData out;
  out.source = f.source;
  out.target = g.target;
  out.degreeShift = f.degreeShift + g.degreeShift;
  out.onLabel = [g, f](const BasisLabel& label) { return g(f(label)); };
  return out;
}

ChainMapData identityMap(std::shared_ptr<const ChainComplex> complex) {
  ChainMapData out;
  out.source = complex;
  out.target = complex;
  out.onLabel = [](const BasisLabel& label) { return ChainElement::single(label); };
  return out;
}

ChainMapData zeroMap(std::shared_ptr<const ChainComplex> source,
                     std::shared_ptr<const ChainComplex> target) {
  ChainMapData out;
  out.source = std::move(source);
  out.target = std::move(target);
  out.onLabel = [](const BasisLabel& label) { return ChainElement(label.degree()); };
  return out;
}

ChainMapData reduceMod(const ChainMapData& f, unsigned long p) {
  ChainMapData out = f;
  out.onLabel = [f, p](const BasisLabel& label) { return reduceMod(f(label), p); };
  return out;
}

std::optional<BasisLabel> chainMapViolation(const ChainMapData& f, int upToDegree) {
  if (upToDegree > f.source->maxDegree() || upToDegree + f.degreeShift > f.target->maxDegree())
    throw InvalidInput("verifyChainMap: degree " + std::to_string(upToDegree) +
                       " exceeds the construction bound of the complexes");
  for (int k = std::max(1, f.source->minDegree() + 1); k <= upToDegree; ++k) {
    for (const auto& label : f.source->basis(k)) {
      ChainElement lhs = f.target->boundary(f(label));
      ChainElement rhs = f(f.source->differential(label));
      if (!(lhs == rhs)) return label;
    }
  }
  return std::nullopt;
}

bool verifyChainMap(const ChainMapData& f, int upToDegree) {
  return !chainMapViolation(f, upToDegree).has_value();
}

}  // namespace tcs
