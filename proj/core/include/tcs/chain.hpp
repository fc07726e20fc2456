#pragma once

// Integer chain complexes of finitely generated free modules, truncated at a
// fixed degree, together with sparse chains and degree-0 chain maps.

#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace tcs {

using Integer = mpz_class;

/// A basis element [i_1, ..., i_k] of a tensor-product complex: one degree per
/// tensor slot. Ordering is lexicographic on the tuple.
struct BasisLabel {
  std::vector<int> factors;

  BasisLabel() = default;
  BasisLabel(std::initializer_list<int> entries) : factors(entries) {}
  explicit BasisLabel(std::vector<int> entries) : factors(std::move(entries)) {}

  int degree() const;
  std::size_t slotCount() const { return factors.size(); }
  std::string toString() const;

  auto operator<=>(const BasisLabel&) const = default;
  bool operator==(const BasisLabel&) const = default;
};

/// Concatenation of two labels (the basis element a (x) b).
BasisLabel concat(const BasisLabel& a, const BasisLabel& b);

/// A homogeneous integer chain: a finite sum of coefficient * label with no
/// zero coefficients stored.
class ChainElement {
 public:
  using TermMap = std::map<BasisLabel, Integer>;

  ChainElement() = default;
  explicit ChainElement(int degree) : degree_(degree) {}

  static ChainElement single(const BasisLabel& label, const Integer& coefficient = 1);

  int degree() const { return degree_; }
  bool isZero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const TermMap& terms() const { return terms_; }
  Integer coefficient(const BasisLabel& label) const;

  /// Adds coefficient * label. Throws InvalidInput if the label's degree does
  /// not match a non-empty element's degree.
  void addTerm(const BasisLabel& label, const Integer& coefficient);

  ChainElement& operator+=(const ChainElement& other);
  ChainElement& operator-=(const ChainElement& other);
  ChainElement& operator*=(const Integer& factor);

  friend ChainElement operator+(ChainElement a, const ChainElement& b) { return a += b; }
  friend ChainElement operator-(ChainElement a, const ChainElement& b) { return a -= b; }
  friend ChainElement operator*(ChainElement a, const Integer& k) { return a *= k; }
  friend ChainElement operator*(const Integer& k, ChainElement a) { return a *= k; }
  ChainElement operator-() const;

  /// Equality of the term maps; the degree of two zero chains is not compared.
  bool operator==(const ChainElement& other) const;

  /// Canonical text form: `c*[i1,...,ik]` terms sorted by label and joined by
  /// " + ", or `0` for the zero chain.
  std::string toString() const;

  /// Parses `[i,j,...]` terms with optional integer coefficients and `+`/`-`
  /// separators, whitespace ignored (`3*[1,2] - [0,3]`, `[0,5]+[5,0]`, `0`).
  /// The canonical form produced by toString() is accepted as well.
  static ChainElement parse(std::string_view text);

 private:
  int degree_ = 0;
  TermMap terms_;
};

/// Tensor product of chains (label concatenation, coefficient product). No
/// Koszul sign is involved because the chains are multiplied in place.
ChainElement tensorProduct(const ChainElement& a, const ChainElement& b);

/// Applies a slot permutation: output slot i carries input slot perm[i]. Each
/// term picks up (-1)^(sum over inverted pairs of the product of degrees).
/// Throws InvalidInput when perm is not a permutation of the label arity.
ChainElement permuteSlotsWithSign(const ChainElement& x, std::span<const int> perm);

/// The Koszul sign of permuting one label; see permuteSlotsWithSign.
int permutationSign(const BasisLabel& label, std::span<const int> perm);

/// Coefficientwise reduction to the residues 0..p-1; zero terms are dropped.
ChainElement reduceMod(const ChainElement& x, unsigned long p);

/// A truncated chain complex with a lexicographically ordered basis in each
/// degree of [minDegree, maxDegree]. Immutable once constructed.
///
/// Complexes built with minDegree > 0 are windows: they know the basis of the
/// window's degrees only, which suffices for homology in the interior degrees.
class ChainComplex {
 public:
  using DifferentialFn = std::function<ChainElement(const BasisLabel&)>;

  /// The differential is evaluated once per basis label and stored. Labels in
  /// each degree are sorted and must be duplicate-free.
  ChainComplex(int slotCount, int maxDegree, std::vector<std::vector<BasisLabel>> basisByDegree,
               const DifferentialFn& differential, int minDegree = 0);

  /// The one-point complex: a single degree-0 label [0] and zero differential.
  static ChainComplex onePoint(int maxDegree);

  int slotCount() const { return slotCount_; }
  int maxDegree() const { return maxDegree_; }
  int minDegree() const { return minDegree_; }

  /// Basis of degree k, empty outside the stored window.
  std::span<const BasisLabel> basis(int k) const;
  std::size_t rank(int k) const { return basis(k).size(); }
  std::size_t totalRank() const;

  std::optional<std::size_t> indexOf(const BasisLabel& label) const;
  bool contains(const BasisLabel& label) const { return indexOf(label).has_value(); }

  /// Stored differential of a basis label. Throws InvalidInput for labels not
  /// in the basis.
  const ChainElement& differential(const BasisLabel& label) const;

  /// Applies the differential linearly.
  ChainElement boundary(const ChainElement& x) const;

  /// First label of degree in [minDegree+2, maxDegree] whose d(d(label)) is
  /// nonzero, or nothing when the complex is a complex.
  std::optional<BasisLabel> squareZeroViolation() const;

 private:
  int slotCount_;
  int minDegree_;
  int maxDegree_;
  std::vector<std::vector<BasisLabel>> basis_;
  std::vector<std::vector<ChainElement>> differential_;
};

/// A[0] (x) ... (x) A[k-1] with the Koszul differential
/// d(a (x) b) = da (x) b + (-1)^{|a|} a (x) db, restricted to degrees [lo, hi].
/// Factors must be built through degree hi.
ChainComplex tensorFactors(std::span<const ChainComplex* const> factors, int lo, int hi);

/// tensor(A, B), truncated at min(maxDegree(A), maxDegree(B)).
ChainComplex tensor(const ChainComplex& a, const ChainComplex& b);

/// A degree-0 chain map given by its values on basis labels.
struct ChainMapData {
  using LabelFn = std::function<ChainElement(const BasisLabel&)>;

  std::shared_ptr<const ChainComplex> source;
  std::shared_ptr<const ChainComplex> target;
  int degreeShift = 0;
  LabelFn onLabel;

  ChainElement operator()(const BasisLabel& label) const { return onLabel(label); }
  ChainElement operator()(const ChainElement& x) const;

  /// Values on every source basis label of degree <= upToDegree.
  std::map<BasisLabel, ChainElement> values(int upToDegree) const;
};

/// g o f. Requires f.target to be the same complex as g.source (not checked
/// beyond slot counts).
ChainMapData compose(const ChainMapData& g, const ChainMapData& f);

ChainMapData identityMap(std::shared_ptr<const ChainComplex> complex);
ChainMapData zeroMap(std::shared_ptr<const ChainComplex> source,
                     std::shared_ptr<const ChainComplex> target);

/// The map with every value reduced mod p.
ChainMapData reduceMod(const ChainMapData& f, unsigned long p);

/// True iff d_target(f(x)) == f(d_source(x)) for every source basis label x of
/// degree <= upToDegree. Throws InvalidInput when upToDegree exceeds what the
/// source or target was built for.
bool verifyChainMap(const ChainMapData& f, int upToDegree);

/// First basis label where verifyChainMap fails, if any.
std::optional<BasisLabel> chainMapViolation(const ChainMapData& f, int upToDegree);

}  // namespace tcs
