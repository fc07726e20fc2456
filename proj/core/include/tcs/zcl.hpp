#pragma once

// F_p cohomology rings of projective and lens spaces, their tensor powers,
// zero-divisor cup-length search, and the closed-form bounds built on them.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tcs {

enum class RingFamily { Projective, Lens };

/// Projective: F_2[x]/(x^{n+1}), |x| = 1. Lens: F_p[x,y]/(x^2, y^{n+1}),
/// |x| = 1, |y| = 2. In both cases the per-slot basis index equals the degree
/// (lens index 2b+e is x^e y^b).
struct GradedRingSpec {
  RingFamily family = RingFamily::Projective;
  unsigned p = 2;
  int n = 0;

  static GradedRingSpec projective(int n);
  static GradedRingSpec lens(unsigned p, int n);

  int slotDimension() const;
  int topDegree() const;
  /// Product of basis elements i and j of one slot, or -1 when it vanishes.
  int slotProduct(int i, int j) const;
  std::string toString() const;
};

/// Dense coefficient table over all multi-indices of the s slots.
struct RingElement {
  std::vector<std::uint8_t> coeffs;
  bool isZero() const;
  bool operator==(const RingElement&) const = default;
};

class TensorPowerRing {
 public:
  static constexpr std::size_t kMaxEntries = std::size_t{1} << 24;

  /// Throws BudgetExceeded when slotDimension^s exceeds kMaxEntries.
  TensorPowerRing(GradedRingSpec spec, int s);

  const GradedRingSpec& spec() const { return spec_; }
  int s() const { return s_; }
  std::size_t dimension() const { return dim_; }
  int topDegree() const { return s_ * spec_.topDegree(); }

  std::vector<int> slots(std::size_t index) const;
  std::size_t indexOf(const std::vector<int>& slots) const;
  int degreeOf(std::size_t index) const;
  /// Degree when every nonzero term has the same degree.
  std::optional<int> homogeneousDegree(const RingElement& u) const;

  RingElement zero() const;
  RingElement one() const;
  RingElement monomial(const std::vector<int>& slots, unsigned coeff = 1) const;
  /// 1 (x) ... (x) b (x) ... (x) 1 with b in the given slot.
  RingElement slotGenerator(int slot, int basisIndex) const;

  RingElement add(const RingElement& a, const RingElement& b) const;
  RingElement scale(const RingElement& a, unsigned c) const;
  RingElement multiply(const RingElement& a, const RingElement& b) const;

  /// s-fold cup product into the base ring, as a coefficient vector indexed
  /// by the per-slot basis.
  std::vector<unsigned> cupImage(const RingElement& u) const;
  bool isZeroDivisor(const RingElement& u) const;

  std::string format(const RingElement& u) const;

 private:
  GradedRingSpec spec_;
  int s_;
  std::size_t dim_;
  std::vector<std::size_t> stride_;
};

struct PoolElement {
  RingElement element;
  int degree = 0;
  std::string label;
};

/// Degree-1 slot sums over subsets whose size is divisible by p, differences
/// x_i - x_j when p is odd, and degree-2 monomials that are zero divisors
/// alone or differences of two degree-2 monomials with the same cup image.
std::vector<PoolElement> defaultPool(const TensorPowerRing& ring);

struct ZclSearchResult {
  int bestLength = 0;
  std::vector<int> exponents;  // one per pool element
  std::uint64_t nodes = 0;
  bool budgetHit = false;
};

/// Depth-first search over exponent vectors of the pool, larger exponents of
/// earlier pool elements first, stopping once targetLength is reached. The
/// witness is the first maximal vector in that order; the result does not
/// depend on the thread count. Throws InvalidInput for an empty pool or a pool
/// element that is not a homogeneous zero divisor. budget bounds the node
/// count of each top-level branch.
ZclSearchResult searchZclLower(const TensorPowerRing& ring, const std::vector<PoolElement>& pool,
                               int targetLength, std::uint64_t budget = 20'000'000, unsigned threads = 1);

/// Re-multiplies the witness in reverse order and checks every factor.
bool validateWitness(const TensorPowerRing& ring, const std::vector<PoolElement>& pool,
                     const std::vector<int>& exponents);

/// Basis (echelon form over F_p) of the zero divisors of one degree.
std::vector<RingElement> zeroDivisorBasis(const TensorPowerRing& ring, int degree);

/// Exact zero-divisor cup length through the powers of the zero-divisor
/// ideal. Throws BudgetExceeded above 100 ring dimensions.
int exhaustiveZclTiny(const GradedRingSpec& spec, int s);

/// s*n - m_{n,s}. Throws InvalidInput for s < 3.
std::int64_t davisZcl(std::uint64_t n, std::uint64_t s);

struct LensBound {
  std::int64_t value = 0;
  int ell = 0;
  int ellPrime = 0;
};

/// Best bound over 0 <= l, l' <= n with p not dividing C(l+l', l):
/// s(l+l'+1)-1 for even s and (s-1)(l+l')+s+2n-1 for odd s. Ties go to the
/// lexicographically least (l, l'). Throws InvalidInput unless p is an odd
/// prime.
LensBound lensLowerBound(unsigned p, int n, int s);

}  // namespace tcs
