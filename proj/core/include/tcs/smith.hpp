#pragma once

// Smith normal form of sparse integer matrices with recorded unimodular
// transformations, plus a small sparse elimination engine over F_p.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "tcs/chain.hpp"

namespace tcs {

struct SparseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::map<std::pair<std::size_t, std::size_t>, Integer> entries;  // zero entries absent

  void add(std::size_t i, std::size_t j, const Integer& value);
  Integer at(std::size_t i, std::size_t j) const;
};

using DenseMatrix = std::vector<std::vector<Integer>>;

/// One elementary unimodular operation on two rows (or two columns).
///   Add:     line[a] += c * line[b]
///   Negate:  line[a] = -line[a]
///   Combine: (line[a], line[b]) <- (x*line[a] + y*line[b], u*line[a] + v*line[b]),
///            with x*v - y*u = 1.
struct UnimodularOp {
  enum class Kind { Add, Negate, Combine };
  Kind kind = Kind::Add;
  std::size_t a = 0;
  std::size_t b = 0;
  Integer x, y, u, v;  // Add uses x as c
};

/// U * A * V = D, where D has the entry diagonal[t] at pivots[t] and zeros
/// elsewhere. U is the product of rowOps (applied first to last), V of colOps.
/// diagonal is positive and satisfies diagonal[t] | diagonal[t+1].
struct SmithCertificate {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Integer> diagonal;
  std::vector<std::pair<std::size_t, std::size_t>> pivots;
  std::vector<UnimodularOp> rowOps;
  std::vector<UnimodularOp> colOps;

  std::size_t rank() const { return diagonal.size(); }

  /// v <- U v (v has length rows).
  void applyLeft(std::vector<Integer>& v) const;
  /// w <- V w (w has length cols).
  void applyRight(std::vector<Integer>& w) const;

  /// Explicit matrices, for verification on small instances.
  DenseMatrix leftMatrix() const;
  DenseMatrix rightMatrix() const;
  DenseMatrix leftInverse() const;
  DenseMatrix rightInverse() const;

  bool divisibilityChainHolds() const;
};

/// Fraction-free Smith normal form. Pivots are chosen by minimal absolute value,
/// then minimal Markowitz fill estimate, then lowest (row, column).
SmithCertificate smithNormalForm(const SparseMatrix& a);

/// Result of solving A x = b over the integers through a certificate.
struct IntegerSolve {
  std::optional<std::vector<Integer>> solution;
  /// Components of U b that obstruct a solution, as (index in U b, value mod
  /// the diagonal entry or the raw value outside the pivot rows). Empty iff
  /// solution is present.
  std::vector<std::pair<std::size_t, Integer>> residue;
};

IntegerSolve solveInteger(const SmithCertificate& cert, const std::vector<Integer>& b);

DenseMatrix toDense(const SparseMatrix& a);
DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix identityMatrix(std::size_t n);

/// Incremental row echelon basis of a subspace of F_p^dim, for sparse vectors.
class ModPEchelon {
 public:
  using Vector = std::map<std::size_t, std::uint64_t>;

  explicit ModPEchelon(std::uint64_t p);

  std::uint64_t modulus() const { return p_; }
  std::size_t rank() const { return pivots_.size(); }

  /// Reduces v against the basis; returns the reduced remainder.
  Vector reduce(Vector v) const;
  /// Adds v to the span; returns true when it increased the rank.
  bool insert(Vector v);
  bool contains(const Vector& v) const { return reduce(v).empty(); }

  static Vector fromInteger(const std::map<std::size_t, Integer>& v, std::uint64_t p);

 private:
  std::uint64_t p_;
  std::map<std::size_t, Vector> pivots_;  // leading index -> normalized row (leading 1)
};

/// Rank over F_p of a sparse integer matrix.
std::size_t rankModP(const SparseMatrix& a, std::uint64_t p);

bool isPrime(std::uint64_t n);

}  // namespace tcs
