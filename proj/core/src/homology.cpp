#include "tcs/homology.hpp"

#include "tcs/errors.hpp"

namespace tcs {

namespace {

void requireWindow(const ChainComplex& c, int k, const char* what) {
  if (k < 0) throw InvalidInput(std::string(what) + ": negative degree");
  if (k > c.maxDegree() - 1)
    throw InvalidInput(std::string(what) + ": degree " + std::to_string(k) +
                       " needs the complex through degree " + std::to_string(k + 1) +
                       ", built only to " + std::to_string(c.maxDegree()));
  if (k != 0 && k - 1 < c.minDegree())
    throw InvalidInput(std::string(what) + ": degree " + std::to_string(k) +
                       " is outside the stored window");
}

}  // namespace

SparseMatrix boundaryMatrix(const ChainComplex& c, int k) {
  SparseMatrix m;
  m.rows = c.rank(k - 1);
  m.cols = c.rank(k);
  auto basis = c.basis(k);
  for (std::size_t j = 0; j < basis.size(); ++j) {
    const ChainElement& dj = c.differential(basis[j]);
    for (const auto& [label, coeff] : dj.terms()) {
      auto i = c.indexOf(label);
      if (!i) throw InvalidInput("boundary of " + basis[j].toString() + " leaves the basis");
      m.add(*i, j, coeff);
    }
  }
  return m;
}

std::vector<Integer> coordinates(const ChainComplex& c, int k, const ChainElement& x) {
  std::vector<Integer> v(c.rank(k));
  for (const auto& [label, coeff] : x.terms()) {
    auto i = c.indexOf(label);
    if (!i || label.degree() != k)
      throw InvalidInput("label " + label.toString() + " is not a degree-" + std::to_string(k) +
                         " basis element");
    v[*i] = coeff;
  }
  return v;
}

ChainElement fromCoordinates(const ChainComplex& c, int k, const std::vector<Integer>& v) {
  auto basis = c.basis(k);
  if (v.size() != basis.size()) throw InvalidInput("coordinate vector length mismatch");
  ChainElement x(k);
  for (std::size_t i = 0; i < v.size(); ++i) x.addTerm(basis[i], v[i]);
  return x;
}

std::string HomologyGroup::toString() const {
  if (modulus != 0) {
    if (dimension == 0) return "0";
    return "F_" + std::to_string(modulus) + "^" + std::to_string(dimension);
  }
  std::string out;
  if (freeRank > 0) out = freeRank == 1 ? "Z" : "Z^" + std::to_string(freeRank);
  for (const auto& t : torsion) {
    if (!out.empty()) out += " + ";
    out += "Z_" + t.get_str();
  }
  return out.empty() ? "0" : out;
}

bool HomologyGroup::isZero() const {
  return modulus != 0 ? dimension == 0 : freeRank == 0 && torsion.empty();
}

HomologyGroup homology(const ChainComplex& c, int k, unsigned long modulus) {
  requireWindow(c, k, "homology");
  HomologyGroup h;
  h.degree = k;
  h.modulus = modulus;
  const std::size_t dimK = c.rank(k);
  if (modulus != 0) {
    std::size_t rk = k > 0 ? rankModP(boundaryMatrix(c, k), modulus) : 0;
    std::size_t rk1 = rankModP(boundaryMatrix(c, k + 1), modulus);
    h.dimension = dimK - rk - rk1;
    return h;
  }
  std::size_t rk = k > 0 ? smithNormalForm(boundaryMatrix(c, k)).rank() : 0;
  SmithCertificate next = smithNormalForm(boundaryMatrix(c, k + 1));
  h.freeRank = dimK - rk - next.rank();
  for (const auto& d : next.diagonal)
    if (d > 1) h.torsion.push_back(d);
  return h;
}

std::size_t freeRankUpperBound(const ChainComplex& c, int k, unsigned long p) {
  return homology(c, k, p).dimension;
}

void requireCycle(const ChainComplex& c, const ChainElement& z, unsigned long p) {
  if (z.isZero() || z.degree() == 0) return;
  ChainElement dz = c.boundary(z);
  if (p != 0) dz = reduceMod(dz, p);
  if (!dz.isZero()) {
    const auto& [label, coeff] = *dz.terms().begin();
    throw InvalidInput("chain is not a cycle: its boundary has coefficient " + coeff.get_str() +
                       " on " + label.toString());
  }
}

BoundarySolve solveBoundary(const ChainComplex& c, const ChainElement& z) {
  BoundarySolve out;
  if (z.isZero()) {
    out.preimage = ChainElement(z.degree() + 1);
    return out;
  }
  const int k = z.degree();
  requireWindow(c, k, "isBoundary");
  requireCycle(c, z);
  SmithCertificate cert = smithNormalForm(boundaryMatrix(c, k + 1));
  IntegerSolve s = solveInteger(cert, coordinates(c, k, z));
  if (s.solution) {
    ChainElement x = fromCoordinates(c, k + 1, *s.solution);
    if (!(c.boundary(x) == z)) throw Error("internal: boundary preimage failed verification");
    out.preimage = std::move(x);
  } else {
    out.residue = std::move(s.residue);
  }
  return out;
}

std::optional<ChainElement> isBoundary(const ChainComplex& c, const ChainElement& z) {
  return solveBoundary(c, z).preimage;
}

bool isBoundaryModP(const ChainComplex& c, const ChainElement& z, unsigned long p) {
  ChainElement zr = reduceMod(z, p);
  if (zr.isZero()) return true;
  const int k = zr.degree();
  requireWindow(c, k, "isBoundaryModP");
  requireCycle(c, zr, p);
  ModPEchelon e(p);
  SparseMatrix m = boundaryMatrix(c, k + 1);
  std::vector<std::map<std::size_t, Integer>> cols(m.cols);
  for (const auto& [ij, v] : m.entries) cols[ij.second][ij.first] = v;
  for (const auto& col : cols) e.insert(ModPEchelon::fromInteger(col, p));
  std::map<std::size_t, Integer> target;
  auto v = coordinates(c, k, zr);
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) target[i] = v[i];
  return e.contains(ModPEchelon::fromInteger(target, p));
}

}  // namespace tcs
