#include "tcs/smith.hpp"

#include <algorithm>
#include <tuple>

#include "tcs/errors.hpp"

namespace tcs {

__extension__ typedef unsigned __int128 u128;

void SparseMatrix::add(std::size_t i, std::size_t j, const Integer& value) {
  if (i >= rows || j >= cols) throw InvalidInput("sparse matrix index out of range");
  if (value == 0) return;
  auto [it, inserted] = entries.try_emplace({i, j}, value);
  if (!inserted) {
    it->second += value;
    if (it->second == 0) entries.erase(it);
  }
}

Integer SparseMatrix::at(std::size_t i, std::size_t j) const {
  auto it = entries.find({i, j});
  return it == entries.end() ? Integer(0) : it->second;
}

namespace {

using Line = std::map<std::size_t, Integer>;

// A matrix stored twice, by rows and by columns, so that both row and column
// operations only touch the affected entries.
class Workspace {
 public:
  explicit Workspace(const SparseMatrix& a) : rows_(a.rows), cols_(a.cols) {
    for (const auto& [ij, v] : a.entries) {
      rows_[ij.first][ij.second] = v;
      cols_[ij.second][ij.first] = v;
    }
  }

  std::vector<Line>& rows() { return rows_; }
  std::vector<Line>& cols() { return cols_; }

  Integer value(std::size_t i, std::size_t j) const {
    auto it = rows_[i].find(j);
    return it == rows_[i].end() ? Integer(0) : it->second;
  }

  // Line operations; byRow selects whether the lines are rows or columns.
  void add(bool byRow, std::size_t a, std::size_t b, const Integer& c) {
    auto& P = byRow ? rows_ : cols_;
    auto& X = byRow ? cols_ : rows_;
    const Line src = P[b];
    for (const auto& [k, vb] : src) {
      auto it = P[a].find(k);
      Integer nv = (it == P[a].end() ? Integer(0) : it->second) + c * vb;
      set(P, X, a, k, nv);
    }
  }

  void negate(bool byRow, std::size_t a) {
    auto& P = byRow ? rows_ : cols_;
    auto& X = byRow ? cols_ : rows_;
    for (auto& [k, v] : P[a]) {
      v = -v;
      X[k][a] = v;
    }
  }

  void combine(bool byRow, std::size_t a, std::size_t b, const Integer& x, const Integer& y,
               const Integer& u, const Integer& v) {
    auto& P = byRow ? rows_ : cols_;
    auto& X = byRow ? cols_ : rows_;
    const Line la = P[a];
    const Line lb = P[b];
    std::vector<std::size_t> keys;
    for (const auto& [k, val] : la) keys.push_back(k);
    for (const auto& [k, val] : lb) keys.push_back(k);
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    for (std::size_t k : keys) {
      auto ia = la.find(k);
      auto ib = lb.find(k);
      Integer va = ia == la.end() ? Integer(0) : ia->second;
      Integer vb = ib == lb.end() ? Integer(0) : ib->second;
      set(P, X, a, k, x * va + y * vb);
      set(P, X, b, k, u * va + v * vb);
    }
  }

 private:
  static void set(std::vector<Line>& P, std::vector<Line>& X, std::size_t a, std::size_t k,
                  const Integer& value) {
    if (value == 0) {
      P[a].erase(k);
      X[k].erase(a);
    } else {
      P[a][k] = value;
      X[k][a] = value;
    }
  }

  std::vector<Line> rows_;
  std::vector<Line> cols_;
};

struct Recorder {
  Workspace& ws;
  SmithCertificate& cert;

  void add(bool byRow, std::size_t a, std::size_t b, const Integer& c) {
    if (c == 0) return;
    ws.add(byRow, a, b, c);
    UnimodularOp op;
    op.kind = UnimodularOp::Kind::Add;
    op.a = a;
    op.b = b;
    op.x = c;
    (byRow ? cert.rowOps : cert.colOps).push_back(std::move(op));
  }

  void negate(bool byRow, std::size_t a) {
    ws.negate(byRow, a);
    UnimodularOp op;
    op.kind = UnimodularOp::Kind::Negate;
    op.a = a;
    (byRow ? cert.rowOps : cert.colOps).push_back(std::move(op));
  }

  void combine(bool byRow, std::size_t a, std::size_t b, const Integer& x, const Integer& y,
               const Integer& u, const Integer& v) {
    ws.combine(byRow, a, b, x, y, u, v);
    UnimodularOp op;
    op.kind = UnimodularOp::Kind::Combine;
    op.a = a;
    op.b = b;
    op.x = x;
    op.y = y;
    op.u = u;
    op.v = v;
    (byRow ? cert.rowOps : cert.colOps).push_back(std::move(op));
  }
};

// Clears the pivot's row (byRow=false: column ops) or column (byRow=true: row
// ops). Returns true if the pivot value changed.
bool clearLine(Recorder& rec, std::size_t pi, std::size_t pj, bool byRow) {
  Workspace& ws = rec.ws;
  bool changed = false;
  std::vector<std::size_t> others;
  if (byRow) {
    for (const auto& [r, v] : ws.cols()[pj])
      if (r != pi) others.push_back(r);
  } else {
    for (const auto& [c, v] : ws.rows()[pi])
      if (c != pj) others.push_back(c);
  }
  for (std::size_t o : others) {
    Integer p = ws.value(pi, pj);
    Integer a = byRow ? ws.value(o, pj) : ws.value(pi, o);
    if (a == 0) continue;
    const std::size_t pivotLine = byRow ? pi : pj;
    if (mpz_divisible_p(a.get_mpz_t(), p.get_mpz_t())) {
      Integer q = a / p;
      rec.add(byRow, o, pivotLine, -q);
    } else {
      Integer g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), p.get_mpz_t(), a.get_mpz_t());
      Integer u = -a / g;
      Integer v = p / g;
      rec.combine(byRow, pivotLine, o, s, t, u, v);
      changed = true;
    }
  }
  return changed;
}

}  // namespace

SmithCertificate smithNormalForm(const SparseMatrix& a) {
  SmithCertificate cert;
  cert.rows = a.rows;
  cert.cols = a.cols;
  Workspace ws(a);
  Recorder rec{ws, cert};
  std::vector<char> colDone(a.cols, 0);

  while (true) {
    bool found = false;
    Integer bestAbs;
    std::size_t bestCost = 0, bi = 0, bj = 0;
    for (std::size_t j = 0; j < a.cols; ++j) {
      if (colDone[j]) continue;
      const auto& col = ws.cols()[j];
      if (col.empty()) continue;
      for (const auto& [i, v] : col) {
        Integer av = abs(v);
        std::size_t cost = (ws.rows()[i].size() - 1) * (col.size() - 1);
        if (!found || av < bestAbs || (av == bestAbs && cost < bestCost)) {
          found = true;
          bestAbs = av;
          bestCost = cost;
          bi = i;
          bj = j;
        }
      }
      if (found && bestAbs == 1 && bestCost == 0) break;
    }
    if (!found) break;

    while (true) {
      bool c1 = clearLine(rec, bi, bj, true);
      bool c2 = clearLine(rec, bi, bj, false);
      if (!c1 && !c2 && ws.cols()[bj].size() == 1 && ws.rows()[bi].size() == 1) break;
    }
    if (ws.value(bi, bj) < 0) rec.negate(true, bi);
    cert.pivots.emplace_back(bi, bj);
    cert.diagonal.push_back(ws.value(bi, bj));
    colDone[bj] = 1;
  }

  // Order pivots by value (a relabeling only), then enforce d_t | d_u for
  // t < u using 2x2 moves on the pivot positions.
  const std::size_t r = cert.diagonal.size();
  {
    std::vector<std::size_t> order(r);
    for (std::size_t t = 0; t < r; ++t) order[t] = t;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t l, std::size_t rr) {
      return cert.diagonal[l] < cert.diagonal[rr];
    });
    std::vector<Integer> d;
    std::vector<std::pair<std::size_t, std::size_t>> pv;
    for (std::size_t t : order) {
      d.push_back(cert.diagonal[t]);
      pv.push_back(cert.pivots[t]);
    }
    cert.diagonal = std::move(d);
    cert.pivots = std::move(pv);
  }
  for (std::size_t t = 0; t < r; ++t) {
    for (std::size_t u = t + 1; u < r; ++u) {
      Integer& dt = cert.diagonal[t];
      Integer& du = cert.diagonal[u];
      if (mpz_divisible_p(du.get_mpz_t(), dt.get_mpz_t())) continue;
      auto [r1, c1] = cert.pivots[t];
      auto [r2, c2] = cert.pivots[u];
      Integer A = dt, B = du, g, x, y;
      mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), A.get_mpz_t(), B.get_mpz_t());
      rec.add(false, c1, c2, 1);
      rec.combine(true, r1, r2, x, y, -B / g, A / g);
      rec.add(false, c2, c1, -(y * B / g));
      dt = ws.value(r1, c1);
      du = ws.value(r2, c2);
      if (dt != g || du != A * B / g || ws.rows()[r1].size() != 1 || ws.rows()[r2].size() != 1)
        throw Error("internal: Smith divisibility repair failed");
    }
  }
  if (!cert.divisibilityChainHolds()) throw Error("internal: Smith divisibility chain violated");
  return cert;
}

void SmithCertificate::applyLeft(std::vector<Integer>& v) const {
  if (v.size() != rows) throw InvalidInput("applyLeft: vector length mismatch");
  for (const auto& op : rowOps) {
    switch (op.kind) {
      case UnimodularOp::Kind::Add:
        v[op.a] += op.x * v[op.b];
        break;
      case UnimodularOp::Kind::Negate:
        v[op.a] = -v[op.a];
        break;
      case UnimodularOp::Kind::Combine: {
        Integer va = v[op.a], vb = v[op.b];
        v[op.a] = op.x * va + op.y * vb;
        v[op.b] = op.u * va + op.v * vb;
        break;
      }
    }
  }
}

void SmithCertificate::applyRight(std::vector<Integer>& w) const {
  if (w.size() != cols) throw InvalidInput("applyRight: vector length mismatch");
  for (auto it = colOps.rbegin(); it != colOps.rend(); ++it) {
    const auto& op = *it;
    switch (op.kind) {
      case UnimodularOp::Kind::Add:
        w[op.b] += op.x * w[op.a];
        break;
      case UnimodularOp::Kind::Negate:
        w[op.a] = -w[op.a];
        break;
      case UnimodularOp::Kind::Combine: {
        Integer wa = w[op.a], wb = w[op.b];
        w[op.a] = op.x * wa + op.u * wb;
        w[op.b] = op.y * wa + op.v * wb;
        break;
      }
    }
  }
}

namespace {

DenseMatrix columnsToMatrix(std::size_t n, const std::function<void(std::vector<Integer>&)>& apply) {
  DenseMatrix m(n, std::vector<Integer>(n));
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<Integer> e(n);
    e[k] = 1;
    apply(e);
    for (std::size_t i = 0; i < n; ++i) m[i][k] = e[i];
  }
  return m;
}

}  // namespace

DenseMatrix SmithCertificate::leftMatrix() const {
  return columnsToMatrix(rows, [this](std::vector<Integer>& v) { applyLeft(v); });
}

DenseMatrix SmithCertificate::rightMatrix() const {
  return columnsToMatrix(cols, [this](std::vector<Integer>& w) { applyRight(w); });
}

DenseMatrix SmithCertificate::leftInverse() const {
  return columnsToMatrix(rows, [this](std::vector<Integer>& v) {
    for (auto it = rowOps.rbegin(); it != rowOps.rend(); ++it) {
      const auto& op = *it;
      switch (op.kind) {
        case UnimodularOp::Kind::Add:
          v[op.a] -= op.x * v[op.b];
          break;
        case UnimodularOp::Kind::Negate:
          v[op.a] = -v[op.a];
          break;
        case UnimodularOp::Kind::Combine: {
          Integer va = v[op.a], vb = v[op.b];
          v[op.a] = op.v * va - op.y * vb;
          v[op.b] = -op.u * va + op.x * vb;
          break;
        }
      }
    }
  });
}

DenseMatrix SmithCertificate::rightInverse() const {
  return columnsToMatrix(cols, [this](std::vector<Integer>& w) {
    for (const auto& op : colOps) {
      switch (op.kind) {
        case UnimodularOp::Kind::Add:
          w[op.b] -= op.x * w[op.a];
          break;
        case UnimodularOp::Kind::Negate:
          w[op.a] = -w[op.a];
          break;
        case UnimodularOp::Kind::Combine: {
          Integer wa = w[op.a], wb = w[op.b];
          w[op.a] = op.v * wa - op.u * wb;
          w[op.b] = -op.y * wa + op.x * wb;
          break;
        }
      }
    }
  });
}

bool SmithCertificate::divisibilityChainHolds() const {
  for (std::size_t t = 0; t < diagonal.size(); ++t) {
    if (diagonal[t] <= 0) return false;
    if (t + 1 < diagonal.size() &&
        !mpz_divisible_p(diagonal[t + 1].get_mpz_t(), diagonal[t].get_mpz_t()))
      return false;
  }
  return true;
}

IntegerSolve solveInteger(const SmithCertificate& cert, const std::vector<Integer>& b) {
  std::vector<Integer> y = b;
  cert.applyLeft(y);
  IntegerSolve out;
  std::vector<char> pivotRow(cert.rows, 0);
  std::vector<Integer> w(cert.cols);
  for (std::size_t t = 0; t < cert.rank(); ++t) {
    auto [i, j] = cert.pivots[t];
    pivotRow[i] = 1;
    const Integer& d = cert.diagonal[t];
    if (mpz_divisible_p(y[i].get_mpz_t(), d.get_mpz_t())) {
      w[j] = y[i] / d;
    } else {
      Integer r = y[i] % d;
      if (r < 0) r += d;
      out.residue.emplace_back(i, r);
    }
  }
  for (std::size_t i = 0; i < cert.rows; ++i)
    if (!pivotRow[i] && y[i] != 0) out.residue.emplace_back(i, y[i]);
  std::sort(out.residue.begin(), out.residue.end(),
            [](const auto& l, const auto& r) { return l.first < r.first; });
  if (out.residue.empty()) {
    cert.applyRight(w);
    out.solution = std::move(w);
  }
  return out;
}

DenseMatrix toDense(const SparseMatrix& a) {
  DenseMatrix m(a.rows, std::vector<Integer>(a.cols));
  for (const auto& [ij, v] : a.entries) m[ij.first][ij.second] = v;
  return m;
}

DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b) {
  const std::size_t n = a.size();
  const std::size_t k = b.size();
  const std::size_t m = k ? b[0].size() : 0;
  DenseMatrix c(n, std::vector<Integer>(m));
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].size() != k) throw InvalidInput("matrix dimension mismatch");
    for (std::size_t l = 0; l < k; ++l) {
      if (a[i][l] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
    }
  }
  return c;
}

DenseMatrix identityMatrix(std::size_t n) {
  DenseMatrix m(n, std::vector<Integer>(n));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

// ---------------------------------------------------------------------------
// F_p elimination

namespace {

std::uint64_t powMod(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
  u128 r = 1, x = b % p;
  while (e) {
    if (e & 1) r = r * x % p;
    x = x * x % p;
    e >>= 1;
  }
  return static_cast<std::uint64_t>(r);
}

std::uint64_t mulMod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % p);
}

}  // namespace

bool isPrime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

ModPEchelon::ModPEchelon(std::uint64_t p) : p_(p) {
  if (!isPrime(p)) throw InvalidInput("modulus " + std::to_string(p) + " is not prime");
}

ModPEchelon::Vector ModPEchelon::reduce(Vector v) const {
  auto it = v.begin();
  while (it != v.end()) {
    auto piv = pivots_.find(it->first);
    if (piv == pivots_.end()) {
      ++it;
      continue;
    }
    const std::uint64_t c = it->second;
    const std::size_t lead = it->first;
    for (const auto& [k, val] : piv->second) {
      std::uint64_t sub = mulMod(c, val, p_);
      auto& slot = v[k];
      slot = (slot + p_ - sub) % p_;
      if (slot == 0) v.erase(k);
    }
    it = v.upper_bound(lead);
  }
  return v;
}

bool ModPEchelon::insert(Vector v) {
  v = reduce(std::move(v));
  if (v.empty()) return false;
  const std::uint64_t inv = powMod(v.begin()->second, p_ - 2, p_);
  for (auto& [k, val] : v) val = mulMod(val, inv, p_);
  const std::size_t lead = v.begin()->first;
  pivots_.emplace(lead, std::move(v));
  return true;
}

ModPEchelon::Vector ModPEchelon::fromInteger(const std::map<std::size_t, Integer>& v,
                                              std::uint64_t p) {
  Vector out;
  Integer m(static_cast<unsigned long>(p));
  for (const auto& [k, c] : v) {
    Integer r = c % m;
    if (r < 0) r += m;
    if (r != 0) out[k] = r.get_ui();
  }
  return out;
}

std::size_t rankModP(const SparseMatrix& a, std::uint64_t p) {
  std::vector<std::map<std::size_t, Integer>> cols(a.cols);
  for (const auto& [ij, v] : a.entries) cols[ij.second][ij.first] = v;
  ModPEchelon e(p);
  for (const auto& c : cols) e.insert(ModPEchelon::fromInteger(c, p));
  return e.rank();
}

}  // namespace tcs
