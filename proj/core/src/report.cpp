#include "tcs/report.hpp"

#include "tcs/binary_arith.hpp"
#include "tcs/errors.hpp"
#include "tcs/smith.hpp"

namespace tcs {

std::string toString(DivisorReading r) { return r == DivisorReading::Prime ? "prime" : "literal-s"; }

DivisorReading parseDivisorReading(const std::string& text) {
  if (text == "prime") return DivisorReading::Prime;
  if (text == "literal-s") return DivisorReading::LiteralS;
  throw InvalidInput("divisor reading must be 'prime' or 'literal-s', got '" + text + "'");
}

namespace {

enum class Family { Z2Orientable, Z2Nonorientable, OddPrimeOrientable, CyclicOrientable, Free, FreeTimesCyclic,
                    OtherWithClass, Uncovered };

Family classify(const ManifoldDescriptor& m) {
  const auto& o = m.group.orders;
  const std::size_t r = m.group.freeRank();
  if (o.size() == 1 && o[0] == 2) return m.orientable ? Family::Z2Orientable : Family::Z2Nonorientable;
  if (!m.orientable) return Family::Uncovered;
  if (o.size() == 1 && o[0] > 2) return isPrime(o[0]) ? Family::OddPrimeOrientable : Family::CyclicOrientable;
  if (r == o.size() && r > 0) return Family::Free;
  if (r + 1 == o.size() && o.back() != 0 && r > 0) return Family::FreeTimesCyclic;
  if (m.fundamentalClass) return Family::OtherWithClass;
  return Family::Uncovered;
}

std::string familyName(Family f) {
  switch (f) {
    case Family::Z2Orientable: return "orientable, fundamental group Z_2";
    case Family::Z2Nonorientable: return "non-orientable, fundamental group Z_2";
    case Family::OddPrimeOrientable: return "orientable, fundamental group Z_p, p odd prime";
    case Family::CyclicOrientable: return "orientable, cyclic fundamental group";
    case Family::Free: return "orientable, free abelian fundamental group";
    case Family::FreeTimesCyclic: return "orientable, fundamental group Z^r x Z_q";
    case Family::OtherWithClass: return "orientable, supplied fundamental class";
    case Family::Uncovered: return "not covered";
  }
  return "not covered";
}

FundamentalClassSpec classFor(const ManifoldDescriptor& m) {
  if (m.fundamentalClass) return FundamentalClassSpec{m.group, m.n, *m.fundamentalClass};
  return FundamentalClassSpec::standard(m.group, m.n);
}

void setUpperFromVerdict(BoundLine& line, std::int64_t sn, Conclusion c, const std::string& key,
                         const std::string& method) {
  if (c == Conclusion::NonMaximal) {
    line.upper = sn - 1;
    line.upperCitation = key;
    line.upperSource = "live";
  } else if (c == Conclusion::Maximal) {
    line.lower = sn;
    line.lowerCitation = "obstruction-nonzero-maximal";
    line.upperSource = "trivial";
  } else {
    line.notes.push_back("obstruction module inconclusive: " + method);
  }
}

}  // namespace

BoundReport reportBounds(const ManifoldDescriptor& m, int sLo, int sHi, const ReportOptions& options) {
  if (m.n < 2) throw InvalidInput("manifold dimension must be at least 2");
  if (sLo < 2 || sHi < sLo) throw InvalidInput("s range must satisfy 2 <= from <= to");
  BoundReport rep;
  rep.manifold = m;
  const Family fam = classify(m);
  // H_n(Z_q; Z) = 0 for even n > 0, so the fundamental class dies in B(Z_q).
  if ((fam == Family::Z2Orientable || fam == Family::OddPrimeOrientable || fam == Family::CyclicOrientable) &&
      m.n % 2 == 0 && m.catEqualsDim)
    throw InvalidInput("an orientable manifold with finite cyclic fundamental group and even dimension has "
                       "cat < dim; use cat-equals-dim = false");
  rep.family = familyName(fam);
  rep.theoremApplies = fam != Family::Uncovered && fam != Family::OtherWithClass;
  const int n = m.n;

  for (int s = sLo; s <= sHi; ++s) {
    const std::int64_t sn = std::int64_t{s} * n;
    BoundLine line;
    line.s = s;
    line.lower = 0;
    line.lowerCitation = "trivial";
    line.upper = sn;
    line.upperCitation = "dimension-upper-bound";
    line.upperSource = "trivial";
    const bool live = s <= options.maxLiveS;

    switch (fam) {
      case Family::Z2Orientable:
      case Family::CyclicOrientable:
      case Family::OddPrimeOrientable: {
        if (live) {
          ObstructionVerdict v = decideOrientable(classFor(m), s, options.decide);
          setUpperFromVerdict(line, sn, v.conclusion, "cyclic-obstruction-vanishes", v.method);
        } else {
          line.upper = sn - 1;
          line.upperCitation = "cyclic-obstruction-vanishes";
          line.upperSource = "cited";
        }
        if (!m.catEqualsDim) {
          line.notes.push_back("lower bounds need cat = dim");
          break;
        }
        if (fam == Family::Z2Orientable && s >= 3) {
          line.lower = davisZcl(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(s));
          line.lowerCitation = "projective-zcl-pullback";
        } else if (fam == Family::OddPrimeOrientable) {
          const unsigned p = static_cast<unsigned>(m.group.orders[0]);
          const int k = (n - 1) / 2;
          LensBound lb = lensLowerBound(p, k, s);
          line.lens = lb;
          line.lower = lb.value;
          line.lowerCitation = "lens-weighted-zcl-bound";
          line.notes.push_back("divisor reading: p does not divide C(l+l', l)");
          if (options.reading == DivisorReading::LiteralS) {
            Integer power;
            mpz_pow_ui(power.get_mpz_t(), binomBig(static_cast<unsigned long>(k), static_cast<unsigned long>(k)).get_mpz_t(),
                       static_cast<unsigned long>(s / 2));
            if (!mpz_divisible_ui_p(power.get_mpz_t(), static_cast<unsigned long>(s))) {
              line.lower = sn - 1;
              line.lowerCitation = "lens-exact-value";
              line.notes.push_back("divisor reading: s does not divide C(2k, k)^{floor(s/2)}");
            }
          }
        }
        break;
      }
      case Family::Z2Nonorientable: {
        if (n % 2 != 0) {
          line.notes.push_back("twisted obstruction needs even dimension");
        } else {
          const auto spec = s % 2 == 0 ? std::optional(DComplexSpec::fromDimension(n, s)) : std::nullopt;
          if (!spec) {
            line.notes.push_back("odd s: twisted obstruction method inapplicable");
          } else if (spec->inTheoremScope()) {
            // the parity certificate is cheap at every s in scope, so this always runs
            NonorientVerdict v = decideNonorientable(*spec, options.nonorient);
            setUpperFromVerdict(line, sn, v.conclusion, "z2-twisted-obstruction-vanishes", v.note);
          }
        }
        if (m.catEqualsDim && s >= 3) {
          const std::int64_t z = davisZcl(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(s));
          if (z > line.lower) {
            line.lower = z;
            line.lowerCitation = "projective-zcl-pullback";
          }
        } else if (!m.catEqualsDim) {
          line.notes.push_back("lower bounds need cat = dim");
        }
        break;
      }
      case Family::Free: {
        const int r = static_cast<int>(m.group.freeRank());
        if (sn > std::int64_t{s - 1} * r) {
          if (live && n >= r) {
            ObstructionVerdict v = decideOrientable(classFor(m), s, options.decide);
            setUpperFromVerdict(line, sn, v.conclusion, "free-abelian-obstruction-vanishes", v.method);
          } else {
            // H_{sn} of the (s-1)-fold torus model vanishes: no basis in that degree
            line.upper = sn - 1;
            line.upperCitation = "free-abelian-obstruction-vanishes";
            line.upperSource = "cited";
          }
        } else {
          line.notes.push_back("sn <= (s-1) r: free abelian criterion does not apply");
        }
        break;
      }
      case Family::FreeTimesCyclic: {
        const int r = static_cast<int>(m.group.freeRank());
        if (r >= n) {
          line.notes.push_back("r >= n: free-times-cyclic criterion does not apply");
        } else if (live) {
          FreeTimesCyclicResult res = freeTimesCyclicVanishing(r, m.group.orders.back(), n, s, MonomialChoice::SumOfAll);
          if (res.allZero()) {
            line.upper = sn - 1;
            line.upperCitation = "free-times-cyclic-obstruction-vanishes";
            line.upperSource = "live";
          } else {
            line.notes.push_back("obstruction chain did not vanish");
          }
        } else {
          line.upper = sn - 1;
          line.upperCitation = "free-times-cyclic-obstruction-vanishes";
          line.upperSource = "cited";
        }
        break;
      }
      case Family::OtherWithClass: {
        if (live) {
          ObstructionVerdict v = decideOrientable(classFor(m), s, options.decide);
          setUpperFromVerdict(line, sn, v.conclusion, "orientable-obstruction-criterion", v.method);
        }
        line.notes.push_back("raw obstruction verdict; no family theorem applies");
        break;
      }
      case Family::Uncovered:
        line.notes.push_back("no theorem applies");
        break;
    }

    if (line.lower > line.upper) throw Error("internal: lower bound exceeds upper bound at s = " + std::to_string(s));
    if (line.lower == line.upper) {
      line.exact = line.lower;
      if (line.lowerCitation == "obstruction-nonzero-maximal") {
        line.exactCitation = "obstruction-nonzero-maximal";
      } else if (fam == Family::Z2Orientable) {
        line.exactCitation = "z2-orientable-exact";
      } else if (fam == Family::OddPrimeOrientable) {
        line.exactCitation = "lens-exact-value";
      } else if (fam == Family::Z2Nonorientable) {
        line.exactCitation = line.upper == sn ? "z2-maximal-from-zcl" : "z2-nonorientable-exact";
      } else {
        line.exactCitation = line.lowerCitation + " + " + line.upperCitation;
      }
    }
    rep.lines.push_back(std::move(line));
  }
  return rep;
}

}  // namespace tcs
