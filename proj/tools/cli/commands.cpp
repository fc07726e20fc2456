#include "cli/commands.hpp"

#include <chrono>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "cli/selftest.hpp"
#include "tcs/binary_arith.hpp"
#include "tcs/digest.hpp"
#include "tcs/errors.hpp"
#include "tcs/nonorient.hpp"
#include "tcs/orientable.hpp"
#include "tcs/parallel.hpp"
#include "tcs/report.hpp"
#include "tcs/zcl.hpp"

namespace tcs::cli {

using nlohmann::json;

namespace {

struct JobSpec {
  std::string format = "json";
  std::string group;
  int dim = 0;
  int s = 0;
  std::string cls;
  int r = 0;
  bool oracle = false;
  std::string pool = "default";
  std::uint64_t budget = 0;  // 0: the command's default
  unsigned threads = 1;
  std::string ring = "projective";
  unsigned prime = 3;
  int target = 0;
  std::string orientation = "orientable";
  std::string catEqualsDim = "true";
  std::string primeReading = "prime";
  std::string sRange;
  long corruptAlpha = 0;
  std::string jobs;
};

struct Result {
  json input = json::object();
  json payload = json::object();
  std::vector<std::string> citations;
  std::vector<std::vector<std::string>> table;
  std::vector<std::string> text;
  json timing;  // not covered by the digest
  int exitCode = 0;
};

std::string verdictText(Conclusion c, int s, std::int64_t sn) {
  switch (c) {
    case Conclusion::NonMaximal: return "TC_" + std::to_string(s) + " < " + std::to_string(sn);
    case Conclusion::Maximal: return "TC_" + std::to_string(s) + " = " + std::to_string(sn);
    case Conclusion::Inconclusive: break;
  }
  return "undetermined";
}

std::string familyCitation(const GroupSpec& g) {
  const std::size_t r = g.freeRank();
  if (r == 0 && g.orders.size() == 1) return "cyclic-obstruction-vanishes";
  if (r == g.orders.size()) return "free-abelian-obstruction-vanishes";
  if (r + 1 == g.orders.size() && g.orders.back() != 0) return "free-times-cyclic-obstruction-vanishes";
  return "";
}

Result runDecide(const JobSpec& j) {
  Result res;
  const GroupSpec g = GroupSpec::parse(j.group);
  if (j.dim < 2) throw InvalidInput("--dim must be at least 2");
  if (j.s < 2) throw InvalidInput("--s must be at least 2");
  FundamentalClassSpec f = j.cls.empty() ? FundamentalClassSpec::standard(g, j.dim)
                                         : FundamentalClassSpec{g, j.dim, ChainElement::parse(j.cls)};
  DecideOptions opt;
  if (j.budget) opt.maxTargetRank = j.budget;
  res.input = {{"group", g.toString()}, {"dim", j.dim}, {"s", j.s}, {"class", f.chain.toString()}};
  ObstructionVerdict v = decideOrientable(f, j.s, opt);
  const std::int64_t sn = std::int64_t{j.s} * j.dim;
  json& p = res.payload;
  p["obstruction"] = v.obstruction.toString();
  p["obstruction_terms"] = v.obstruction.size();
  p["status"] = toString(v.status);
  p["conclusion"] = toString(v.conclusion);
  p["verdict"] = verdictText(v.conclusion, j.s, sn);
  p["method"] = v.method;
  if (v.preimage) p["preimage"] = v.preimage->toString();
  if (v.witnessPrime) {
    p["witness_prime"] = *v.witnessPrime;
    p["obstruction_mod_p"] = reduceMod(v.obstruction, *v.witnessPrime).toString();
  }
  if (!v.residue.empty()) {
    json residue = json::array();
    for (const auto& [i, c] : v.residue) residue.push_back({{"index", i}, {"value", c.get_str()}});
    p["smith_residue"] = residue;
  }
  if (v.conclusion == Conclusion::NonMaximal) {
    res.citations.push_back("orientable-obstruction-criterion");
    if (auto fam = familyCitation(g); !fam.empty()) res.citations.push_back(fam);
  } else if (v.conclusion == Conclusion::Maximal) {
    res.citations.push_back("obstruction-nonzero-maximal");
    if (v.witnessPrime) res.citations.push_back("universal-coefficients");
    if (g == GroupSpec::parse("Z_3 x Z_3")) res.citations.push_back("z3xz3-example");
  }
  res.table = {{"group", "dim", "s", "status", "conclusion", "verdict"},
               {g.toString(), std::to_string(j.dim), std::to_string(j.s), toString(v.status), toString(v.conclusion),
                p["verdict"].get<std::string>()}};
  res.text = {g.toString() + ", dim " + std::to_string(j.dim) + ", s = " + std::to_string(j.s) + ": " +
                  p["verdict"].get<std::string>(),
              "status: " + toString(v.status) + " (" + v.method + ")", "obstruction: " + v.obstruction.toString()};
  return res;
}

Result runNonorient(const JobSpec& j) {
  Result res;
  if (j.r == 0 && j.dim == 0) throw InvalidInput("nonorient needs --r or --dim");
  if (j.r != 0 && j.dim != 0) throw InvalidInput("give only one of --r and --dim");
  const DComplexSpec spec = j.r ? DComplexSpec::fromR(j.r, j.s) : DComplexSpec::fromDimension(j.dim, j.s);
  NonorientOptions opt;
  opt.oracle = j.oracle;
  if (j.budget) opt.budget = j.budget;
  res.input = {{"dim", spec.n}, {"s", spec.s}, {"oracle", j.oracle}};
  if (spec.r) res.input["r"] = *spec.r;
  NonorientVerdict v = decideNonorientable(spec, opt);
  const std::int64_t sn = std::int64_t{spec.s} * spec.n;
  json& p = res.payload;
  p["in_theorem_scope"] = v.inTheoremScope;
  p["torsion"] = {{"holds", v.torsionHolds}, {"computed", v.torsionComputed}, {"method", v.torsionMethod}};
  json cert = {{"holds", v.certificate.holds},
               {"reachable_states", v.certificate.reachableStates},
               {"parity_table_sha256", v.certificate.parityTableDigest}};
  if (v.certificate.counterexample)
    cert["counterexample"] = {{"deltas", v.certificate.counterexample->first}, {"ps", v.certificate.counterexample->second}};
  p["certificate"] = cert;
  p["term_count"] = v.termCount.get_str();
  json oracle = {{"ran", v.oracleRan}};
  if (!v.oracleSkipReason.empty()) oracle["skip_reason"] = v.oracleSkipReason;
  if (v.oracleRan) {
    oracle["aggregate"] = v.aggregate.toString();
    oracle["aggregate_is_boundary"] = v.aggregateIsBoundary.value_or(false);
    if (v.aggregatePreimage) oracle["preimage"] = v.aggregatePreimage->toString();
    if (v.rewritten) oracle["rewritten"] = v.rewritten->toString();
    oracle["rewrite_verified"] = v.rewriteVerified.value_or(false);
    oracle["matches_direct_composite"] = chiSTwisted(spec) == v.aggregate;
  }
  p["oracle"] = oracle;
  p["conclusion"] = toString(v.conclusion);
  p["verdict"] = verdictText(v.conclusion, spec.s, sn);
  p["note"] = v.note;
  if (v.conclusion == Conclusion::NonMaximal)
    res.citations = {"z2-twisted-obstruction-vanishes", "binomial-parity-certificate", "twisted-homology-is-torsion",
                     "odd-generators-span-torsion-free"};
  res.table = {{"dim", "s", "certificate", "torsion", "oracle_boundary", "verdict"},
               {std::to_string(spec.n), std::to_string(spec.s), v.certificate.holds ? "holds" : "fails",
                v.torsionHolds ? "holds" : "fails",
                v.oracleRan ? (v.aggregateIsBoundary.value_or(false) ? "yes" : "no") : "skipped",
                p["verdict"].get<std::string>()}};
  res.text = {"non-orientable, Z_2, dim " + std::to_string(spec.n) + ", s = " + std::to_string(spec.s) + ": " +
                  p["verdict"].get<std::string>(),
              std::string("parity certificate: ") + (v.certificate.holds ? "holds" : "fails") + " (" +
                  std::to_string(v.certificate.reachableStates) + " reachable states)",
              "torsion: " + v.torsionMethod, "note: " + v.note};
  if (v.oracleRan)
    res.text.push_back(std::string("oracle: aggregate is ") + (v.aggregateIsBoundary.value_or(false) ? "" : "not ") +
                       "a boundary; rewrite " + (v.rewriteVerified.value_or(false) ? "verified" : "not verified"));
  return res;
}

Result runZcl(const JobSpec& j) {
  Result res;
  if (j.s < 2) throw InvalidInput("--s must be at least 2");
  GradedRingSpec spec;
  if (j.ring == "projective") {
    spec = GradedRingSpec::projective(j.dim);
  } else {
    if (j.dim % 2 == 0) throw InvalidInput("lens spaces have odd dimension");
    spec = GradedRingSpec::lens(j.prime, (j.dim - 1) / 2);
  }
  res.input = {{"ring", spec.toString()}, {"dim", j.dim}, {"s", j.s}, {"pool", j.pool}};
  json& p = res.payload;
  std::optional<std::int64_t> closedForm;
  if (spec.family == RingFamily::Projective && j.s >= 3) {
    closedForm = davisZcl(static_cast<std::uint64_t>(j.dim), static_cast<std::uint64_t>(j.s));
    p["closed_form"] = *closedForm;
  }
  if (spec.family == RingFamily::Lens) {
    const LensBound lb = lensLowerBound(spec.p, spec.n, j.s);
    p["lens_bound"] = {{"value", lb.value}, {"ell", lb.ell}, {"ell_prime", lb.ellPrime}};
    res.citations.push_back("lens-weighted-zcl-bound");
  }
  if (j.pool == "exhaustive") {
    const int exact = exhaustiveZclTiny(spec, j.s);
    p["best_length"] = exact;
    p["exact"] = true;
    res.text.push_back("zcl_" + std::to_string(j.s) + " = " + std::to_string(exact) + " (exhaustive)");
  } else {
    TensorPowerRing ring(spec, j.s);
    const auto pool = defaultPool(ring);
    const int target = j.target ? j.target : static_cast<int>(closedForm.value_or(ring.topDegree()));
    ZclSearchResult sr = searchZclLower(ring, pool, target, j.budget ? j.budget : 20'000'000, j.threads);
    p["best_length"] = sr.bestLength;
    p["exact"] = false;
    p["pool_size"] = pool.size();
    p["nodes"] = sr.nodes;
    p["budget_hit"] = sr.budgetHit;
    json witness = json::array();
    for (std::size_t k = 0; k < pool.size(); ++k)
      if (sr.exponents[k]) witness.push_back({{"factor", pool[k].label}, {"exponent", sr.exponents[k]}});
    p["witness"] = witness;
    p["witness_valid"] = validateWitness(ring, pool, sr.exponents);
    if (closedForm) p["pool_limited"] = sr.bestLength < *closedForm;
    res.text.push_back("zcl_" + std::to_string(j.s) + " >= " + std::to_string(sr.bestLength) + " (pool search, " +
                       std::to_string(pool.size()) + " pool elements)");
  }
  if (closedForm) {
    res.citations.push_back("davis-projective-zcl");
    res.text.push_back("closed form: " + std::to_string(*closedForm));
  }
  if (p.contains("lens_bound")) res.text.push_back("lens bound: " + p["lens_bound"]["value"].dump());
  res.table = {{"ring", "s", "best_length", "closed_form"},
               {spec.toString(), std::to_string(j.s), p["best_length"].dump(),
                closedForm ? std::to_string(*closedForm) : "-"}};
  return res;
}

std::pair<int, int> parseRange(const std::string& text) {
  const auto dash = text.find_first_of("-:");
  try {
    if (dash == std::string::npos) {
      const int v = std::stoi(text);
      return {v, v};
    }
    std::size_t end = dash + 1;
    if (text[dash] == '-' || text[dash] == ':') return {std::stoi(text.substr(0, dash)), std::stoi(text.substr(end))};
  } catch (const std::exception&) {
  }
  throw InvalidInput("--s-range must look like 2-8");
}

Result runReport(const JobSpec& j) {
  Result res;
  ManifoldDescriptor m;
  m.group = GroupSpec::parse(j.group);
  m.n = j.dim;
  if (j.orientation != "orientable" && j.orientation != "nonorientable")
    throw InvalidInput("--orientation must be orientable or nonorientable");
  m.orientable = j.orientation == "orientable";
  if (j.catEqualsDim != "true" && j.catEqualsDim != "false") throw InvalidInput("--cat-equals-dim must be true or false");
  m.catEqualsDim = j.catEqualsDim == "true";
  if (!j.cls.empty()) m.fundamentalClass = ChainElement::parse(j.cls);
  auto [lo, hi] = j.s ? std::make_pair(j.s, j.s) : parseRange(j.sRange.empty() ? "2-8" : j.sRange);
  ReportOptions opt;
  opt.reading = parseDivisorReading(j.primeReading);
  BoundReport rep = reportBounds(m, lo, hi, opt);
  res.input = {{"group", m.group.toString()}, {"dim", m.n}, {"orientable", m.orientable},
               {"cat_equals_dim", m.catEqualsDim}, {"s_from", lo}, {"s_to", hi},
               {"prime_reading", toString(opt.reading)}};
  if (m.fundamentalClass) res.input["class"] = m.fundamentalClass->toString();
  json lines = json::array();
  res.table.push_back({"s", "lower", "upper", "exact", "citations"});
  std::set<std::string> cites;
  for (const auto& l : rep.lines) {
    json row = {{"s", l.s},
                {"lower", l.lower},
                {"upper", l.upper},
                {"exact", l.exact ? json(*l.exact) : json(nullptr)},
                {"lower_citation", l.lowerCitation},
                {"upper_citation", l.upperCitation},
                {"upper_source", l.upperSource},
                {"notes", l.notes}};
    if (l.exact) row["exact_citation"] = l.exactCitation;
    if (l.lens) row["lens"] = {{"ell", l.lens->ell}, {"ell_prime", l.lens->ellPrime}};
    lines.push_back(row);
    std::string citation = "lower:" + l.lowerCitation + ";upper:" + l.upperCitation;
    if (l.exact) citation += ";exact:" + l.exactCitation;
    res.table.push_back({std::to_string(l.s), std::to_string(l.lower), std::to_string(l.upper),
                         l.exact ? std::to_string(*l.exact) : "-", citation});
    std::string line = "s = " + std::to_string(l.s) + ": ";
    line += l.exact ? "TC_" + std::to_string(l.s) + " = " + std::to_string(*l.exact) + "  [" + l.exactCitation + "]"
                    : std::to_string(l.lower) + " <= TC_" + std::to_string(l.s) + " <= " + std::to_string(l.upper) +
                          "  [" + l.lowerCitation + " / " + l.upperCitation + "]";
    for (const auto& note : l.notes) line += "; " + note;
    res.text.push_back(line);
    for (const auto& c : {l.lowerCitation, l.upperCitation, l.exactCitation})
      if (!c.empty() && c != "trivial") cites.insert(c);
  }
  res.payload = {{"family", rep.family}, {"theorem_applies", rep.theoremApplies}, {"lines", lines}};
  if (!rep.theoremApplies) res.payload["marker"] = "no theorem applies";
  res.citations.assign(cites.begin(), cites.end());
  res.text.insert(res.text.begin(), rep.family + ", dim " + std::to_string(m.n));
  return res;
}

Result runSelftestJob(const JobSpec& j, bool corrupt) {
  Result res;
  SelftestOptions opt;
  opt.threads = j.threads;
  if (corrupt) opt.corruptOddOdd = j.corruptAlpha;
  res.input = json::object();
  if (corrupt) res.input["corrupt_alpha"] = j.corruptAlpha;
  SelftestReport rep = runSelftest(opt);
  json criteria = json::array();
  json timing = json::array();
  res.table.push_back({"id", "pass", "title", "detail", "digest"});
  auto add = [&](const CriterionOutcome& c) {
    criteria.push_back({{"id", c.id}, {"title", c.title}, {"pass", c.pass}, {"digest", c.digest},
                        {"limit_ms", c.limitMillis}});
    timing.push_back({{"id", c.id}, {"ms", c.millis}, {"detail", c.detail}});
    res.table.push_back({std::to_string(c.id), c.pass ? "PASS" : "FAIL", c.title, c.detail, c.digest});
    res.text.push_back(formatLine(c));
  };
  add(rep.preflight);
  for (const auto& c : rep.criteria) add(c);
  res.payload = {{"criteria", criteria}, {"all_pass", rep.allPass()}};
  res.timing = timing;
  res.text.push_back(rep.allPass() ? "selftest: all criteria pass" : "selftest: FAILURES");
  res.exitCode = rep.allPass() ? 0 : 1;
  return res;
}

std::string render(const Result& res, const json& envelope, const std::string& format, bool compact) {
  if (format == "json") return envelope.dump(compact ? -1 : 2);
  std::ostringstream out;
  if (format == "tsv") {
    for (const auto& row : res.table) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "\t" : "") << row[i];
      out << '\n';
    }
  } else {
    for (const auto& line : res.text) out << line << '\n';
    if (!res.citations.empty()) {
      out << "citations:";
      for (const auto& c : res.citations) out << ' ' << c;
      out << '\n';
    }
  }
  std::string s = out.str();
  if (!s.empty() && s.back() == '\n') s.pop_back();
  return s;
}

void addCommon(CLI::App* sub, JobSpec& j) {
  sub->add_option("--format", j.format, "Output format")->check(CLI::IsMember({"json", "tsv", "text"}));
  sub->add_option("--threads", j.threads, "Worker threads")->check(CLI::Range(1u, 256u));
  sub->add_option("--budget", j.budget, "Size budget (command specific)");
}

}  // namespace

JobOutcome runJob(const std::vector<std::string>& args, bool compact) {
  JobSpec j;
  CLI::App app{"tcs: exact obstruction and bound computations for higher topological complexity", "tcs"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  auto* decide = app.add_subcommand("decide", "Orientable obstruction verdict");
  decide->add_option("--group", j.group, "Group, e.g. \"Z_3 x Z_3\"")->required();
  decide->add_option("--dim", j.dim, "Manifold dimension")->required();
  decide->add_option("--s", j.s, "s >= 2")->required();
  decide->add_option("--class", j.cls, "Fundamental class cycle, e.g. \"[0,5]+[5,0]\"");
  addCommon(decide, j);

  auto* nonorient = app.add_subcommand("nonorient", "Non-orientable Z_2 verdict for even s");
  auto* rOpt = nonorient->add_option("--r", j.r, "n = 2^(r+1) - 2");
  nonorient->add_option("--dim", j.dim, "Even manifold dimension")->excludes(rOpt);
  nonorient->add_option("--s", j.s, "Even s")->required();
  nonorient->add_flag("--oracle", j.oracle, "Also solve for an integral boundary");
  addCommon(nonorient, j);

  auto* zcl = app.add_subcommand("zcl", "Zero-divisor cup length of projective or lens spaces");
  zcl->add_option("--dim", j.dim, "Dimension of the space")->required();
  zcl->add_option("--s", j.s, "s >= 2")->required();
  zcl->add_option("--pool", j.pool, "default or exhaustive")->check(CLI::IsMember({"default", "exhaustive"}));
  zcl->add_option("--ring", j.ring, "projective or lens")->check(CLI::IsMember({"projective", "lens"}));
  zcl->add_option("--prime", j.prime, "Odd prime for lens spaces");
  zcl->add_option("--target", j.target, "Stop once this length is reached");
  addCommon(zcl, j);

  auto* report = app.add_subcommand("report", "Bounds on TC_s for a manifold family");
  report->add_option("--group", j.group, "Fundamental group")->required();
  report->add_option("--dim", j.dim, "Manifold dimension")->required();
  report->add_option("--orientation", j.orientation, "orientable or nonorientable");
  report->add_option("--cat-equals-dim", j.catEqualsDim, "true or false");
  auto* sOpt = report->add_option("--s", j.s, "Single s");
  report->add_option("--s-range", j.sRange, "Range such as 2-8")->excludes(sOpt);
  report->add_option("--class", j.cls, "Fundamental class cycle");
  report->add_option("--prime-reading", j.primeReading, "prime or literal-s");
  addCommon(report, j);

  auto* selftest = app.add_subcommand("selftest", "Run every acceptance criterion");
  auto* corruptOpt = selftest->add_option("--corrupt-alpha", j.corruptAlpha, "Replace the odd-odd diagonal coefficient");
  addCommon(selftest, j);

  JobOutcome out;
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out.output = app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help();
    return out;
  } catch (const CLI::CallForAllHelp&) {
    out.output = app.help("", CLI::AppFormatMode::All);
    return out;
  } catch (const CLI::ParseError& e) {
    out.exitCode = static_cast<int>(ExitCode::Error);
    out.error = e.what();
    return out;
  }

  const CLI::App* sub = app.get_subcommands().front();
  const std::string command = sub->get_name();
  const auto t0 = std::chrono::steady_clock::now();
  Result res;
  try {
    if (command == "decide") res = runDecide(j);
    else if (command == "nonorient") res = runNonorient(j);
    else if (command == "zcl") res = runZcl(j);
    else if (command == "report") res = runReport(j);
    else res = runSelftestJob(j, corruptOpt->count() > 0);
  } catch (const MethodInapplicable& e) {
    res = Result{};
    res.input = {{"args", args}};
    res.payload = {{"inapplicable", e.what()}};
    res.text = {std::string("method inapplicable: ") + e.what()};
    res.table = {{"inapplicable"}, {e.what()}};
    res.exitCode = static_cast<int>(ExitCode::Inapplicable);
  } catch (const std::exception& e) {
    out.exitCode = static_cast<int>(ExitCode::Error);
    out.error = std::string("error: ") + e.what();
    out.envelope = {{"tool", "tcs"}, {"version", kToolVersion}, {"command", command}, {"error", e.what()},
                    {"exit_code", out.exitCode}};
    return out;
  }
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();

  json canonical = {{"command", command}, {"input", res.input}, {"payload", res.payload}, {"citations", res.citations}};
  json env = canonical;
  env["tool"] = "tcs";
  env["version"] = kToolVersion;
  env["digest"] = sha256Hex(canonical.dump());
  env["wall_time_ms"] = ms;
  env["exit_code"] = res.exitCode;
  if (!res.timing.is_null()) env["timing"] = res.timing;
  out.exitCode = res.exitCode;
  out.envelope = env;
  out.output = render(res, env, j.format, compact);
  return out;
}

std::vector<std::vector<std::string>> readJobFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open job file " + path);
  std::vector<std::vector<std::string>> jobs;
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream tokens(line);
    std::vector<std::string> job;
    for (std::string tok; tokens >> std::quoted(tok);) job.push_back(tok);
    jobs.push_back(std::move(job));
  }
  return jobs;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args(argv + 1, argv + argc);
  // batch mode: tcs --jobs FILE [--threads N]
  if (!args.empty() && (args[0] == "--jobs" || args[0].rfind("--jobs=", 0) == 0)) {
    CLI::App app{"tcs batch mode", "tcs"};
    std::string file;
    unsigned threads = 1;
    app.add_option("--jobs", file, "Batch file, one job per line")->required();
    app.add_option("--threads", threads, "Jobs run concurrently")->check(CLI::Range(1u, 256u));
    try {
      app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
      return app.exit(e, out, err) == 0 ? 0 : 1;
    }
    std::vector<std::vector<std::string>> jobs;
    try {
      jobs = readJobFile(file);
    } catch (const std::exception& e) {
      err << "error: " << e.what() << '\n';
      return 1;
    }
    auto outcomes = parallelMap(jobs.size(), threads, [&](std::size_t i) { return runJob(jobs[i], true); });
    int code = 0;
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
      const auto& o = outcomes[i];
      if (!o.output.empty()) {
        out << o.output << '\n';
      } else {
        json e = {{"job", i + 1}, {"error", o.error}, {"exit_code", o.exitCode}};
        out << e.dump() << '\n';
      }
      if (!o.error.empty()) err << "job " << i + 1 << ": " << o.error << '\n';
      if (o.exitCode == 1) code = 1;
      else if (o.exitCode == 2 && code == 0) code = 2;
    }
    return code;
  }
  JobOutcome o = runJob(args);
  if (!o.output.empty()) out << o.output << '\n';
  if (!o.error.empty()) err << o.error << '\n';
  return o.exitCode;
}

}  // namespace tcs::cli
