#include <unistd.h>

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "deltakit/colored.hpp"
#include "deltakit/fi.hpp"
#include "deltakit/metric.hpp"
#include "deltakit/nabla.hpp"
#include "deltakit/oracle.hpp"
#include "deltakit/ordinal.hpp"
#include "deltakit/suite.hpp"

using namespace deltakit;
using pfn::LinPerPF;

namespace {

constexpr int kOk = 0;
constexpr int kViolations = 1;
constexpr int kUsage = 2;

struct Flags {
  std::string in = "-";
  std::string out = "-";
  std::string format = "human";
  bool plain = false;
  std::uint64_t seed = 42;
  Nat horizon = 4;
  Nat threshold = 0;
  Nat maxHeight = fi::kDefaultMaxHeight;
  Nat workers = std::max(1u, std::thread::hardware_concurrency());
};

// Input problems end the run with the usage status.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Json readJson(const std::string& path) {
  try {
    if (path == "-") return Json::parse(std::cin);
    std::ifstream f(path);
    if (!f) throw UsageError("cannot open " + path);
    return Json::parse(f);
  } catch (const Json::parse_error& e) {
    throw UsageError(std::string("invalid JSON in ") + path + ": " + e.what());
  }
}

// A bare descriptor or one wrapped under `key`.
const Json& unwrap(const Json& doc, const char* key) { return doc.is_object() && doc.contains(key) ? doc.at(key) : doc; }

const Json& member(const Json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) throw SchemaError(std::string("missing field \"") + key + "\"");
  return doc.at(key);
}

LinPerPF readLinPer(const Json& j) { return decodeLinPer(unwrap(j, "rep")); }

class Output {
 public:
  explicit Output(const Flags& f) : flags_(f) {}

  bool json() const { return flags_.format == "json"; }

  std::string mark(bool ok) const {
    const char* word = ok ? "PASS" : "FAIL";
    if (flags_.plain || flags_.out != "-" || !isatty(STDOUT_FILENO)) return word;
    return std::string(ok ? "\033[32m" : "\033[31m") + word + "\033[0m";
  }

  void emit(const std::string& command, Json body, const std::string& human) const {
    std::string text;
    if (json()) {
      body["schema"] = kSchemaVersion;
      body["command"] = command;
      text = body.dump(2) + "\n";
    } else {
      text = human;
    }
    if (flags_.out == "-") {
      std::cout << text << std::flush;
      return;
    }
    std::ofstream f(flags_.out, std::ios::binary);
    if (!f) throw UsageError("cannot write " + flags_.out);
    f << text;
  }

 private:
  const Flags& flags_;
};

oracle::WitnessAssignment witnessNamed(const std::string& name) {
  auto w = oracle::namedWitness(name);
  if (!w) throw UsageError("unknown witness \"" + name + "\" (constructive, fi, constant-K)");
  return *w;
}

template <typename F>
F require(const F& fn, const std::string& witness, const char* variant) {
  if (!fn) throw oracle::WitnessUndefined("witness " + witness + " is not defined for " + variant);
  return fn;
}

// ---- commands ----

int runDecompose(const Flags& flags, const Output& out) {
  const LinPerPF x = readLinPer(unwrap(readJson(flags.in), "x"));
  const fi::FiDecomposition d = fi::fiDecompose(x, flags.maxHeight);
  std::ostringstream h;
  h << "source: " << describe(x) << "\n" << d.layers.size() << " layers\n";
  for (std::size_t i = 0; i < d.layers.size(); ++i) h << "  layer " << i << ": " << describe(d.layers[i]) << "\n";
  out.emit("decompose", {{"decomposition", fi::encode(d)}}, h.str());
  return kOk;
}

int runWitness(const Flags& flags, const Output& out) {
  const LinPerPF x = readLinPer(unwrap(readJson(flags.in), "x"));
  const LinPerPF f = fi::witnessFiF(x, flags.maxHeight);
  const Nat height = fi::height(x, flags.maxHeight);
  std::ostringstream h;
  h << "height " << height << "\nF(x) = " << describe(f) << "\n";
  out.emit("witness", {{"x", encode(x)}, {"height", height}, {"witness", encode(f)}}, h.str());
  return kOk;
}

struct DeltaRun {
  Json results = Json::array();
  Nat violations = 0;
  std::ostringstream human;

  void add(const std::string& label, const DeltaVerdict& v) {
    Json j = encode(v);
    j["pair"] = label;
    results.push_back(j);
    violations += v.violated();
    human << "  " << label << ": " << verdictLabel(v.kind) << "\n";
  }
};

const Json& pairList(const Json& doc) {
  const Json& list = unwrap(doc, "pairs");
  if (!list.is_array()) throw SchemaError("expected an array of pairs");
  return list;
}

void checkFi(const Json& doc, const oracle::WitnessAssignment& w, const Flags& flags, DeltaRun& run) {
  const Json& list = pairList(doc);
  for (std::size_t i = 0; i < list.size(); ++i) {
    const LinPerPF x = readLinPer(member(list[i], "x"));
    const LinPerPF y = readLinPer(member(list[i], "y"));
    const bool given = list[i].contains("fx") && list[i].contains("fy");
    const bool fiWitness = w.name == "constructive";
    auto F = [&](const LinPerPF& z) { return fiWitness ? fi::witnessFiF(z, flags.maxHeight) : w.linper(z); };
    const LinPerPF fx = given ? readLinPer(list[i]["fx"]) : F(x);
    const LinPerPF fy = given ? readLinPer(list[i]["fy"]) : F(y);
    run.add(std::to_string(i), fi::checkDeltaConclusion(x, y, fx, fy));
  }
}

void checkAKappa(const Json& doc, const oracle::WitnessAssignment& w, DeltaRun& run) {
  const Json& list = pairList(doc);
  for (std::size_t i = 0; i < list.size(); ++i) {
    const auto x = variants::decodeColored(member(list[i], "x"));
    const auto y = variants::decodeColored(member(list[i], "y"));
    variants::FiniteSetSeq fx, fy;
    if (list[i].contains("fx") && list[i].contains("fy")) {
      fx = variants::decodeSetSeq(list[i]["fx"]);
      fy = variants::decodeSetSeq(list[i]["fy"]);
    } else {
      auto F = require(w.colored, w.name, "a-kappa");
      fx = F(x);
      fy = F(y);
    }
    run.add(std::to_string(i), variants::checkDeltaAKappa(x, y, fx, fy));
  }
}

void checkAlpha(const Json& doc, const oracle::WitnessAssignment& w, DeltaRun& run) {
  const Json& list = pairList(doc);
  for (std::size_t i = 0; i < list.size(); ++i) {
    const auto x = variants::decodeOrdinal(member(list[i], "x"));
    const auto y = variants::decodeOrdinal(member(list[i], "y"));
    std::optional<variants::OrdinalPF> fx, fy;
    if (list[i].contains("fx") && list[i].contains("fy")) {
      fx = variants::decodeOrdinal(list[i]["fx"]);
      fy = variants::decodeOrdinal(list[i]["fy"]);
    } else {
      auto F = require(w.ordinal, w.name, "alpha");
      fx = F(x);
      fy = F(y);
    }
    run.add(std::to_string(i), variants::checkDeltaAlpha(x, y, *fx, *fy));
  }
}

void checkMetric(const Json& doc, const oracle::WitnessAssignment& w, DeltaRun& run) {
  const variants::FactorCatalog cat =
      doc.contains("catalog") ? variants::decodeCatalog(doc["catalog"]) : variants::FactorCatalog::allOmegaPlusOne();
  std::vector<variants::PointRadius> corpus;
  for (const Json& p : member(doc, "corpus"))
    corpus.push_back({variants::decodeMetricPoint(member(p, "x")), readLinPer(member(p, "f"))});
  std::vector<LinPerPF> F;
  if (doc.contains("witness")) {
    for (const Json& f : doc["witness"]) F.push_back(readLinPer(f));
    if (F.size() != corpus.size()) throw SchemaError("witness must list one radius per corpus point");
  } else {
    F = require(w.metric, w.name, "metric")(cat, corpus);
  }
  std::vector<std::pair<Nat, Nat>> pairs;
  if (doc.contains("pairs")) {
    for (const Json& p : doc["pairs"]) {
      const Nat i = readNat(p.at(0), "pair index"), j = readNat(p.at(1), "pair index");
      if (i >= corpus.size() || j >= corpus.size()) throw SchemaError("pair index outside the corpus");
      pairs.emplace_back(i, j);
    }
  } else {
    for (Nat i = 0; i < corpus.size(); ++i)
      for (Nat j = i + 1; j < corpus.size(); ++j) pairs.emplace_back(i, j);
  }
  for (auto [i, j] : pairs)
    run.add(std::to_string(i) + "," + std::to_string(j),
            variants::checkDeltaMetric(cat, corpus[i], corpus[j], F[i], F[j]));
}

int runCheckDelta(const Flags& flags, const Output& out, const std::string& variant, const std::string& pairsPath,
                  const std::string& witnessName) {
  const Json doc = readJson(pairsPath.empty() ? flags.in : pairsPath);
  const oracle::WitnessAssignment w = witnessNamed(witnessName);
  DeltaRun run;
  if (variant == "fi") checkFi(doc, w, flags, run);
  else if (variant == "a-kappa") checkAKappa(doc, w, run);
  else if (variant == "alpha") checkAlpha(doc, w, run);
  else checkMetric(doc, w, run);
  std::ostringstream h;
  h << "check-delta " << variant << " with " << w.name << ": " << run.results.size() << " pairs, " << run.violations
    << " violated\n"
    << run.human.str();
  out.emit("check-delta",
           {{"variant", variant}, {"witness", w.name}, {"results", run.results}, {"violations", run.violations}},
           h.str());
  return run.violations ? kViolations : kOk;
}

int runMeet(const Flags& flags, const Output& out) {
  const Json doc = readJson(flags.in);
  const nabla::NablaPoint x(readLinPer(member(doc, "x")));
  const nabla::NablaPoint y(readLinPer(member(doc, "y")));
  const nabla::NablaPoint z = nabla::meet(x, y);
  std::ostringstream h;
  h << "meet: " << describe(z.rep()) << "\n";
  out.emit("meet", {{"meet", encode(z)}}, h.str());
  return kOk;
}

int runNbhd(const Flags& flags, const Output& out) {
  const Json doc = readJson(flags.in);
  const nabla::Nbhd a = nabla::decodeNbhd(member(doc, "a"));
  const nabla::Nbhd b = nabla::decodeNbhd(member(doc, "b"));
  const auto [meets, from] = nabla::nbhdsIntersectFrom(a, b);
  Json body{{"intersect", meets}};
  std::ostringstream h;
  h << "neighbourhoods " << (meets ? "intersect" : "are disjoint");
  if (meets) {
    body["from"] = from;
    body["meet"] = encode(nabla::meet(a.center, b.center));
    h << " (dominated from index " << from << ")";
  }
  h << "\n";
  if (doc.contains("points")) {
    Json members = Json::array();
    for (const Json& p : doc["points"]) {
      const nabla::NablaPoint y(readLinPer(p));
      const bool inA = nabla::inNbhd(y, a), inB = nabla::inNbhd(y, b);
      members.push_back({{"in_a", inA}, {"in_b", inB}});
      h << "  " << describe(y.rep()) << ": a " << (inA ? "yes" : "no") << ", b " << (inB ? "yes" : "no") << "\n";
    }
    body["points"] = members;
  }
  out.emit("nbhd", body, h.str());
  return kOk;
}

int runSynthesize(const Flags& flags, const Output& out, const std::string& witnessName) {
  const Json doc = readJson(flags.in);
  const oracle::WitnessAssignment w = witnessNamed(witnessName);
  std::vector<nabla::NablaPoint> family;
  for (const Json& p : member(doc, "family")) family.emplace_back(readLinPer(p));
  nabla::WitnessFn F = w.name == "constructive"
                           ? nabla::WitnessFn([&](const LinPerPF& x) { return fi::witnessFiF(x, flags.maxHeight); })
                           : nabla::WitnessFn(w.linper);
  const nabla::MNOperator op = nabla::synthesizeMN(family, F);
  std::vector<nabla::MNQuery> queries;
  if (doc.contains("queries")) {
    for (const Json& q : doc["queries"]) {
      nabla::MNQuery m;
      m.i = readNat(member(q, "i"), "i");
      m.j = readNat(member(q, "j"), "j");
      if (m.i >= family.size() || m.j >= family.size()) throw SchemaError("query index outside the family");
      m.boxI = nabla::decodeNbhd(member(q, "box_i"));
      m.boxJ = nabla::decodeNbhd(member(q, "box_j"));
      queries.push_back(std::move(m));
    }
  }
  const auto violations = nabla::mnAxiomCheck(op, queries);
  Json radii = Json::array(), vs = Json::array();
  for (const LinPerPF& r : op.radii) radii.push_back(encode(r));
  for (const auto& v : violations) vs.push_back(nabla::encode(v));
  std::ostringstream h;
  h << "operator over " << family.size() << " points with " << w.name << "\n";
  for (std::size_t i = 0; i < op.radii.size(); ++i) h << "  G radius " << i << ": " << describe(op.radii[i]) << "\n";
  for (const auto& s : op.warnings) h << "  warning: " << s << "\n";
  h << queries.size() << " queries, " << violations.size() << " violations\n";
  out.emit("synthesize",
           {{"witness", w.name}, {"radii", radii}, {"warnings", op.warnings}, {"queries", queries.size()},
            {"violations", vs}},
           h.str());
  return violations.empty() ? kOk : kViolations;
}

int runVerifySuite(const Flags& flags, const Output& out, std::vector<int> ids) {
  const auto known = suite::criterionIds();
  if (ids.empty()) ids = known;
  for (int id : ids)
    if (std::find(known.begin(), known.end(), id) == known.end())
      throw UsageError("unknown criterion " + std::to_string(id));
  suite::SuiteOptions opts;
  opts.seed = flags.seed;
  opts.workers = flags.workers;
  const auto results = suite::runSuite(opts, ids);
  std::ostringstream h;
  bool all = true;
  for (const auto& r : results) {
    all = all && r.passed;
    char secs[32];
    std::snprintf(secs, sizeof secs, "%.2fs", r.seconds);
    h << "criterion " << r.id << " " << r.name << ": " << out.mark(r.passed) << " (" << r.checked << " checked, "
      << r.failures << " failures, " << secs << ")\n";
  }
  out.emit("verify-suite", suite::encodeSuite(opts, results), h.str());
  return all ? kOk : kViolations;
}

struct SearchFlags {
  std::string principle;
  std::string witness = "constructive";
  std::string mode = "exhaustive";
  Nat valueBound = 3;
  Nat budget = 1'000'000;
  Nat corpusSize = 3;
  Nat minDomain = 0;
  Nat maxDomain = ~Nat{0};
  Nat maxRecorded = 64;
};

int runSearch(const Flags& flags, const Output& out, const SearchFlags& s) {
  const auto p = oracle::parsePrinciple(s.principle);
  if (!p) throw UsageError("unknown principle \"" + s.principle + "\"");
  oracle::SearchConfig cfg;
  cfg.horizon = flags.horizon;
  cfg.threshold = flags.threshold;
  cfg.valueBound = s.valueBound;
  cfg.minDomain = s.minDomain;
  cfg.maxDomain = s.maxDomain;
  cfg.mode = s.mode == "random" ? oracle::Mode::Random : oracle::Mode::Exhaustive;
  cfg.seed = flags.seed;
  cfg.budget = s.budget;
  cfg.workers = flags.workers;
  cfg.corpusSize = s.corpusSize;
  cfg.maxRecorded = s.maxRecorded;
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const oracle::Report r = oracle::searchCounterexample(*p, witnessNamed(s.witness), cfg);
  std::ostringstream h;
  h << r.principle << " with " << r.witness << " (" << r.mode << "): " << r.checked << " checked, "
    << r.violationCount << " violations\n";
  for (std::size_t i = 0; i < std::min<std::size_t>(r.violations.size(), 5); ++i)
    h << "  " << r.violations[i].dump() << "\n";
  out.emit("search", {{"report", oracle::encode(r)}}, h.str());
  return r.clean() ? kOk : kViolations;
}

int runOracleDiff(const Flags& flags, const Output& out, Nat samples) {
  const oracle::DiffReport d = oracle::oracleDiff(flags.seed, samples, flags.workers);
  std::ostringstream h;
  h << "oracle-diff seed " << d.seed << ", " << d.samples << " samples\n";
  for (const auto& [k, n] : d.checked) h << "  " << k << ": " << n << " checked\n";
  h << d.disagreements.size() << " disagreements\n";
  out.emit("oracle-diff", {{"diff", oracle::encode(d)}}, h.str());
  return d.disagreements.empty() ? kOk : kViolations;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Partial-function calculus toolkit: decompositions, witnesses, neighbourhoods and property suites"};
  app.require_subcommand(1);
  app.fallthrough();

  Flags flags;
  app.add_option("--in", flags.in, "input JSON file, - for stdin");
  app.add_option("--out", flags.out, "output file, - for stdout");
  app.add_option("--format", flags.format, "human or json")->check(CLI::IsMember({"human", "json"}));
  app.add_flag("--plain", flags.plain, "no colour in human output");
  app.add_option("--seed", flags.seed, "run seed");
  app.add_option("--horizon", flags.horizon, "finite universe horizon N");
  app.add_option("--threshold", flags.threshold, "finite universe threshold t");
  app.add_option("--max-height", flags.maxHeight, "bound on decomposition height")->check(CLI::PositiveNumber);
  app.add_option("--workers", flags.workers, "worker threads")->check(CLI::PositiveNumber);

  auto* decompose = app.add_subcommand("decompose", "split an FI function into increasing layers");
  auto* witness = app.add_subcommand("witness", "the FI witness F(x)");

  auto* check = app.add_subcommand("check-delta", "check the Delta conclusion on pairs");
  std::string variant, pairsPath, witnessName = "constructive";
  check->add_option("variant", variant, "fi, a-kappa, alpha or metric")
      ->required()
      ->check(CLI::IsMember({"fi", "a-kappa", "alpha", "metric"}));
  check->add_option("--pairs", pairsPath, "pairs JSON (defaults to --in)");
  check->add_option("--witness", witnessName, "constructive, fi or constant-K");

  auto* meet = app.add_subcommand("meet", "greatest lower bound of two compatible points");
  auto* nbhd = app.add_subcommand("nbhd", "intersection and membership of two neighbourhoods");

  auto* synth = app.add_subcommand("synthesize", "build the normality operator on a family and check queries");
  synth->add_option("--witness", witnessName, "constructive, fi or constant-K");

  auto* verify = app.add_subcommand("verify-suite", "run the property suites");
  std::vector<int> criteria;
  verify->add_option("--criteria", criteria, "subset of criteria to run")->delimiter(',');

  auto* search = app.add_subcommand("search", "counterexample search for a witness");
  SearchFlags sf;
  search->add_option("principle", sf.principle, "delta-fi, delta-a-kappa, delta-alpha, delta-metric, halving, mn-axiom")
      ->required();
  search->add_option("--witness", sf.witness, "constructive, fi or constant-K");
  search->add_option("--mode", sf.mode, "exhaustive or random")->check(CLI::IsMember({"exhaustive", "random"}));
  search->add_option("--value-bound", sf.valueBound, "values below this bound");
  search->add_option("--budget", sf.budget, "instance budget");
  search->add_option("--corpus-size", sf.corpusSize, "points per sampled family");
  search->add_option("--min-domain", sf.minDomain, "smallest domain size");
  search->add_option("--max-domain", sf.maxDomain, "largest domain size");
  search->add_option("--max-recorded", sf.maxRecorded, "violations kept in the report");

  auto* diff = app.add_subcommand("oracle-diff", "symbolic against brute-force cross-check");
  Nat samples = 1000;
  diff->add_option("--samples", samples, "sampled pairs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  const Output out(flags);
  try {
    if (*decompose) return runDecompose(flags, out);
    if (*witness) return runWitness(flags, out);
    if (*check) return runCheckDelta(flags, out, variant, pairsPath, witnessName);
    if (*meet) return runMeet(flags, out);
    if (*nbhd) return runNbhd(flags, out);
    if (*synth) return runSynthesize(flags, out, witnessName);
    if (*verify) return runVerifySuite(flags, out, criteria);
    if (*search) return runSearch(flags, out, sf);
    if (*diff) return runOracleDiff(flags, out, samples);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
