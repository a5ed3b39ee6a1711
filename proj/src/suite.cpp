#include "deltakit/suite.hpp"

#include <chrono>

#include "deltakit/colored.hpp"
#include "deltakit/fi.hpp"
#include "deltakit/gen.hpp"
#include "deltakit/metric.hpp"
#include "deltakit/nabla.hpp"
#include "deltakit/oracle.hpp"
#include "deltakit/ordinal.hpp"

namespace deltakit::suite {

using deltakit::encode;
using pfn::LinPerPF;

namespace {

struct CriterionInfo {
  int id;
  const char* name;
  double limit;
};

constexpr CriterionInfo kCriteria[] = {
    {1, "fi-reconstruction", 30},      {2, "delta-fi-witness", 60},        {3, "induction-step", 30},
    {4, "meet-glb", 60},               {5, "nbhd-characterization", 60},   {6, "mn-operator", 60},
    {7, "diagonalization", 10},        {8, "metric-operator", 60},         {9, "variant-reductions", 30},
};

gen::Rng rngFor(const SuiteOptions& o, int id, Nat i) { return gen::Rng(oracle::instanceSeed(o.seed + id * 1000003ULL, i)); }

// 1: layers are disjoint, increasing, and rebuild the source.
CriterionResult fiReconstruction(const SuiteOptions& o) {
  CriterionResult r;
  gen::Shape shape;
  shape.maxPeriod = 6;
  shape.maxCut = 32;
  Nat heightSum = 0, maxHeight = 0;
  Json failures = Json::array();
  for (Nat i = 0; i < 1000; ++i) {
    gen::Rng rng = rngFor(o, 1, i);
    const LinPerPF x = gen::fiPlus(rng, shape, 4);
    const fi::FiDecomposition d = fi::fiDecompose(x, 4);
    bool ok = !d.layers.empty();
    LinPerPF rebuilt = LinPerPF::undefined();
    for (std::size_t a = 0; a < d.layers.size() && ok; ++a) {
      if (!pfn::isIncreasing(d.layers[a]) || !d.layers[a].hasInfiniteDomain()) ok = false;
      for (std::size_t b = a + 1; b < d.layers.size() && ok; ++b)
        if (!(IndexSet::domainOf(d.layers[a]) & IndexSet::domainOf(d.layers[b])).isEmpty()) ok = false;
      if (ok) rebuilt = pfn::graphUnion(rebuilt, d.layers[a]);
    }
    if (ok && !graphEqual(rebuilt, x)) ok = false;
    ++r.checked;
    heightSum += d.layers.size();
    maxHeight = std::max<Nat>(maxHeight, d.layers.size());
    if (!ok) {
      ++r.failures;
      if (failures.size() < 5) failures.push_back(encode(x));
    }
  }
  r.passed = r.failures == 0;
  r.detail = {{"instances", r.checked}, {"height_total", heightSum}, {"max_height", maxHeight}, {"failed", failures}};
  return r;
}

// 2: witnessFiF on sampled FI⁺ switching pairs, then the finite analogue exhaustively.
CriterionResult deltaFiWitness(const SuiteOptions& o) {
  CriterionResult r;
  oracle::SearchConfig rc;
  rc.mode = oracle::Mode::Random;
  rc.seed = o.seed;
  rc.budget = 600;
  rc.workers = o.workers;
  const oracle::Report sampled = oracle::searchCounterexample(oracle::Principle::DeltaFI, oracle::constructiveWitness(), rc);
  oracle::SearchConfig ec;
  ec.horizon = 8;
  ec.valueBound = 4;
  ec.threshold = 0;
  ec.budget = 1'000'000'000;
  ec.workers = o.workers;
  const oracle::Report exhaustive =
      oracle::searchCounterexample(oracle::Principle::DeltaFI, oracle::constructiveWitness(), ec);
  r.checked = sampled.checked + exhaustive.checked;
  r.failures = sampled.violationCount + exhaustive.violationCount;
  r.passed = r.failures == 0 && sampled.checked >= 500;
  r.detail = {{"sampled_switching_pairs", sampled.checked},
              {"sampled_violations", sampled.violationCount},
              {"exhaustive_switching_pairs", exhaustive.checked},
              {"exhaustive_compatible_pairs", exhaustive.config["compatible_pairs"]},
              {"exhaustive_violations", exhaustive.violationCount},
              {"first_violations", sampled.violations.empty() ? exhaustive.violations : sampled.violations}};
  return r;
}

// Compatible z, w sharing a slow core, each with its own fast extra points.
std::pair<LinPerPF, LinPerPF> liftedPair(gen::Rng& rng) {
  gen::Shape slow;
  slow.maxPeriod = 4;
  slow.maxCut = 8;
  slow.maxValue = 10;
  slow.maxSlope = 2;
  gen::Shape fast = slow;
  fast.maxCut = 4;
  const LinPerPF core = gen::total(rng, slow);
  auto lift = [&] {
    LinPerPF h = gen::total(rng, fast);
    return pfn::plusConstant(pfn::scaled(h, gen::uniform(rng, 3, 6)), gen::uniform(rng, 20, 60));
  };
  const LinPerPF hz = lift(), hw = lift();
  const IndexSet shared = gen::indexSet(rng, 6, 4, 50);
  const IndexSet split = gen::indexSet(rng, 6, 4, 50);
  const IndexSet zOnly = IndexSet::all() - shared - split;
  const IndexSet wOnly = (IndexSet::all() - shared) & split;
  LinPerPF z = pfn::graphUnion(pfn::restrict(core, shared), pfn::restrict(hz, zOnly));
  LinPerPF w = pfn::graphUnion(pfn::restrict(core, shared), pfn::restrict(hw, wOnly));
  return {gen::perturbPrefix(rng, z, gen::uniform(rng, 0, 2), 12), gen::perturbPrefix(rng, w, gen::uniform(rng, 0, 2), 12)};
}

// 3: whenever both premises hold, perp z =* perp w.
CriterionResult inductionStep(const SuiteOptions& o) {
  CriterionResult r;
  Nat attempts = 0, premises = 0, holds = 0;
  Json failures = Json::array();
  for (Nat i = 0; premises < 300 && i < 20000; ++i) {
    gen::Rng rng = rngFor(o, 3, i);
    LinPerPF z, w;
    if (i % 4 == 0) {
      std::tie(z, w) = gen::compatiblePair(rng, gen::Shape{});
    } else {
      std::tie(z, w) = liftedPair(rng);
    }
    if (!z.hasInfiniteDomain() || !w.hasInfiniteDomain() || !pfn::compatible(z, w)) continue;
    ++attempts;
    const fi::IndStepVerdict v = fi::indStepCheck(z, w);
    if (v.kind == fi::IndStepKind::HypothesisFails) continue;
    ++premises;
    if (v.kind == fi::IndStepKind::LemmaHolds) {
      ++holds;
    } else {
      ++r.failures;
      if (failures.size() < 5) failures.push_back({{"z", encode(z)}, {"w", encode(w)}});
    }
  }
  r.checked = premises;
  r.passed = premises >= 300 && r.failures == 0;
  r.detail = {{"pairs_tried", attempts}, {"premises_hold", premises}, {"lemma_holds", holds}, {"failed", failures}};
  return r;
}

// 4: exhaustive meet/GLB on N=5, V=3 at threshold 0.
CriterionResult meetGlb(const SuiteOptions&) {
  CriterionResult r;
  oracle::SearchConfig c;
  c.horizon = 5;
  c.valueBound = 3;
  c.threshold = 0;
  c.budget = 1'000'000;
  const auto universe = oracle::enumeratePFs(c);
  Nat compatible = 0, bounds = 0;
  Json failures = Json::array();
  for (const auto& x : universe)
    for (const auto& y : universe) {
      const oracle::GlbVerdict v = oracle::bruteMeetGLB(x, y, universe);
      if (!v.applicable) continue;
      ++compatible;
      bounds += v.commonLowerBounds;
      if (!v.holds()) {
        ++r.failures;
        if (failures.size() < 5) failures.push_back({{"x", encode(x)}, {"y", encode(y)}});
      }
    }
  r.checked = compatible;
  r.passed = r.failures == 0 && universe.size() == 1024;
  r.detail = {{"universe", universe.size()},
              {"pairs", universe.size() * universe.size()},
              {"compatible_pairs", compatible},
              {"common_lower_bounds", bounds},
              {"failed", failures}};
  return r;
}

// 5: nbhdsIntersect against the coordinatewise brute force at certified horizons.
CriterionResult nbhdCharacterization(const SuiteOptions& o) {
  CriterionResult r;
  const oracle::DiffReport d = oracle::oracleDiff(o.seed, 1000, o.workers);
  Nat nbhdDisagreements = 0;
  for (const Json& j : d.disagreements)
    if (j["check"] == "nbhd") ++nbhdDisagreements;
  r.checked = d.checked.at("nbhd");
  r.failures = nbhdDisagreements;
  r.passed = r.checked >= 1000 && r.failures == 0 && d.disagreements.empty();
  r.detail = encode(d);
  return r;
}

// 6: synthesized operator on FI⁺ triples, plus the constant-zero baseline.
CriterionResult mnOperator(const SuiteOptions& o) {
  CriterionResult r;
  oracle::SearchConfig c;
  c.mode = oracle::Mode::Random;
  c.seed = o.seed;
  c.budget = 200;
  c.corpusSize = 3;
  c.workers = o.workers;
  const oracle::Report good = oracle::searchCounterexample(oracle::Principle::MNAxiom, oracle::constructiveWitness(), c);
  const oracle::Report base = oracle::searchCounterexample(oracle::Principle::MNAxiom, oracle::constantWitness(0), c);
  r.checked = good.checked;
  r.failures = good.violationCount;
  r.passed = good.violationCount == 0 && base.violationCount >= 1 && c.budget >= 200;
  r.detail = {{"triples", c.budget},
              {"queries", good.checked},
              {"violations", good.violationCount},
              {"baseline_queries", base.checked},
              {"baseline_violations", base.violationCount},
              {"first_violations", good.violations}};
  return r;
}

// 7: diagonal functions against up to 20 functions and 20 infinite sets.
CriterionResult diagonalization(const SuiteOptions& o) {
  CriterionResult r;
  Nat pairs = 0;
  for (Nat i = 0; i < 100; ++i) {
    gen::Rng rng = rngFor(o, 7, i);
    std::vector<LinPerPF> g;
    std::vector<IndexSet> a;
    const Nat ng = i == 0 ? 0 : gen::uniform(rng, 1, 20);
    const Nat na = gen::uniform(rng, 1, 20);
    for (Nat k = 0; k < ng; ++k) g.push_back(gen::total(rng, {}));
    while (a.size() < na) {
      IndexSet s = gen::indexSet(rng, 10, 6, 40);
      if (s.isInfinite()) a.push_back(std::move(s));
    }
    const variants::Diagonal d = variants::diagonalize(g, a);
    bool ok = variants::verifyDiagonal(d.f, g, a) && d.certified.size() == g.size();
    for (Nat gi = 0; gi < g.size() && ok; ++gi)
      for (Nat ai = 0; ai < a.size() && ok; ++ai) {
        ++pairs;
        const IndexSet& c = d.certified[gi][ai];
        if (!c.isInfinite() || !(c - a[ai]).isEmpty()) ok = false;
        for (Nat n : c.membersBelow(200))
          if (!(*d.f.at(n) > *g[gi].at(n))) ok = false;
      }
    ++r.checked;
    if (!ok) ++r.failures;
  }
  r.passed = r.failures == 0;
  r.detail = {{"instances", r.checked}, {"certified_pairs", pairs}, {"failed", r.failures}};
  return r;
}

// 8: enumeration witness on a seeded 50-point ω+1 corpus, all ordered pairs.
CriterionResult metricOperator(const SuiteOptions& o) {
  CriterionResult r;
  using namespace variants;
  gen::Rng rng = rngFor(o, 8, 0);
  const FactorCatalog cat = FactorCatalog::allOmegaPlusOne();
  const auto corpus = oracle::metricCorpus(rng, 50);
  const MetricMNOperator op = metricMNOperator(cat, corpus, enumerationWitness(cat, corpus));
  std::vector<std::pair<Nat, Nat>> pairs;
  for (Nat i = 0; i < corpus.size(); ++i)
    for (Nat j = 0; j < corpus.size(); ++j)
      if (i != j) pairs.push_back({i, j});
  const auto checks = metricMNCheck(op, pairs);
  Nat cases[4] = {0, 0, 0, 0}, misclassified = 0, switching = 0, switchingDisjoint = 0;
  Json failures = Json::array();
  for (const MetricPairCheck& c : checks) {
    ++cases[c.proofCase];
    const PointRadius &a = corpus[c.i], &b = corpus[c.j];
    const IndexSet mx = mSet(cat, a.x, a.f, b.x), my = mSet(cat, b.x, b.f, a.x);
    const int expected = (mx.isFinite() || my.isFinite()) ? 1 : (mx & my).isInfinite() ? 2 : 3;
    if (expected != c.proofCase || (expected == 3) != switchMetric(cat, a, b)) ++misclassified;
    if (c.proofCase == 3) {
      ++switching;
      if (c.gDisjoint) ++switchingDisjoint;
    }
    if (c.violated()) {
      ++r.failures;
      if (failures.size() < 5) failures.push_back(encode(c));
    }
  }
  // Further corpora, reported only: the construction is not safe at isolated centres.
  Nat sweepBad = 0, sweepViolations = 0, sweepSwitching = 0;
  for (Nat k = 1; k <= 20; ++k) {
    gen::Rng more = rngFor(o, 8, k);
    const auto other = oracle::metricCorpus(more, 50);
    const MetricMNOperator op2 = metricMNOperator(cat, other, enumerationWitness(cat, other));
    Nat bad = 0;
    for (const MetricPairCheck& c : metricMNCheck(op2, pairs)) {
      sweepSwitching += c.proofCase == 3;
      bad += c.violated();
    }
    sweepViolations += bad;
    sweepBad += bad > 0;
  }
  r.checked = checks.size();
  r.failures += misclassified;
  r.passed = r.failures == 0 && switching > 0;
  r.detail = {{"corpus", corpus.size()},
              {"ordered_pairs", checks.size()},
              {"case1", cases[1]},
              {"case2", cases[2]},
              {"case3", cases[3]},
              {"switching_pairs", switching},
              {"switching_g_disjoint", switchingDisjoint},
              {"misclassified", misclassified},
              {"violations", failures},
              {"other_corpora", {{"corpora", 20},
                                 {"switching_pairs", sweepSwitching},
                                 {"with_violations", sweepBad},
                                 {"violations", sweepViolations}}}};
  return r;
}

struct OrdTriple {
  variants::OrdinalPF x, f, y, z;
  bool expectInside;
};

// Triples on one grid: f sits below x at limits; y copies x, moves inside
// [f, x] at limits, or leaves the interval on some class.
OrdTriple ordinalTriple(gen::Rng& rng, Nat k) {
  using variants::Ord;
  using variants::OrdTail;
  const Ord bound{k, 1};
  const Nat cut = gen::uniform(rng, 0, 3), period = gen::uniform(rng, 1, 4);
  std::vector<Ord> xp(cut), fp(cut), yp(cut);
  for (Nat n = 0; n < cut; ++n) {
    xp[n] = Ord{gen::uniform(rng, 0, k), gen::uniform(rng, 0, 5)};
    if (xp[n].q == k) xp[n].r = 0;
    fp[n] = Ord{0, gen::uniform(rng, 0, 5)};
    yp[n] = Ord{gen::uniform(rng, 0, k - 1), gen::uniform(rng, 0, 5)};
  }
  std::vector<OrdTail> xc(period), fc(period), yc(period);
  bool inside = true;
  for (Nat c = 0; c < period; ++c) {
    const bool limit = gen::chance(rng, 60);
    const int mode = static_cast<int>(gen::uniform(rng, 0, 9));
    if (limit) {
      const Nat q = gen::uniform(rng, 1, k);
      const Nat fr = gen::uniform(rng, 0, 4);
      xc[c] = OrdTail{q, Affine{0, 0}};
      fc[c] = OrdTail{q - 1, Affine{0, fr}};
      if (mode < 4) {
        yc[c] = xc[c];
      } else if (mode < 8) {
        yc[c] = OrdTail{q - 1, Affine{gen::uniform(rng, 0, 2), fr + gen::uniform(rng, 0, 3)}};
      } else if (fr > 0) {
        yc[c] = OrdTail{q - 1, Affine{0, fr - 1}};
        inside = false;
      } else if (q < k) {
        yc[c] = OrdTail{q, Affine{0, 1}};
        inside = false;
      } else {
        yc[c] = xc[c];
      }
    } else {
      const Nat q = gen::uniform(rng, 0, k - 1);
      xc[c] = OrdTail{q, Affine{gen::uniform(rng, 0, 2), gen::uniform(rng, 1, 6)}};
      fc[c] = OrdTail{0, Affine{0, gen::uniform(rng, 0, 4)}};
      if (mode < 8) {
        yc[c] = xc[c];
      } else {
        yc[c] = OrdTail{q, Affine{xc[c].r.slope, xc[c].r.intercept + 1}};
        inside = false;
      }
    }
  }
  // z moves inside [f, y] wherever y is a limit.
  std::vector<Ord> zp(cut);
  for (Ord& v : zp) v = Ord{gen::uniform(rng, 0, k - 1), gen::uniform(rng, 0, 5)};
  std::vector<OrdTail> zc = yc;
  for (Nat c = 0; c < period; ++c) {
    const OrdTail& yt = yc[c];
    if (yt.q == 0 || yt.r.slope != 0 || yt.r.intercept != 0 || gen::chance(rng, 40)) continue;
    const OrdTail& ft = fc[c];
    if (ft.q + 1 == yt.q)
      zc[c] = OrdTail{ft.q, Affine{gen::uniform(rng, 0, 2), ft.r.intercept + gen::uniform(rng, 0, 3)}};
    else if (ft.q + 1 < yt.q)
      zc[c] = OrdTail{yt.q - 1, Affine{gen::uniform(rng, 0, 2), gen::uniform(rng, 0, 5)}};
  }
  return {variants::OrdinalPF(xp, xc, bound), variants::OrdinalPF(fp, fc, bound), variants::OrdinalPF(yp, yc, bound),
          variants::OrdinalPF(zp, zc, bound), inside};
}

// 9: κ = ω colours reduce to pfn.switch; ordinal neighbourhood base conditions.
CriterionResult variantReductions(const SuiteOptions& o) {
  CriterionResult r;
  Nat colourAgree = 0, colourSwitching = 0;
  for (Nat i = 0; i < 1000; ++i) {
    gen::Rng rng = rngFor(o, 9, i);
    auto [x, y] = oracle::coloredPair(rng, 0);
    const bool s = pfn::switches(x.graph(), y.graph());
    colourSwitching += s;
    if (variants::switchColored(x, y) == s) ++colourAgree;
  }
  Nat ordChecked = 0, ordOk = 0, inside = 0, nested = 0;
  Json failures = Json::array();
  for (Nat i = 0; i < 500; ++i) {
    gen::Rng rng = rngFor(o, 90, i);
    const OrdTriple t = ordinalTriple(rng, 3);
    bool ok = variants::inNbhdOrdinal(t.x, t.x, t.f);  // (a) x ∈ N(x, f)
    const bool in = variants::inNbhdOrdinal(t.y, t.x, t.f);
    ok = ok && in == t.expectInside;
    if (in) {
      ++inside;
      ok = ok && variants::precedesOrdinal(t.y, t.x);  // N(x, f) lies in the down-set of x
      // (b) N(y, f) ⊆ N(x, f), tested on a point of N(y, f) when f fits below y.
      try {
        if (variants::inNbhdOrdinal(t.z, t.y, t.f)) {
          ++nested;
          ok = ok && variants::inNbhdOrdinal(t.z, t.x, t.f);
        } else {
          ok = false;
        }
      } catch (const PreconditionError&) {
      }
    }
    ++ordChecked;
    if (ok) {
      ++ordOk;
    } else if (failures.size() < 5) {
      failures.push_back({{"x", variants::encode(t.x)}, {"f", variants::encode(t.f)}, {"y", variants::encode(t.y)}});
    }
  }
  r.checked = 1000 + ordChecked;
  r.failures = (1000 - colourAgree) + (ordChecked - ordOk);
  r.passed = r.failures == 0;
  r.detail = {{"colour_graphs", 1000},
              {"colour_switching", colourSwitching},
              {"colour_agree", colourAgree},
              {"ordinal_triples", ordChecked},
              {"ordinal_ok", ordOk},
              {"ordinal_inside", inside},
              {"ordinal_nested", nested},
              {"failed", failures}};
  return r;
}

}  // namespace

std::vector<int> criterionIds() { return {1, 2, 3, 4, 5, 6, 7, 8, 9}; }

std::string criterionName(int id) {
  for (const CriterionInfo& s : kCriteria)
    if (s.id == id) return s.name;
  throw PreconditionError("unknown criterion " + std::to_string(id));
}

double criterionLimit(int id) {
  for (const CriterionInfo& s : kCriteria)
    if (s.id == id) return s.limit;
  throw PreconditionError("unknown criterion " + std::to_string(id));
}

CriterionResult runCriterion(int id, const SuiteOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  CriterionResult r;
  switch (id) {
    case 1: r = fiReconstruction(opts); break;
    case 2: r = deltaFiWitness(opts); break;
    case 3: r = inductionStep(opts); break;
    case 4: r = meetGlb(opts); break;
    case 5: r = nbhdCharacterization(opts); break;
    case 6: r = mnOperator(opts); break;
    case 7: r = diagonalization(opts); break;
    case 8: r = metricOperator(opts); break;
    case 9: r = variantReductions(opts); break;
    default: throw PreconditionError("unknown criterion " + std::to_string(id));
  }
  r.id = id;
  r.name = criterionName(id);
  r.limitSeconds = criterionLimit(id);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<CriterionResult> runSuite(const SuiteOptions& opts, const std::vector<int>& ids) {
  std::vector<CriterionResult> out;
  for (int id : ids) out.push_back(runCriterion(id, opts));
  return out;
}

Json encode(const CriterionResult& r) {
  return {{"id", r.id},           {"name", r.name},         {"passed", r.passed},
          {"checked", r.checked}, {"failures", r.failures}, {"detail", r.detail}};
}

Json encodeSuite(const SuiteOptions& opts, const std::vector<CriterionResult>& results) {
  Json list = Json::array();
  bool all = true;
  for (const CriterionResult& r : results) {
    list.push_back(encode(r));
    all = all && r.passed;
  }
  return {{"schema", kSchemaVersion}, {"kind", "verify-suite"}, {"seed", opts.seed}, {"criteria", list}, {"passed", all}};
}

}  // namespace deltakit::suite
