#include "deltakit/oracle.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <chrono>
#include <map>

#include "deltakit/fi.hpp"
#include "deltakit/gen.hpp"

namespace deltakit::oracle {

using deltakit::encode;

void SearchConfig::validate() const {
  if (threshold > horizon) throw PreconditionError("search: threshold exceeds horizon");
  if (budget < 1) throw PreconditionError("search: budget must be at least 1");
  if (minDomain > maxDomain) throw PreconditionError("search: empty domain-size range");
  if (corpusSize < 2) throw PreconditionError("search: corpus size must be at least 2");
}

namespace {

const char* modeName(Mode m) { return m == Mode::Exhaustive ? "exhaustive" : "random"; }

Json encodeConfig(const SearchConfig& c) {
  Json j{{"horizon", c.horizon},     {"threshold", c.threshold}, {"value_bound", c.valueBound},
         {"min_domain", c.minDomain}, {"mode", modeName(c.mode)}, {"seed", c.seed},
         {"budget", c.budget},       {"corpus_size", c.corpusSize}};
  j["max_domain"] = c.maxDomain == ~Nat{0} ? Json() : Json(c.maxDomain);
  return j;
}

std::uint64_t splitmix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t power(Nat base, Nat exp) {
  std::uint64_t r = 1;
  for (Nat i = 0; i < exp; ++i) {
    if (r > (~std::uint64_t{0}) / std::max<Nat>(base, 1)) return ~std::uint64_t{0};
    r *= base;
  }
  return r;
}

bool domainOk(const SearchConfig& cfg, Nat size) { return size >= cfg.minDomain && size <= cfg.maxDomain; }

// Function of the universe by mask and value digits (first defined index most significant).
FinitePF fromDigits(const SearchConfig& cfg, std::uint64_t mask, std::uint64_t digits) {
  std::vector<Value> v(cfg.horizon);
  const Nat k = std::popcount(mask);
  Nat rank = 0;
  for (Nat n = 0; n < cfg.horizon; ++n) {
    if (!(mask >> n & 1)) continue;
    v[n] = (digits / power(cfg.valueBound, k - 1 - rank)) % cfg.valueBound;
    ++rank;
  }
  return FinitePF(std::move(v), cfg.threshold);
}

}  // namespace

std::uint64_t instanceSeed(std::uint64_t seed, Nat i) { return splitmix(splitmix(seed) ^ splitmix(i + 1)); }

std::uint64_t universeSize(const SearchConfig& cfg) {
  if (cfg.horizon >= 63) throw PreconditionError("universe: horizon too large");
  std::uint64_t total = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << cfg.horizon); ++mask) {
    const Nat k = std::popcount(mask);
    if (!domainOk(cfg, k)) continue;
    total += power(cfg.valueBound, k);
  }
  return total;
}

void forEachPF(const SearchConfig& cfg, const std::function<void(const FinitePF&)>& visit) {
  cfg.validate();
  if (cfg.mode == Mode::Random) {
    for (Nat i = 0; i < cfg.budget; ++i) {
      gen::Rng rng(instanceSeed(cfg.seed, i));
      std::vector<Value> v(cfg.horizon);
      Nat size = 0;
      do {
        size = 0;
        for (Value& e : v) {
          const Nat pick = gen::uniform(rng, 0, cfg.valueBound);
          e = pick == cfg.valueBound ? Value{} : Value{pick};
          size += e.has_value();
        }
      } while (!domainOk(cfg, size) && cfg.minDomain <= cfg.horizon);
      visit(FinitePF(std::move(v), cfg.threshold));
    }
    return;
  }
  const std::uint64_t size = universeSize(cfg);
  if (size > cfg.budget)
    throw BudgetExceeded("universe has " + std::to_string(size) + " functions, budget is " +
                         std::to_string(cfg.budget));
  std::uint64_t seen = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << cfg.horizon); ++mask) {
    const Nat k = std::popcount(mask);
    if (!domainOk(cfg, k)) continue;
    const std::uint64_t count = power(cfg.valueBound, k);
    for (std::uint64_t d = 0; d < count; ++d, ++seen) visit(fromDigits(cfg, mask, d));
  }
  if (seen != size) throw std::logic_error("enumeration missed part of the universe");
}

std::vector<FinitePF> enumeratePFs(const SearchConfig& cfg) {
  std::vector<FinitePF> out;
  forEachPF(cfg, [&](const FinitePF& x) { out.push_back(x); });
  return out;
}

FinitePF brutePerp(const FinitePF& x) {
  std::vector<Value> v(x.horizon());
  const auto dom = x.domain();
  for (Nat m : dom) {
    bool keep = true;
    for (Nat n : dom)
      if (n > m && *x.at(m) > *x.at(n)) keep = false;
    if (keep) v[m] = x.at(m);
  }
  return FinitePF(std::move(v), x.threshold());
}

FinitePF bruteDec(const FinitePF& x) {
  std::vector<Value> v(x.horizon());
  const auto dom = x.domain();
  for (Nat n : dom) {
    bool record = true;
    for (Nat m : dom)
      if (m < n && *x.at(m) <= *x.at(n)) record = false;
    if (record) v[n] = x.at(n);
  }
  return FinitePF(std::move(v), x.threshold());
}

namespace {

Nat windowEnd(const FinitePF& a, const FinitePF& b) { return std::max(a.horizon(), b.horizon()); }

}  // namespace

bool bruteCompatible(const FinitePF& x, const FinitePF& y) {
  for (Nat n = x.threshold(); n < windowEnd(x, y); ++n)
    if (x.at(n) && y.at(n) && *x.at(n) != *y.at(n)) return false;
  return true;
}

bool bruteSwitch(const FinitePF& x, const FinitePF& y) {
  if (!bruteCompatible(x, y)) return false;
  bool xNew = false, yNew = false;
  for (Nat n = x.threshold(); n < windowEnd(x, y); ++n) {
    if (x.at(n) && !y.at(n)) xNew = true;
    if (y.at(n) && !x.at(n)) yNew = true;
  }
  return xNew && yNew;
}

bool bruteGtStar(const FinitePF& x, const FinitePF& h) {
  for (Nat n = x.threshold(); n < x.horizon(); ++n) {
    if (!x.at(n)) continue;
    if (!h.at(n)) throw PreconditionError("bruteGtStar: h undefined inside the window");
    if (*x.at(n) <= *h.at(n)) return false;
  }
  return true;
}

bool brutePrecedes(const FinitePF& y, const FinitePF& x) {
  for (Nat n = x.threshold(); n < x.horizon(); ++n)
    if (x.at(n) && y.at(n) != x.at(n)) return false;
  return true;
}

FinitePF finiteMeet(const FinitePF& x, const FinitePF& y) {
  std::vector<Value> v(windowEnd(x, y));
  for (Nat n = 0; n < v.size(); ++n) {
    const Value a = x.at(n), b = y.at(n);
    if (a && b)
      v[n] = *a == *b ? a : Value{};
    else
      v[n] = a ? a : b;
  }
  return FinitePF(std::move(v), x.threshold());
}

GlbVerdict bruteMeetGLB(const FinitePF& x, const FinitePF& y, const std::vector<FinitePF>& universe) {
  GlbVerdict v;
  v.applicable = bruteCompatible(x, y);
  if (!v.applicable) return v;
  const FinitePF z = finiteMeet(x, y);
  v.lowerBound = brutePrecedes(z, x) && brutePrecedes(z, y);
  for (const FinitePF& w : universe) {
    if (!brutePrecedes(w, x) || !brutePrecedes(w, y)) continue;
    ++v.commonLowerBounds;
    if (!brutePrecedes(w, z) && !v.undominated) v.undominated = w;
  }
  return v;
}

bool bruteNbhdIntersect(const FinitePF& x, const FinitePF& f, const FinitePF& y, const FinitePF& g) {
  const Nat end = windowEnd(x, y);
  Nat top = 0;
  for (const FinitePF* p : {&x, &f, &y, &g})
    for (const Value& v : p->values())
      if (v) top = std::max(top, *v);
  auto member = [](const FinitePF& c, const FinitePF& r, Nat n, const Value& z) {
    if (c.at(n)) return z == c.at(n);
    if (!z) return true;
    if (!r.at(n)) throw PreconditionError("bruteNbhdIntersect: radius undefined inside the window");
    return *z > *r.at(n);
  };
  for (Nat n = x.threshold(); n < end; ++n) {
    bool found = member(x, f, n, Value{}) && member(y, g, n, Value{});
    for (Nat v = 0; v <= top + 1 && !found; ++v) found = member(x, f, n, v) && member(y, g, n, v);
    if (!found) return false;
  }
  return true;
}

FinitePF finiteWitnessFi(const FinitePF& x, Nat sentinel) {
  std::vector<Nat> out(x.horizon(), 0);
  FinitePF rest = x;
  while (!rest.isEmpty()) {
    const FinitePF layer = brutePerp(rest);
    std::vector<Value> left = rest.values();
    for (Nat n = 0; n < x.horizon(); ++n) {
      Nat fn = sentinel;
      if (layer.at(n)) {
        fn = *layer.at(n);
        left[n].reset();
      } else {
        for (Nat m = n + 1; m < x.horizon(); ++m)
          if (layer.at(m)) {
            fn = *layer.at(m) + 1;
            break;
          }
      }
      out[n] = std::max(out[n], fn);
    }
    rest = FinitePF(std::move(left), x.threshold());
  }
  std::vector<Value> v(out.begin(), out.end());
  return FinitePF(std::move(v), x.threshold());
}

std::string principleName(Principle p) {
  switch (p) {
    case Principle::DeltaFI: return "delta-fi";
    case Principle::DeltaAKappa: return "delta-a-kappa";
    case Principle::DeltaAlpha: return "delta-alpha";
    case Principle::DeltaMetric: return "delta-metric";
    case Principle::Halving: return "halving";
    case Principle::MNAxiom: return "mn-axiom";
  }
  return "?";
}

std::optional<Principle> parsePrinciple(const std::string& s) {
  for (Principle p : {Principle::DeltaFI, Principle::DeltaAKappa, Principle::DeltaAlpha, Principle::DeltaMetric,
                      Principle::Halving, Principle::MNAxiom})
    if (principleName(p) == s) return p;
  return std::nullopt;
}

WitnessAssignment constructiveWitness() {
  WitnessAssignment w;
  w.name = "constructive";
  w.linper = [](const LinPerPF& x) { return fi::witnessFiF(x); };
  w.finite = [](const FinitePF& x, Nat bound) { return finiteWitnessFi(x, bound); };
  w.metric = [](const variants::FactorCatalog& cat, const std::vector<variants::PointRadius>& corpus) {
    return variants::enumerationWitness(cat, corpus);
  };
  return w;
}

WitnessAssignment constantWitness(Nat k) {
  WitnessAssignment w;
  w.name = "constant-" + std::to_string(k);
  w.linper = [k](const LinPerPF&) { return LinPerPF::constant(k); };
  w.finite = [k](const FinitePF& x, Nat) { return FinitePF(std::vector<Value>(x.horizon(), k), x.threshold()); };
  w.colored = [](const variants::ColoredPF&) { return variants::FiniteSetSeq::constant({}); };
  w.ordinal = [k](const variants::OrdinalPF& x) { return variants::OrdinalPF::constant({0, k}, x.bound()); };
  w.metric = [k](const variants::FactorCatalog&, const std::vector<variants::PointRadius>& corpus) {
    return std::vector<LinPerPF>(corpus.size(), LinPerPF::constant(k + 1));
  };
  return w;
}

std::optional<WitnessAssignment> namedWitness(const std::string& name) {
  if (name == "constructive" || name == "fi") return constructiveWitness();
  if (name.rfind("constant-", 0) == 0) {
    try {
      return constantWitness(std::stoull(name.substr(9)));
    } catch (const std::exception&) {
      return std::nullopt;
    }
  }
  return std::nullopt;
}

// ---- sampled instances ----

std::pair<variants::ColoredPF, variants::ColoredPF> coloredPair(gen::Rng& rng, Nat kappa) {
  gen::Shape shape;
  shape.maxSlope = 0;
  shape.maxValue = kappa == 0 ? 12 : kappa - 1;
  auto [x, y] = gen::compatiblePair(rng, shape);
  if (kappa == 0 && gen::chance(rng, 50)) {
    shape.maxSlope = 3;
    std::tie(x, y) = gen::compatiblePair(rng, shape);
  }
  return {variants::ColoredPF(x, kappa), variants::ColoredPF(y, kappa)};
}

std::pair<variants::OrdinalPF, variants::OrdinalPF> ordinalPair(gen::Rng& rng, Nat k) {
  using variants::Ord;
  using variants::OrdTail;
  if (k < 1) throw PreconditionError("ordinalPair: need at least one limit below the bound");
  const Ord bound{k, 1};
  const Nat period = gen::uniform(rng, 1, 4);
  std::vector<OrdTail> base(period);
  for (OrdTail& t : base) {
    const Nat q = gen::uniform(rng, 0, k - 1);
    t = OrdTail{q, Affine{gen::uniform(rng, 0, 2), gen::uniform(rng, 1, 9)}};
  }
  auto one = [&] {
    std::vector<Ord> prefix(gen::uniform(rng, 0, 4));
    for (Ord& o : prefix) o = Ord{gen::uniform(rng, 0, k - 1), gen::uniform(rng, 0, 9)};
    std::vector<OrdTail> classes = base;
    for (OrdTail& t : classes)
      if (gen::chance(rng, 50)) t = OrdTail{gen::uniform(rng, 1, k), Affine{0, 0}};
    return variants::OrdinalPF(std::move(prefix), std::move(classes), bound);
  };
  variants::OrdinalPF x = one();
  variants::OrdinalPF y = one();
  return {std::move(x), std::move(y)};
}

std::vector<variants::PointRadius> metricCorpus(gen::Rng& rng, Nat size) {
  using variants::kOmega;
  using variants::MetricPoint;
  using variants::PointId;
  const Nat period = gen::uniform(rng, 2, 4);
  std::vector<PointId> base(period);
  for (PointId& b : base) b = static_cast<PointId>(gen::uniform(rng, 0, 12));
  gen::Shape radius;
  radius.maxPeriod = 3;
  radius.maxCut = 3;
  radius.maxValue = 6;
  std::vector<variants::PointRadius> out;
  for (Nat i = 0; i < size; ++i) {
    std::vector<PointId> prefix(gen::uniform(rng, 0, 3));
    for (PointId& p : prefix) p = gen::chance(rng, 50) ? kOmega : static_cast<PointId>(gen::uniform(rng, 0, 12));
    std::vector<PointId> cycle = base;
    for (PointId& p : cycle)
      if (gen::chance(rng, 50)) p = kOmega;
    radius.maxSlope = gen::chance(rng, 25) ? 1 : 0;
    out.push_back({MetricPoint(std::move(prefix), std::move(cycle)), pfn::plusConstant(gen::total(rng, radius), 1)});
  }
  return out;
}

namespace {

gen::Shape fiShape() {
  gen::Shape s;
  s.maxPeriod = 6;
  s.maxCut = 32;
  s.maxValue = 12;
  return s;
}

bool fiPlusSafe(const LinPerPF& x) {
  try {
    return fi::isFIplus(x, 4);
  } catch (const fi::HeightExceeded&) {
    return false;
  }
}

// Compatible pair with both sides in FI⁺; switching when asked.
std::optional<std::pair<LinPerPF, LinPerPF>> fiPair(gen::Rng& rng, bool wantSwitch) {
  for (int attempt = 0; attempt < 2000; ++attempt) {
    auto [x, y] = gen::compatiblePair(rng, fiShape());
    if (wantSwitch && !pfn::switches(x, y)) continue;
    if (!fiPlusSafe(x) || !fiPlusSafe(y)) continue;
    return std::pair{x, y};
  }
  return std::nullopt;
}

std::vector<LinPerPF> fiFamily(gen::Rng& rng, Nat size) {
  for (;;) {
    const gen::Shape shape = fiShape();
    const LinPerPF base = gen::total(rng, shape);
    std::vector<LinPerPF> out;
    for (int attempt = 0; attempt < 400 && out.size() < size; ++attempt) {
      const IndexSet a = gen::indexSet(rng, shape.maxCut / 2, shape.maxPeriod, 55);
      LinPerPF x = gen::perturbPrefix(rng, pfn::restrict(base, a), gen::uniform(rng, 0, 3), shape.maxValue);
      if (fiPlusSafe(x)) out.push_back(std::move(x));
    }
    if (out.size() == size) return out;
  }
}

struct Outcome {
  Nat checked = 0;
  std::vector<Json> violations;
};

Json encodeFinitePair(const FinitePF& x, const FinitePF& y, const FinitePF& fx, const FinitePF& fy) {
  return {{"x", encode(x)}, {"y", encode(y)}, {"Fx", encode(fx)}, {"Fy", encode(fy)}};
}

template <typename F>
const F& need(const F& fn, Principle p) {
  if (!fn) throw WitnessUndefined("witness is undefined for " + principleName(p));
  return fn;
}

Outcome sampleInstance(Principle p, const WitnessAssignment& w, const SearchConfig& cfg, Nat i) {
  gen::Rng rng(instanceSeed(cfg.seed, i));
  Outcome out;
  switch (p) {
    case Principle::DeltaFI: {
      const auto& fw = need(w.linper, p);
      auto pair = fiPair(rng, true);
      if (!pair) return out;
      const auto& [x, y] = *pair;
      const LinPerPF fx = fw(x), fy = fw(y);
      const DeltaVerdict v = fi::checkDeltaConclusion(x, y, fx, fy);
      out.checked = 1;
      if (v.violated())
        out.violations.push_back({{"instance", i},
                                  {"x", encode(x)},
                                  {"y", encode(y)},
                                  {"Fx", encode(fx)},
                                  {"Fy", encode(fy)},
                                  {"verdict", encode(v)}});
      return out;
    }
    case Principle::DeltaAKappa: {
      const auto& fw = need(w.colored, p);
      auto [x, y] = coloredPair(rng, cfg.valueBound);
      if (!variants::switchColored(x, y)) return out;
      const auto fx = fw(x), fy = fw(y);
      const DeltaVerdict v = variants::checkDeltaAKappa(x, y, fx, fy);
      out.checked = 1;
      if (v.violated())
        out.violations.push_back({{"instance", i},
                                  {"x", variants::encode(x)},
                                  {"y", variants::encode(y)},
                                  {"Fx", variants::encode(fx)},
                                  {"Fy", variants::encode(fy)},
                                  {"verdict", encode(v)}});
      return out;
    }
    case Principle::DeltaAlpha: {
      const auto& fw = need(w.ordinal, p);
      auto [x, y] = ordinalPair(rng, std::max<Nat>(cfg.valueBound, 1));
      if (!variants::switchOrdinal(x, y)) return out;
      const auto fx = fw(x), fy = fw(y);
      const DeltaVerdict v = variants::checkDeltaAlpha(x, y, fx, fy);
      out.checked = 1;
      if (v.violated())
        out.violations.push_back({{"instance", i},
                                  {"x", variants::encode(x)},
                                  {"y", variants::encode(y)},
                                  {"Fx", variants::encode(fx)},
                                  {"Fy", variants::encode(fy)},
                                  {"verdict", encode(v)}});
      return out;
    }
    case Principle::DeltaMetric: {
      const auto& fw = need(w.metric, p);
      const auto cat = variants::FactorCatalog::allOmegaPlusOne();
      const auto corpus = metricCorpus(rng, cfg.corpusSize);
      const auto f = fw(cat, corpus);
      for (Nat a = 0; a < corpus.size(); ++a)
        for (Nat b = a + 1; b < corpus.size(); ++b) {
          if (!variants::switchMetric(cat, corpus[a], corpus[b])) continue;
          ++out.checked;
          const DeltaVerdict v = variants::checkDeltaMetric(cat, corpus[a], corpus[b], f[a], f[b]);
          if (v.violated())
            out.violations.push_back({{"instance", i},
                                      {"i", a},
                                      {"j", b},
                                      {"x", variants::encode(corpus[a].x)},
                                      {"f", encode(corpus[a].f)},
                                      {"y", variants::encode(corpus[b].x)},
                                      {"g", encode(corpus[b].f)},
                                      {"Fx", encode(f[a])},
                                      {"Fy", encode(f[b])},
                                      {"verdict", encode(v)}});
        }
      return out;
    }
    case Principle::Halving: {
      const auto& fw = need(w.linper, p);
      std::vector<nabla::Nbhd> t, s;
      std::vector<LinPerPF> family = fiFamily(rng, cfg.corpusSize);
      for (const LinPerPF& x : family) {
        const nabla::NablaPoint c(x);
        t.emplace_back(c, LinPerPF::constant(0));
        s.emplace_back(c, pfn::maxFn(fw(x), LinPerPF::constant(0)));
      }
      out.checked = family.size() * (family.size() - 1) / 2;
      for (const nabla::Violation& v : nabla::halvesCheck(t, s))
        out.violations.push_back(
            {{"instance", i}, {"violation", nabla::encode(v)}, {"S_i", nabla::encode(s[v.i])}, {"S_j", nabla::encode(s[v.j])}});
      return out;
    }
    case Principle::MNAxiom: {
      const auto& fw = need(w.linper, p);
      std::vector<nabla::NablaPoint> family;
      for (const LinPerPF& x : fiFamily(rng, cfg.corpusSize)) family.emplace_back(x);
      const nabla::MNOperator op = nabla::synthesizeMN(family, fw);
      gen::Shape radius;
      radius.maxValue = 8;
      radius.maxSlope = 1;
      std::vector<nabla::MNQuery> queries;
      for (Nat a = 0; a < family.size(); ++a)
        for (Nat b = a + 1; b < family.size(); ++b)
          queries.push_back({a, nabla::Nbhd(family[a], gen::total(rng, radius)), b,
                             nabla::Nbhd(family[b], gen::total(rng, radius))});
      out.checked = queries.size();
      for (const nabla::Violation& v : nabla::mnAxiomCheck(op, queries)) {
        const nabla::MNQuery* q = nullptr;
        for (const auto& cand : queries)
          if (cand.i == v.i && cand.j == v.j) q = &cand;
        out.violations.push_back({{"instance", i},
                                  {"violation", nabla::encode(v)},
                                  {"box_i", nabla::encode(q->boxI)},
                                  {"box_j", nabla::encode(q->boxJ)},
                                  {"F_i", encode(op.radii[v.i])},
                                  {"F_j", encode(op.radii[v.j])}});
      }
      return out;
    }
  }
  return out;
}

// ---- exhaustive finite Δ(FI) ----

constexpr std::uint64_t kHigh = 0x8080808080808080ULL;
constexpr std::uint64_t kLow = 0x0101010101010101ULL;

struct Packed {
  std::uint8_t mask = 0;
  std::uint64_t values = 0;  // one byte per index
  std::uint64_t witness = 0;
};

std::uint64_t pack(const FinitePF& x) {
  std::uint64_t r = 0;
  for (Nat n = 0; n < x.horizon(); ++n)
    if (x.at(n)) r |= std::uint64_t{*x.at(n)} << (8 * n);
  return r;
}

std::array<std::uint64_t, 256> laneMasks() {
  std::array<std::uint64_t, 256> t{};
  for (Nat m = 0; m < 256; ++m)
    for (Nat n = 0; n < 8; ++n)
      if (m >> n & 1) t[m] |= std::uint64_t{0x80} << (8 * n);
  return t;
}

// a(n) > b(n) at every index of `lanes`.
inline bool allAbove(std::uint64_t a, std::uint64_t b, std::uint64_t lanes) {
  return (((a | kHigh) - b - kLow) & lanes) == lanes;
}

struct Table {
  std::vector<Packed> fns;
  std::vector<std::uint64_t> offset;  // first code of each mask
};

Table buildTable(const SearchConfig& cfg, const WitnessAssignment& w) {
  Table t;
  t.offset.assign(std::size_t{1} << cfg.horizon, 0);
  const auto& fw = need(w.finite, Principle::DeltaFI);
  for (std::uint64_t mask = 0; mask < t.offset.size(); ++mask) {
    t.offset[mask] = t.fns.size();
    const std::uint64_t count = power(cfg.valueBound, std::popcount(mask));
    for (std::uint64_t d = 0; d < count; ++d) {
      FinitePF x = fromDigits(cfg, mask, d);
      FinitePF fx = fw(x, cfg.valueBound);
      if (fx.horizon() != cfg.horizon) throw PreconditionError("witness changed the horizon");
      for (const Value& v : fx.values())
        if (!v || *v > 127) throw PreconditionError("finite witness must be total with values below 128");
      t.fns.push_back({static_cast<std::uint8_t>(mask), pack(x), pack(fx)});
    }
  }
  return t;
}

FinitePF unpack(const SearchConfig& cfg, std::uint8_t mask, std::uint64_t values) {
  std::vector<Value> v(cfg.horizon);
  for (Nat n = 0; n < cfg.horizon; ++n)
    if (mask >> n & 1) v[n] = (values >> (8 * n)) & 0xff;
  return FinitePF(std::move(v), cfg.threshold);
}

FinitePF unpackTotal(const SearchConfig& cfg, std::uint64_t values) {
  return unpack(cfg, static_cast<std::uint8_t>((1u << cfg.horizon) - 1), values);
}

struct ChunkResult {
  Nat compatible = 0;
  Nat checked = 0;
  Nat violations = 0;
  std::vector<Json> recorded;
};

ChunkResult exhaustiveChunk(const SearchConfig& cfg, const Table& t, std::uint64_t from, std::uint64_t to) {
  static const std::array<std::uint64_t, 256> lanes = laneMasks();
  const Nat n = cfg.horizon;
  const std::uint64_t all = (std::uint64_t{1} << n) - 1;
  const std::uint64_t window = all & ~((std::uint64_t{1} << cfg.threshold) - 1);
  const Nat v = cfg.valueBound;
  ChunkResult r;
  std::array<std::uint64_t, 8> weight{};
  std::array<Nat, 8> digit{};
  for (std::uint64_t cx = from; cx < to; ++cx) {
    const Packed& x = t.fns[cx];
    if (!domainOk(cfg, std::popcount(x.mask))) continue;
    for (std::uint64_t my = 0; my <= all; ++my) {
      const Nat k = std::popcount(my);
      if (!domainOk(cfg, k)) continue;
      const std::uint64_t fixed = my & x.mask & window;
      const Nat nFree = k - std::popcount(fixed);
      const std::uint64_t variants = power(v, nFree);
      r.compatible += variants;
      const std::uint64_t xOnly = x.mask & ~my & window;
      const std::uint64_t yOnly = my & ~x.mask & window;
      if (!xOnly || !yOnly) continue;
      // Code of y: fixed digits from x, free digits enumerated in order.
      std::uint64_t base = t.offset[my];
      Nat rank = 0, f = 0;
      for (Nat p = 0; p < n; ++p) {
        if (!(my >> p & 1)) continue;
        const std::uint64_t wgt = power(v, k - 1 - rank++);
        if (fixed >> p & 1)
          base += ((x.values >> (8 * p)) & 0xff) * wgt;
        else
          weight[f++] = wgt;
      }
      const std::uint64_t xLanes = lanes[xOnly], yLanes = lanes[yOnly];
      digit.fill(0);
      std::uint64_t code = base;
      for (std::uint64_t it = 0; it < variants; ++it) {
        const Packed& y = t.fns[code];
        ++r.checked;
        if (allAbove(x.values, y.witness, xLanes) && allAbove(y.values, x.witness, yLanes)) {
          ++r.violations;
          if (r.recorded.size() < cfg.maxRecorded) {
            Json j = encodeFinitePair(unpack(cfg, x.mask, x.values), unpack(cfg, y.mask, y.values),
                                      unpackTotal(cfg, x.witness), unpackTotal(cfg, y.witness));
            j["x_code"] = cx;
            j["y_code"] = code;
            r.recorded.push_back(std::move(j));
          }
        }
        // odometer over free digits, last position fastest
        for (Nat q = f; q-- > 0;) {
          if (++digit[q] < v) {
            code += weight[q];
            break;
          }
          code -= weight[q] * (v - 1);
          digit[q] = 0;
        }
      }
    }
  }
  return r;
}

Report exhaustiveDeltaFI(const WitnessAssignment& w, const SearchConfig& cfg) {
  if (cfg.horizon > 8) throw PreconditionError("exhaustive Δ(FI) search supports horizons up to 8");
  if (cfg.valueBound < 1 || cfg.valueBound > 100) throw PreconditionError("exhaustive Δ(FI) needs 1 <= V <= 100");
  const std::uint64_t universe = universeSize(cfg);
  const std::uint64_t pairs =
      power(cfg.valueBound + 1, 2 * cfg.threshold) * power(3 * cfg.valueBound + 1, cfg.horizon - cfg.threshold);
  const bool fullUniverse = cfg.minDomain == 0 && cfg.maxDomain >= cfg.horizon;
  if (fullUniverse && pairs > cfg.budget)
    throw BudgetExceeded("compatible pair universe has " + std::to_string(pairs) + " pairs, budget is " +
                         std::to_string(cfg.budget));
  const Table t = buildTable(cfg, w);
  if (t.fns.size() != power(cfg.valueBound + 1, cfg.horizon)) throw std::logic_error("function table size mismatch");
  const Nat chunks = std::min<std::uint64_t>(t.fns.size(), 256);
  const auto parts = parallelMap<ChunkResult>(chunks, cfg.workers, [&](Nat c) {
    return exhaustiveChunk(cfg, t, t.fns.size() * c / chunks, t.fns.size() * (c + 1) / chunks);
  });
  Report r;
  Nat compatible = 0;
  for (const ChunkResult& p : parts) {
    compatible += p.compatible;
    r.checked += p.checked;
    r.violationCount += p.violations;
    for (const Json& j : p.recorded)
      if (r.violations.size() < cfg.maxRecorded) r.violations.push_back(j);
  }
  if (fullUniverse && compatible != pairs) throw std::logic_error("exhaustive search did not cover the pair universe");
  if (!fullUniverse && compatible > cfg.budget) throw BudgetExceeded("compatible pairs exceed the budget");
  r.config = encodeConfig(cfg);
  r.config["universe"] = universe;
  r.config["compatible_pairs"] = compatible;
  return r;
}

Report randomFiniteDeltaFI(const WitnessAssignment& w, const SearchConfig& cfg) {
  const auto& fw = need(w.finite, Principle::DeltaFI);
  Report r;
  Nat i = 0;
  std::vector<FinitePF> xs;
  forEachPF(cfg, [&](const FinitePF& x) { xs.push_back(x); });
  for (; i + 1 < xs.size(); i += 2) {
    const FinitePF &x = xs[i], &y = xs[i + 1];
    if (!bruteSwitch(x, y)) continue;
    ++r.checked;
    const FinitePF fx = fw(x, cfg.valueBound), fy = fw(y, cfg.valueBound);
    bool xWins = true, yWins = true;
    for (Nat n = cfg.threshold; n < cfg.horizon; ++n) {
      if (x.at(n) && !y.at(n) && *x.at(n) <= *fy.at(n)) xWins = false;
      if (y.at(n) && !x.at(n) && *y.at(n) <= *fx.at(n)) yWins = false;
    }
    if (xWins && yWins) {
      ++r.violationCount;
      if (r.violations.size() < cfg.maxRecorded) r.violations.push_back(encodeFinitePair(x, y, fx, fy));
    }
  }
  r.config = encodeConfig(cfg);
  return r;
}

}  // namespace

Report searchCounterexample(Principle p, const WitnessAssignment& witness, const SearchConfig& cfg) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  Report r;
  if (p == Principle::DeltaFI && witness.finite && (cfg.mode == Mode::Exhaustive || !witness.linper)) {
    r = cfg.mode == Mode::Exhaustive ? exhaustiveDeltaFI(witness, cfg) : randomFiniteDeltaFI(witness, cfg);
  } else {
    if (cfg.mode == Mode::Exhaustive)
      throw PreconditionError("exhaustive search is only available for delta-fi on finite functions");
    const auto parts =
        parallelMap<Outcome>(cfg.budget, cfg.workers, [&](Nat i) { return sampleInstance(p, witness, cfg, i); });
    for (const Outcome& o : parts) {
      r.checked += o.checked;
      r.violationCount += o.violations.size();
      for (const Json& j : o.violations)
        if (r.violations.size() < cfg.maxRecorded) r.violations.push_back(j);
    }
    r.config = encodeConfig(cfg);
  }
  r.principle = principleName(p);
  r.witness = witness.name;
  r.mode = modeName(cfg.mode);
  r.seed = cfg.seed;
  r.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

Json encode(const Report& r) {
  return {{"schema", kSchemaVersion},
          {"kind", "search-report"},
          {"principle", r.principle},
          {"witness", r.witness},
          {"mode", r.mode},
          {"seed", r.seed},
          {"config", r.config},
          {"checked", r.checked},
          {"violations_total", r.violationCount},
          {"violations", r.violations}};
}

// ---- symbolic against brute ----

namespace {

Json disagreement(const std::string& check, Nat sample, Json detail) {
  return {{"check", check}, {"sample", sample}, {"detail", std::move(detail)}};
}

struct DiffOutcome {
  std::map<std::string, Nat> checked;
  std::vector<Json> disagreements;
};

bool sameBelow(const FinitePF& a, const FinitePF& b, Nat below) {
  for (Nat n = 0; n < below; ++n)
    if (a.at(n) != b.at(n)) return false;
  return true;
}

DiffOutcome diffSample(std::uint64_t seed, Nat i) {
  gen::Rng rng(instanceSeed(seed, i));
  DiffOutcome out;
  gen::Shape shape;
  shape.maxCut = 12;
  shape.maxValue = 10;
  LinPerPF x, y;
  switch (i % 3) {
    case 0: std::tie(x, y) = gen::compatiblePair(rng, shape); break;
    case 1: x = gen::sparse(rng, shape); y = gen::sparse(rng, shape); break;
    default: x = gen::linPer(rng, shape); y = gen::linPer(rng, shape); break;
  }
  gen::Shape rs;
  rs.maxCut = 8;
  rs.maxValue = 6;
  rs.maxSlope = 1;
  const LinPerPF f = gen::total(rng, rs), g = gen::total(rng, rs);
  const std::array<LinPerPF, 4> all{x, y, f, g};
  const Nat h = certificateHorizon(all);
  const Nat period = commonPeriod(all);
  const Nat end = h + 2 * period;

  // perp and Dec on x, without a threshold
  {
    const FinitePF tx = pfn::truncate(x, end);
    const FinitePF brute = brutePerp(tx);
    const FinitePF exact = pfn::truncate(pfn::perp(x), end);
    ++out.checked["perp"];
    if (!sameBelow(brute, exact, h + period))
      out.disagreements.push_back(disagreement("perp", i, {{"x", encode(x)}, {"horizon", h + period}}));
    if (!x.isEmpty()) {
      const FinitePF dec = pfn::decPrefix(x);
      const Nat decEnd = std::max(end, dec.horizon());
      const FinitePF bruteDecX = bruteDec(pfn::truncate(x, decEnd));
      ++out.checked["dec"];
      if (!sameBelow(bruteDecX, dec, decEnd))
        out.disagreements.push_back(disagreement("dec", i, {{"x", encode(x)}, {"horizon", decEnd}}));
    }
  }
  const FinitePF tx = pfn::truncate(x, end, h), ty = pfn::truncate(y, end, h);
  const FinitePF tf = pfn::truncate(f, end, h), tg = pfn::truncate(g, end, h);
  ++out.checked["switch"];
  if (bruteSwitch(tx, ty) != pfn::switches(x, y))
    out.disagreements.push_back(disagreement("switch", i, {{"x", encode(x)}, {"y", encode(y)}, {"threshold", h}}));
  ++out.checked["gt-star"];
  if (bruteGtStar(tx, tg) != pfn::gtStar(x, g))
    out.disagreements.push_back(disagreement("gt-star", i, {{"x", encode(x)}, {"h", encode(g)}, {"threshold", h}}));
  ++out.checked["nbhd"];
  const bool exact = nabla::nbhdsIntersect(nabla::Nbhd(nabla::NablaPoint(x), f), nabla::Nbhd(nabla::NablaPoint(y), g));
  if (bruteNbhdIntersect(tx, tf, ty, tg) != exact)
    out.disagreements.push_back(disagreement(
        "nbhd", i,
        {{"x", encode(x)}, {"f", encode(f)}, {"y", encode(y)}, {"g", encode(g)}, {"threshold", h}, {"symbolic", exact}}));
  return out;
}

}  // namespace

DiffReport oracleDiff(std::uint64_t seed, Nat samples, Nat workers) {
  const auto parts = parallelMap<DiffOutcome>(samples, workers, [&](Nat i) { return diffSample(seed, i); });
  DiffReport r;
  for (const DiffOutcome& o : parts) {
    for (const auto& [k, v] : o.checked) r.checked[k] += v;
    for (const Json& j : o.disagreements) r.disagreements.push_back(j);
  }
  r.samples = samples;
  r.seed = seed;
  return r;
}

Json encode(const DiffReport& d) {
  Json checked = Json::object();
  for (const auto& [k, v] : d.checked) checked[k] = v;
  return {{"schema", kSchemaVersion}, {"kind", "oracle-diff"},         {"seed", d.seed},
          {"samples", d.samples},     {"checked", checked},            {"disagreements", d.disagreements},
          {"agree", d.disagreements.empty()}};
}

}  // namespace deltakit::oracle
