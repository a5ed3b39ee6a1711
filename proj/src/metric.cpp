#include "deltakit/metric.hpp"

#include <algorithm>
#include <array>

namespace deltakit::variants {

using deltakit::encode;

Factor Factor::finite(std::vector<std::vector<Rational>> d) {
  const std::size_t k = d.size();
  if (k == 0) throw PreconditionError("finite factor: no points");
  for (std::size_t i = 0; i < k; ++i) {
    if (d[i].size() != k) throw PreconditionError("finite factor: distance matrix is not square");
    if (d[i][i] != Rational(0)) throw PreconditionError("finite factor: nonzero diagonal");
    for (std::size_t j = 0; j < k; ++j) {
      if (d[i][j] != d[j][i]) throw PreconditionError("finite factor: distances are not symmetric");
      if (i != j && d[i][j] <= Rational(0)) throw PreconditionError("finite factor: distinct points at distance 0");
      for (std::size_t m = 0; m < k; ++m)
        if (d[i][m] > d[i][j] + d[j][m]) throw PreconditionError("finite factor: triangle inequality fails");
    }
  }
  Factor f;
  f.kind = Kind::Finite;
  f.dist = std::move(d);
  return f;
}

bool Factor::valid(PointId a) const {
  if (kind == Kind::OmegaPlusOne) return a >= kOmega;
  return a >= 0 && static_cast<std::size_t>(a) < dist.size();
}

Rational Factor::distance(PointId a, PointId b) const {
  if (kind == Kind::Finite) return dist[a][b];
  if (a == b) return 0;
  if (a == kOmega) return Rational(1, b + 1);
  if (b == kOmega) return Rational(1, a + 1);
  const Rational d = Rational(1, a + 1) - Rational(1, b + 1);
  return d < Rational(0) ? -d : d;
}

void FactorCatalog::validate() const {
  if (factors.empty()) throw PreconditionError("catalog: no factors");
  auto ok = [&](Nat i) { return i < factors.size(); };
  if (!std::all_of(layout.prefix().begin(), layout.prefix().end(), ok) ||
      !std::all_of(layout.cycle().begin(), layout.cycle().end(), ok))
    throw PreconditionError("catalog: layout refers to a missing factor");
}

bool inBall(const Factor& space, PointId a, Nat f, PointId b) {
  if (f == 0) throw ZeroRadius("radius function takes the value 0");
  if (space.isolated(a)) return a == b;
  return b == kOmega || static_cast<Nat>(b) + 1 > f;
}

bool ballsDisjoint(const Factor& space, PointId a, Nat fa, PointId b, Nat fb) {
  if (space.isolated(a) && space.isolated(b)) return a != b;
  if (space.isolated(a)) return !inBall(space, b, fb, a);
  if (space.isolated(b)) return !inBall(space, a, fa, b);
  return false;
}

namespace {

using Wide = __int128;

// A predicate on the blocks k of one residue class, nondecreasing in k
// (false then true), built from the affine radii on that class.
struct Atom {
  enum class Kind { Const, AtLeast, SumBelow };
  Kind kind = Kind::Const;
  bool value = false;
  Affine f, g;
  Nat bound = 0;
  Rational d;

  bool at(Nat k) const {
    switch (kind) {
      case Kind::Const: return value;
      case Kind::AtLeast: return f.at(k) >= bound;
      case Kind::SumBelow: {
        const Wide a = f.at(k), b = g.at(k);
        return Wide(d.numerator()) * a * b > Wide(d.denominator()) * (a + b);
      }
    }
    return false;
  }

  bool eventual() const {
    switch (kind) {
      case Kind::Const: return value;
      case Kind::AtLeast: return f.slope > 0 || f.intercept >= bound;
      case Kind::SumBelow: {
        Rational limit = 0;
        if (f.slope == 0) limit += Rational(1, static_cast<std::int64_t>(f.intercept));
        if (g.slope == 0) limit += Rational(1, static_cast<std::int64_t>(g.intercept));
        return limit < d;
      }
    }
    return false;
  }

  // First block from which the predicate stays at its eventual value.
  Nat threshold() const {
    if (!eventual() || at(0)) return 0;
    Nat hi = 1;
    while (!at(hi)) {
      if (hi > (Nat{1} << 40)) throw std::overflow_error("metric predicate does not settle in range");
      hi *= 2;
    }
    Nat lo = hi / 2;
    while (lo + 1 < hi) {
      const Nat mid = lo + (hi - lo) / 2;
      (at(mid) ? hi : lo) = mid;
    }
    return hi;
  }
};

Atom constant(bool v) { return {Atom::Kind::Const, v, {}, {}, 0, {}}; }
Atom atLeast(Affine f, Nat bound) { return {Atom::Kind::AtLeast, false, f, {}, bound, {}}; }
Atom sumBelow(Affine f, Affine g, Rational d) { return {Atom::Kind::SumBelow, false, f, g, 0, d}; }

// n ∈ M(x, f; y): b ∉ B(a, 1/F).
Atom outsideBall(const Factor& s, PointId a, Affine fa, PointId b) {
  if (s.isolated(a)) return constant(a != b);
  if (b == kOmega) return constant(false);
  return atLeast(fa, static_cast<Nat>(b) + 1);
}

Atom disjoint(const Factor& s, PointId a, Affine fa, PointId b, Affine fb) {
  if (s.isolated(a) && s.isolated(b)) return constant(a != b);
  if (s.isolated(a)) return atLeast(fb, static_cast<Nat>(a) + 1);
  if (s.isolated(b)) return atLeast(fa, static_cast<Nat>(b) + 1);
  return constant(false);
}

Atom deltaGap(const Factor& s, PointId a, Affine fa, PointId b, Affine fb) {
  return sumBelow(fa, fb, s.distance(a, b));
}

void requirePositive(const LinPerPF& f) {
  if (!f.isTotal()) throw PreconditionError("radius function must be total");
  for (const Value& v : f.prefix())
    if (*v == 0) throw ZeroRadius("radius function takes the value 0");
  for (const TailClass& c : f.classes())
    if (c->intercept == 0) throw ZeroRadius("radius function takes the value 0");
}

using AtomFn = std::function<Atom(const Factor&, PointId, Affine, PointId, Affine)>;

IndexSet build(const FactorCatalog& cat, const MetricPoint& x, const LinPerPF& f, const MetricPoint& y,
               const LinPerPF& g, const AtomFn& make) {
  requirePositive(f);
  requirePositive(g);
  const std::array<Grid, 5> grids{cat.layout.grid(), x.grid(), y.grid(), f.grid(), g.grid()};
  const Grid grid = commonGrid(grids);
  for (Nat n = 0; n < grid.cut + grid.period; ++n) {
    if (cat.layout.at(n) >= cat.factors.size()) throw PreconditionError("catalog: layout refers to a missing factor");
    if (!cat.at(n).valid(x.at(n)) || !cat.at(n).valid(y.at(n)))
      throw PreconditionError("metric point id is not a point of its factor at index " + std::to_string(n));
  }
  const LinPerPF fr = f.refined(grid), gr = g.refined(grid);
  std::vector<Atom> tail;
  Nat stable = 0;
  for (Nat r = 0; r < grid.period; ++r) {
    const Nat n = grid.cut + r;
    tail.push_back(make(cat.at(n), x.at(n), *fr.classes()[r], y.at(n), *gr.classes()[r]));
    stable = std::max(stable, tail.back().threshold());
  }
  return IndexSet::tabulate(grid, stable, [&](Nat n) {
    if (n < grid.cut)
      return make(cat.at(n), x.at(n), Affine{0, *f.at(n)}, y.at(n), Affine{0, *g.at(n)}).at(0);
    return tail[grid.residue(n)].at(grid.block(n));
  });
}

pfn::Certificate often(const IndexSet& s, std::string note) {
  pfn::Certificate c;
  c.kind = "infinitely-often";
  c.grid = s.grid();
  c.residues = s.tailResidues();
  c.note = std::move(note);
  return c;
}

}  // namespace

IndexSet mSet(const FactorCatalog& cat, const MetricPoint& x, const LinPerPF& f, const MetricPoint& y) {
  return build(cat, x, f, y, f, [](const Factor& s, PointId a, Affine fa, PointId b, Affine) {
    return outsideBall(s, a, fa, b);
  });
}

bool inNbhdMetric(const FactorCatalog& cat, const MetricPoint& y, const MetricPoint& x, const LinPerPF& f) {
  return mSet(cat, x, f, y).isFinite();
}

IndexSet disjointBalls(const FactorCatalog& cat, const MetricPoint& x, const LinPerPF& f, const MetricPoint& y,
                       const LinPerPF& g) {
  return build(cat, x, f, y, g, disjoint);
}

bool nbhdsDisjointMetric(const FactorCatalog& cat, const MetricPoint& x, const LinPerPF& f, const MetricPoint& y,
                         const LinPerPF& g) {
  return disjointBalls(cat, x, f, y, g).isInfinite();
}

bool switchMetric(const FactorCatalog& cat, const PointRadius& a, const PointRadius& b) {
  const IndexSet mx = mSet(cat, a.x, a.f, b.x);
  const IndexSet my = mSet(cat, b.x, b.f, a.x);
  return mx.isInfinite() && my.isInfinite() && almostDisjoint(mx, my);
}

DeltaVerdict checkDeltaMetric(const FactorCatalog& cat, const PointRadius& a, const PointRadius& b,
                              const LinPerPF& fx, const LinPerPF& gy) {
  DeltaVerdict v;
  if (!switchMetric(cat, a, b)) {
    v.certificate.kind = "not-switching";
    return v;
  }
  const IndexSet gap = build(cat, a.x, fx, b.x, gy, deltaGap);
  if (gap.isInfinite()) {
    v.kind = VerdictKind::Holds;
    v.certificate = often(gap, "1/fx(n) + 1/gy(n) < d(x(n), y(n))");
  } else {
    v.kind = VerdictKind::Violated;
    v.certificate.kind = "eventually";
    v.certificate.from = gap.grid().cut;
    v.certificate.note = "1/fx(n) + 1/gy(n) >= d(x(n), y(n)) from this index";
  }
  return v;
}

LinPerPF MetricMNOperator::gRadius(Nat i) const { return pfn::maxFn(pfn::scaled(corpus[i].f, 2), witness[i]); }

MetricMNOperator metricMNOperator(FactorCatalog cat, std::vector<PointRadius> corpus, std::vector<LinPerPF> witness) {
  cat.validate();
  if (witness.size() != corpus.size()) throw PreconditionError("metricMNOperator: witness missing for a corpus pair");
  for (const LinPerPF& w : witness) requirePositive(w);
  return {std::move(cat), std::move(corpus), std::move(witness)};
}

std::vector<MetricPairCheck> metricMNCheck(const MetricMNOperator& op, const std::vector<std::pair<Nat, Nat>>& pairs) {
  std::vector<MetricPairCheck> out;
  for (auto [i, j] : pairs) {
    if (i >= op.corpus.size() || j >= op.corpus.size()) throw PreconditionError("metricMNCheck: index outside corpus");
    const PointRadius& a = op.corpus[i];
    const PointRadius& b = op.corpus[j];
    MetricPairCheck c{i, j};
    const IndexSet mx = mSet(op.catalog, a.x, a.f, b.x);
    const IndexSet my = mSet(op.catalog, b.x, b.f, a.x);
    c.premise = mx.isInfinite() && my.isInfinite();
    c.gDisjoint = nbhdsDisjointMetric(op.catalog, a.x, op.gRadius(i), b.x, op.gRadius(j));
    if (!c.premise) {
      c.proofCase = 1;
    } else if ((mx & my).isInfinite()) {
      c.proofCase = 2;
      const IndexSet half = disjointBalls(op.catalog, a.x, pfn::scaled(a.f, 2), b.x, pfn::scaled(b.f, 2));
      c.claimHolds = ((mx & my) - half).isFinite();
    } else {
      c.proofCase = 3;
      c.claimHolds = checkDeltaMetric(op.catalog, a, b, op.witness[i], op.witness[j]).holds();
    }
    out.push_back(c);
  }
  return out;
}

Diagonal diagonalize(const std::vector<LinPerPF>& g, const std::vector<IndexSet>& a) {
  for (const LinPerPF& h : g)
    if (!h.isTotal()) throw PreconditionError("diagonalize: functions must be total");
  for (const IndexSet& s : a)
    if (!s.isInfinite()) throw PreconditionError("diagonalize: every set must be infinite");
  Diagonal out;
  if (g.empty()) {
    out.f = LinPerPF::constant(1);
  } else {
    LinPerPF m = g.front();
    for (std::size_t i = 1; i < g.size(); ++i) m = pfn::maxFn(m, g[i]);
    out.f = pfn::plusConstant(m, 1);
  }
  for (const LinPerPF& h : g) {
    std::vector<IndexSet> row;
    for (const IndexSet& s : a) {
      const std::array<Grid, 3> grids{out.f.grid(), h.grid(), s.grid()};
      const Grid grid = commonGrid(grids);
      const std::array<LinPerPF, 2> refined{out.f.refined(grid), h.refined(grid)};
      IndexSet wins = IndexSet::tabulate(grid, stableBlock(refined),
                                         [&](Nat n) { return s.contains(n) && *out.f.at(n) > *h.at(n); });
      if (!wins.isInfinite()) throw std::logic_error("diagonalize: certificate construction failed");
      row.push_back(std::move(wins));
    }
    out.certified.push_back(std::move(row));
  }
  return out;
}

bool verifyDiagonal(const LinPerPF& f, const std::vector<LinPerPF>& g, const std::vector<IndexSet>& a) {
  for (const LinPerPF& h : g)
    for (const IndexSet& s : a) {
      // f ≤ h almost everywhere on s exactly when h+1 >* f on s.
      if (pfn::gtStar(pfn::restrict(pfn::plusConstant(h, 1), s), f)) return false;
    }
  return true;
}

ScaleWitness::ScaleWitness(std::vector<LinPerPF> chain, Nat multiplier)
    : chain_(std::move(chain)), multiplier_(multiplier) {
  if (chain_.empty()) throw PreconditionError("scaleWitness: empty chain");
  for (const LinPerPF& f : chain_)
    if (!f.isTotal()) throw PreconditionError("scaleWitness: chain functions must be total");
  for (std::size_t i = 1; i < chain_.size(); ++i) {
    if (!pfn::leqStar(pfn::scaled(chain_[i - 1], 2), chain_[i]))
      throw PreconditionError("scaleWitness: element " + std::to_string(i) + " does not dominate twice its predecessor");
    if (pfn::leqStar(chain_[i], chain_[i - 1]))
      throw PreconditionError("scaleWitness: chain is not strictly increasing at " + std::to_string(i));
  }
}

Nat ScaleWitness::levelOf(const LinPerPF& f) const {
  for (Nat i = 0; i < chain_.size(); ++i)
    if (pfn::leqStar(f, chain_[i])) return i;
  throw Unmatched("scaleWitness: function lies above the whole chain");
}

LinPerPF ScaleWitness::operator()(const LinPerPF& f) const { return pfn::scaled(chain_[levelOf(f)], multiplier_); }

ScaleWitness scaleWitness(std::vector<LinPerPF> chain, Nat multiplier) {
  return ScaleWitness(std::move(chain), multiplier);
}

std::vector<LinPerPF> enumerationWitness(const FactorCatalog& cat, const std::vector<PointRadius>& corpus) {
  std::vector<LinPerPF> out;
  for (std::size_t alpha = 0; alpha < corpus.size(); ++alpha) {
    std::vector<LinPerPF> doubled;
    std::vector<IndexSet> sets;
    for (std::size_t beta = 0; beta < alpha; ++beta) {
      doubled.push_back(pfn::scaled(corpus[beta].f, 2));
      IndexSet m = mSet(cat, corpus[beta].x, corpus[beta].f, corpus[alpha].x);
      if (m.isInfinite()) sets.push_back(std::move(m));
    }
    const LinPerPF fPrime = diagonalize(doubled, sets).f;
    out.push_back(pfn::scaled(pfn::maxFn(corpus[alpha].f, fPrime), 2));
  }
  return out;
}

Json encode(const Rational& q) { return {{"num", q.numerator()}, {"den", q.denominator()}}; }

Rational decodeRational(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (!j.is_object() || !j.contains("num") || !j.contains("den") || !j.at("num").is_number_integer() ||
      !j.at("den").is_number_integer())
    throw SchemaError("rational: expected {\"num\":..,\"den\":..}");
  const auto den = j.at("den").get<std::int64_t>();
  if (den == 0) throw SchemaError("rational: zero denominator");
  return Rational(j.at("num").get<std::int64_t>(), den);
}

namespace {

Json encodeIds(const std::vector<PointId>& ids) {
  Json out = Json::array();
  for (PointId p : ids) out.push_back(p == kOmega ? Json("omega") : Json(p));
  return out;
}

std::vector<PointId> decodeIds(const Json& j) {
  if (!j.is_array()) throw SchemaError("metric point: expected an array of ids");
  std::vector<PointId> out;
  for (const Json& e : j) {
    if (e == "omega") out.push_back(kOmega);
    else out.push_back(static_cast<PointId>(readNat(e, "point id")));
  }
  return out;
}

std::vector<Nat> decodeNats(const Json& j, const char* what) {
  if (!j.is_array()) throw SchemaError(std::string(what) + ": expected an array");
  std::vector<Nat> out;
  for (const Json& e : j) out.push_back(readNat(e, what));
  return out;
}

}  // namespace

Json encode(const FactorCatalog& cat) {
  Json factors = Json::array();
  for (const Factor& f : cat.factors) {
    if (f.kind == Factor::Kind::OmegaPlusOne) {
      factors.push_back({{"kind", "omega+1"}});
      continue;
    }
    Json rows = Json::array();
    for (const auto& row : f.dist) {
      Json r = Json::array();
      for (const Rational& q : row) r.push_back(encode(q));
      rows.push_back(r);
    }
    factors.push_back({{"kind", "finite"}, {"dist", rows}});
  }
  return {{"factors", factors}, {"layout", {{"prefix", cat.layout.prefix()}, {"cycle", cat.layout.cycle()}}}};
}

FactorCatalog decodeCatalog(const Json& j) {
  if (!j.is_object() || !j.contains("factors")) throw SchemaError("catalog: missing \"factors\"");
  FactorCatalog cat;
  try {
    for (const Json& f : j.at("factors")) {
      const std::string kind = f.value("kind", "");
      if (kind == "omega+1") {
        cat.factors.push_back(Factor::omegaPlusOne());
      } else if (kind == "finite") {
        std::vector<std::vector<Rational>> d;
        for (const Json& row : f.at("dist")) {
          std::vector<Rational> r;
          for (const Json& q : row) r.push_back(decodeRational(q));
          d.push_back(std::move(r));
        }
        cat.factors.push_back(Factor::finite(std::move(d)));
      } else {
        throw SchemaError("catalog: unknown factor kind \"" + kind + "\"");
      }
    }
    if (j.contains("layout")) {
      const Json& l = j.at("layout");
      auto cycle = decodeNats(l.at("cycle"), "layout cycle");
      auto prefix = l.contains("prefix") ? decodeNats(l.at("prefix"), "layout prefix") : std::vector<Nat>{};
      if (cycle.empty()) throw SchemaError("catalog: layout cycle must not be empty");
      cat.layout = Periodic<Nat>(std::move(prefix), std::move(cycle));
    } else {
      cat.layout = Periodic<Nat>::constant(0);
    }
    cat.validate();
  } catch (const PreconditionError& e) {
    throw SchemaError(e.what());
  } catch (const Json::exception& e) {
    throw SchemaError(std::string("catalog: ") + e.what());
  }
  return cat;
}

Json encode(const MetricPoint& x) { return {{"prefix", encodeIds(x.prefix())}, {"cycle", encodeIds(x.cycle())}}; }

MetricPoint decodeMetricPoint(const Json& j) {
  if (!j.is_object() || !j.contains("cycle")) throw SchemaError("metric point: missing \"cycle\"");
  auto cycle = decodeIds(j.at("cycle"));
  if (cycle.empty()) throw SchemaError("metric point: cycle must not be empty");
  auto prefix = j.contains("prefix") ? decodeIds(j.at("prefix")) : std::vector<PointId>{};
  return MetricPoint(std::move(prefix), std::move(cycle));
}

Json encode(const MetricPairCheck& c) {
  return {{"i", c.i},           {"j", c.j},
          {"case", c.proofCase}, {"premise", c.premise},
          {"gDisjoint", c.gDisjoint}, {"claimHolds", c.claimHolds},
          {"violated", c.violated()}};
}

}  // namespace deltakit::variants
