#include <doctest.h>

#include "deltakit/colored.hpp"
#include "deltakit/gen.hpp"
#include "deltakit/metric.hpp"
#include "deltakit/ordinal.hpp"

using namespace deltakit;
using namespace deltakit::variants;
using pfn::LinPerPF;

namespace {

LinPerPF evens(Affine a) { return LinPerPF::periodic({a, std::nullopt}); }
LinPerPF odds(Affine a) { return LinPerPF::periodic({std::nullopt, a}); }
LinPerPF c(Nat v) { return LinPerPF::constant(v); }

const Ord kOmegaTwoPlusOne{2, 1};
const Ord w{1, 0};

OrdinalPF ordConst(Ord v) { return OrdinalPF::constant(v, kOmegaTwoPlusOne); }
OrdinalPF ordPeriodic(Ord even, Ord odd) {
  return OrdinalPF({}, {OrdTail{even.q, Affine{0, even.r}}, OrdTail{odd.q, Affine{0, odd.r}}}, kOmegaTwoPlusOne);
}

MetricPoint pointConst(PointId p) { return MetricPoint::constant(p); }
MetricPoint pointPeriodic(PointId even, PointId odd) { return MetricPoint({}, {even, odd}); }

}  // namespace

TEST_CASE("colored switch and the A(kappa) conclusion") {
  const ColoredPF x(evens(Affine{0, 0}), 3);
  const ColoredPF y(odds(Affine{0, 1}), 3);
  CHECK(switchColored(x, y));
  const DeltaVerdict v = checkDeltaAKappa(x, y, FiniteSetSeq::constant({1}), FiniteSetSeq::constant({}));
  CHECK(v.kind == VerdictKind::Holds);
  CHECK(v.certificate.residues == std::vector<Nat>{1});
  CHECK(checkDeltaAKappa(x, y, FiniteSetSeq::constant({2}), FiniteSetSeq::constant({})).violated());

  const ColoredPF sub(evens(Affine{0, 0}), 3);
  const ColoredPF super(LinPerPF::periodic({Affine{0, 0}, Affine{0, 2}}), 3);
  CHECK(checkDeltaAKappa(sub, super, {}, {}).kind == VerdictKind::NotSwitching);

  CHECK_THROWS_AS(ColoredPF(LinPerPF::identity(), 3), PreconditionError);
  CHECK_THROWS_AS(FiniteSetSeq(Periodic<FiniteSetSeq::Set>({}, {{2, 1}})), PreconditionError);
}

TEST_CASE("unbounded palette matches the plain switch relation") {
  gen::Rng rng(8);
  gen::Shape shape;
  shape.maxValue = 5;
  for (int i = 0; i < 500; ++i) {
    auto [x, y] = i % 2 ? gen::compatiblePair(rng, shape) : std::pair{gen::sparse(rng, shape), gen::sparse(rng, shape)};
    CHECK(switchColored(ColoredPF(x, 0), ColoredPF(y, 0)) == pfn::switches(x, y));
  }
}

TEST_CASE("growing colours leave finite witness sets") {
  const ColoredPF x(evens(Affine{1, 0}), 0);
  const ColoredPF y(odds(Affine{1, 0}), 0);
  const FiniteSetSeq small = FiniteSetSeq::constant({0, 1, 2, 3});
  CHECK(checkDeltaAKappa(x, y, small, small).violated());
}

TEST_CASE("ordinal switch and the Delta(alpha) conclusion") {
  const OrdinalPF x = ordConst(w);
  const OrdinalPF y = ordPeriodic({0, 0}, {2, 0});
  CHECK(switchOrdinal(x, y));
  CHECK(switchOrdinal(y, x));
  const DeltaVerdict v = checkDeltaAlpha(x, y, ordConst({0, 5}), ordConst({1, 3}));
  CHECK(v.holds());
  CHECK(v.kind == VerdictKind::HoldsLeft);
  CHECK(checkDeltaAlpha(x, y, ordConst({0, 0}), ordConst({0, 0})).violated());

  const OrdinalPF iso1 = ordPeriodic({0, 3}, {0, 4});
  const OrdinalPF iso2 = ordPeriodic({0, 5}, {0, 4});
  CHECK_FALSE(switchOrdinal(iso1, iso2));

  CHECK_THROWS_AS(OrdinalPF::constant({2, 1}, kOmegaTwoPlusOne), PreconditionError);
  CHECK_THROWS_AS(OrdinalPF({}, {OrdTail{2, Affine{1, 0}}}, kOmegaTwoPlusOne), PreconditionError);
  CHECK_NOTHROW(OrdinalPF({}, {OrdTail{1, Affine{1, 0}}}, kOmegaTwoPlusOne));
}

TEST_CASE("ordinal order and neighbourhoods") {
  const OrdinalPF x = ordPeriodic(w, {0, 4});
  CHECK(precedesOrdinal(ordPeriodic({0, 2}, {0, 4}), x));
  CHECK_FALSE(precedesOrdinal(ordPeriodic({0, 2}, {0, 3}), x));
  CHECK_FALSE(precedesOrdinal(ordPeriodic({1, 1}, {0, 4}), x));

  const OrdinalPF f = ordConst({0, 2});
  CHECK(inNbhdOrdinal(ordPeriodic({0, 2}, {0, 4}), x, f));
  CHECK_FALSE(inNbhdOrdinal(ordPeriodic({0, 1}, {0, 4}), x, f));
  CHECK(inNbhdOrdinal(x, x, f));
  // N(x, c_0) is the down-set of x.
  const OrdinalPF zero = ordConst({0, 0});
  CHECK(inNbhdOrdinal(ordPeriodic({0, 0}, {0, 4}), x, zero));
  CHECK_THROWS_AS(inNbhdOrdinal(x, x, ordConst(w)), PreconditionError);

  const Json j = encode(x);
  const OrdinalPF back = decodeOrdinal(j);
  for (Nat n = 0; n < 20; ++n) CHECK(back.at(n) == x.at(n));
}

TEST_CASE("metric balls and M-sets over omega+1") {
  const Factor s = Factor::omegaPlusOne();
  CHECK(s.distance(kOmega, 3) == Rational(1, 4));
  CHECK(s.distance(1, 3) == Rational(1, 4));
  CHECK(inBall(s, kOmega, 1, 1));
  CHECK_FALSE(inBall(s, kOmega, 1, 0));
  CHECK_FALSE(inBall(s, 4, 100, 5));
  CHECK_THROWS_AS(inBall(s, 4, 0, 4), ZeroRadius);

  const FactorCatalog cat = FactorCatalog::allOmegaPlusOne();
  const MetricPoint x = pointConst(kOmega);
  CHECK(mSet(cat, x, c(1), x).isEmpty());
  CHECK_FALSE(switchMetric(cat, {x, c(1)}, {x, c(1)}));

  const MetricPoint y = MetricPoint({0, 5, 0}, {0, 3, kOmega});
  const IndexSet m = mSet(cat, x, c(1), y);
  for (Nat n = 0; n < 40; ++n) CHECK(m.contains(n) == (y.at(n) == 0));

  // Growing radius: every finite coordinate eventually leaves the ball at ω.
  CHECK(setEqual(mSet(cat, x, pfn::plusConstant(LinPerPF::identity(), 1), pointConst(7)),
                 IndexSet::tabulate({7, 1}, 0, [](Nat n) { return n >= 7; })));
  CHECK_THROWS_AS(mSet(cat, x, c(0), y), ZeroRadius);
}

TEST_CASE("finite metric factors are discrete") {
  const Factor tri = Factor::finite({{0, 1, 2}, {1, 0, 1}, {2, 1, 0}});
  CHECK(tri.isolated(0));
  CHECK_FALSE(inBall(tri, 0, 1, 1));
  CHECK(ballsDisjoint(tri, 0, 1, 1, 1));
  CHECK_THROWS_AS(Factor::finite({{0, 1, 5}, {1, 0, 1}, {5, 1, 0}}), PreconditionError);
  const FactorCatalog cat{{Factor::omegaPlusOne(), tri}, Periodic<Nat>({}, {0, 1})};
  CHECK_NOTHROW(mSet(cat, pointPeriodic(kOmega, 2), c(2), pointPeriodic(3, 1)));
  CHECK_THROWS_AS(mSet(cat, pointPeriodic(kOmega, kOmega), c(2), pointConst(0)), PreconditionError);
  const FactorCatalog back = decodeCatalog(encode(cat));
  CHECK(back.factors.size() == 2);
  CHECK(back.factors[1].dist == tri.dist);
}

TEST_CASE("metric switch and Delta conclusion") {
  const FactorCatalog cat = FactorCatalog::allOmegaPlusOne();
  // x is ω on evens and 10 on odds; y the other way round.
  const PointRadius a{pointPeriodic(kOmega, 10), c(1)};
  const PointRadius b{pointPeriodic(10, kOmega), c(1)};
  CHECK(switchMetric(cat, a, b));
  CHECK(checkDeltaMetric(cat, a, b, c(23), c(23)).holds());
  CHECK(checkDeltaMetric(cat, a, b, c(22), c(22)).violated());
  CHECK(checkDeltaMetric(cat, a, b, pfn::plusConstant(LinPerPF::identity(), 1), c(12)).holds());
}

TEST_CASE("diagonalize") {
  const IndexSet ev = IndexSet::progression(0, 2);
  const IndexSet od = IndexSet::progression(1, 2);
  const LinPerPF g = LinPerPF({4, 0}, {Affine{2, 1}});
  const Diagonal one = diagonalize({g}, {ev});
  CHECK(graphEqual(one.f, pfn::plusConstant(g, 1)));
  CHECK(setEqual(one.certified[0][0], ev));

  const Diagonal two = diagonalize({c(0), LinPerPF::identity()}, {od});
  CHECK(eqModFinite(two.f, pfn::plusConstant(LinPerPF::identity(), 1)));
  CHECK(verifyDiagonal(two.f, {c(0), LinPerPF::identity()}, {od}));
  CHECK_FALSE(verifyDiagonal(c(3), {LinPerPF::identity()}, {od}));

  CHECK(graphEqual(diagonalize({}, {ev}).f, c(1)));
  CHECK_THROWS_AS(diagonalize({g}, {IndexSet::finite({1, 2})}), PreconditionError);

  gen::Rng rng(12);
  for (int i = 0; i < 50; ++i) {
    std::vector<LinPerPF> gs;
    std::vector<IndexSet> as;
    for (int k = 0; k < 20; ++k) gs.push_back(gen::total(rng, {}));
    while (as.size() < 20) {
      IndexSet s = gen::indexSet(rng, 10, 6, 40);
      if (s.isInfinite()) as.push_back(s);
    }
    const Diagonal d = diagonalize(gs, as);
    CHECK(verifyDiagonal(d.f, gs, as));
  }
}

TEST_CASE("scale witness") {
  const std::vector<LinPerPF> chain{c(1), c(3), LinPerPF::identity(), pfn::scaled(LinPerPF::identity(), 3)};
  const ScaleWitness sw = scaleWitness(chain);
  CHECK(graphEqual(sw(c(0)), c(2)));
  CHECK(graphEqual(sw(LinPerPF::identity()), pfn::scaled(LinPerPF::identity(), 2)));
  CHECK(sw.levelOf(c(2)) == 1);
  CHECK_THROWS_AS(sw(pfn::scaled(LinPerPF::identity(), 4)), Unmatched);
  CHECK_THROWS_AS(scaleWitness({c(3), c(4)}), PreconditionError);
}

TEST_CASE("enumeration witness") {
  const FactorCatalog cat = FactorCatalog::allOmegaPlusOne();
  const PointRadius single{pointConst(kOmega), c(3)};
  const auto f1 = enumerationWitness(cat, {single});
  CHECK(graphEqual(f1[0], c(6)));

  // Switching pair whose radii are large against the isolated coordinates.
  const PointRadius a{pointPeriodic(kOmega, 3), c(3)};
  const PointRadius b{pointPeriodic(3, kOmega), c(3)};
  REQUIRE(switchMetric(cat, a, b));
  const auto f2 = enumerationWitness(cat, {a, b});
  CHECK(checkDeltaMetric(cat, a, b, f2[0], f2[1]).holds());
}

TEST_CASE("enumeration witness on isolated coordinates close to the limit") {
  // x0 = (ω, 10) and x1 = (10, ω), radii 1. The recursion yields F = 2 and 6,
  // and 1/2 + 1/6 is not below d(10, ω) = 1/11 anywhere.
  const FactorCatalog cat = FactorCatalog::allOmegaPlusOne();
  const PointRadius a{pointPeriodic(kOmega, 10), c(1)};
  const PointRadius b{pointPeriodic(10, kOmega), c(1)};
  const auto f = enumerationWitness(cat, {a, b});
  CHECK(graphEqual(f[0], c(2)));
  CHECK(graphEqual(f[1], c(6)));
  CHECK(checkDeltaMetric(cat, a, b, f[0], f[1]).violated());
  const auto checks = metricMNCheck(metricMNOperator(cat, {a, b}, f), {{0, 1}});
  CHECK(checks[0].proofCase == 3);
  CHECK_FALSE(checks[0].gDisjoint);
}

TEST_CASE("metric MN check cases") {
  const FactorCatalog cat = FactorCatalog::allOmegaPlusOne();
  const PointRadius a{pointPeriodic(kOmega, 3), c(3)};
  const PointRadius b{pointPeriodic(3, kOmega), c(3)};
  const PointRadius same = a;
  const PointRadius apart{pointConst(3), c(1)};
  const PointRadius other{pointConst(4), c(1)};
  const std::vector<PointRadius> corpus{a, b, same, apart, other};
  const auto op = metricMNOperator(cat, corpus, enumerationWitness(cat, corpus));
  const auto checks = metricMNCheck(op, {{0, 2}, {0, 1}, {3, 4}});
  CHECK(checks[0].proofCase == 1);
  CHECK_FALSE(checks[0].violated());
  CHECK(checks[1].proofCase == 3);
  CHECK_FALSE(checks[1].violated());
  CHECK(checks[2].proofCase == 2);
  CHECK(checks[2].gDisjoint);
  CHECK(checks[2].claimHolds);
}
