#include <doctest.h>

#include "deltakit/fi.hpp"
#include "deltakit/gen.hpp"
#include "deltakit/nabla.hpp"

using namespace deltakit;
using namespace deltakit::nabla;
using pfn::LinPerPF;

namespace {

NablaPoint pt(const LinPerPF& x) { return NablaPoint(x); }
LinPerPF evens(Affine a) { return LinPerPF::periodic({a, std::nullopt}); }
LinPerPF odds(Affine a) { return LinPerPF::periodic({std::nullopt, a}); }
LinPerPF c(Nat v) { return LinPerPF::constant(v); }

}  // namespace

TEST_CASE("precedes examples") {
  CHECK(precedes(pt(LinPerPF::identity()), top()));
  CHECK(precedes(top(), top()));
  CHECK_FALSE(precedes(top(), pt(LinPerPF::identity())));
  CHECK(precedes(pt(c(0)), pt(evens(Affine{0, 0}))));
  CHECK_FALSE(precedes(pt(evens(Affine{0, 0})), pt(c(0))));
}

TEST_CASE("meet examples") {
  const NablaPoint x = pt(LinPerPF({2}, {Affine{1, 3}, std::nullopt}));
  CHECK(meet(x, x) == x);
  CHECK(meet(pt(evens(Affine{0, 0})), pt(odds(Affine{0, 0}))) == pt(c(0)));
  CHECK(meet(pt(c(0)), pt(evens(Affine{0, 0}))) == pt(c(0)));
  CHECK_THROWS_AS(meet(pt(c(0)), pt(c(1))), Incompatible);
}

TEST_CASE("inNbhd examples") {
  const NablaPoint x = pt(evens(Affine{1, 0}));
  CHECK(inNbhd(x, Nbhd(x, LinPerPF::identity())));
  CHECK(inNbhd(pt(c(7)), Nbhd(top(), c(5))));
  CHECK_FALSE(inNbhd(pt(c(3)), Nbhd(top(), c(5))));
  CHECK_THROWS_AS(Nbhd(x, evens(Affine{1, 0})), PreconditionError);
}

TEST_CASE("nbhdsIntersect examples") {
  const Nbhd n(pt(evens(Affine{1, 0})), c(4));
  CHECK(nbhdsIntersect(n, n));
  const Nbhd nx(pt(evens(Affine{1, 0})), c(0));
  const Nbhd ny(pt(odds(Affine{1, 0})), c(0));
  CHECK(nbhdsIntersect(nx, ny));
  const Nbhd tight(pt(evens(Affine{1, 0})), LinPerPF::periodic({Affine{1, 0}, Affine{1, 1}}));
  CHECK_FALSE(nbhdsIntersect(tight, ny));
  CHECK_FALSE(nbhdsIntersect(Nbhd(pt(c(0)), c(0)), Nbhd(pt(c(1)), c(0))));
}

TEST_CASE("halvesCheck examples") {
  const Nbhd one(pt(evens(Affine{1, 0})), c(0));
  CHECK(halvesCheck({one}, {one}).empty());

  const NablaPoint x = pt(evens(Affine{1, 1}));
  const NablaPoint y = pt(odds(Affine{1, 1}));
  const std::vector<Nbhd> t{Nbhd(x, c(0)), Nbhd(y, c(0))};
  const std::vector<Nbhd> sWeak{Nbhd(x, c(0)), Nbhd(y, c(0))};
  const auto bad = halvesCheck(t, sWeak);
  REQUIRE(bad.size() == 1);
  CHECK(bad[0] == Violation{0, 1, bad[0].from});

  const std::vector<Nbhd> sFi{Nbhd(x, fi::witnessFiF(x.rep())), Nbhd(y, fi::witnessFiF(y.rep()))};
  CHECK(halvesCheck(t, sFi).empty());
}

TEST_CASE("mnAxiomCheck examples") {
  const NablaPoint x = pt(evens(Affine{1, 1}));
  const NablaPoint y = pt(odds(Affine{1, 1}));
  const MNOperator adversarial = synthesizeMN({x, y}, [](const LinPerPF&) { return c(0); });
  const MNOperator witnessed = synthesizeMN({x, y}, [](const LinPerPF& v) { return fi::witnessFiF(v); });
  const std::vector<MNQuery> q{{0, Nbhd(x, c(0)), 1, Nbhd(y, c(0))}};
  CHECK(mnAxiomCheck(adversarial, q).size() == 1);
  CHECK(mnAxiomCheck(witnessed, q).empty());

  // Disjoint base boxes.
  const std::vector<MNQuery> far{{0, Nbhd(x, c(0)), 1, Nbhd(y, LinPerPF::identity())}};
  CHECK(mnAxiomCheck(adversarial, far).empty());

  const std::vector<MNQuery> wrongCentre{{0, Nbhd(y, c(0)), 1, Nbhd(y, c(0))}};
  CHECK_THROWS_AS(mnAxiomCheck(adversarial, wrongCentre), PreconditionError);
  CHECK_FALSE(adversarial.warnings.empty());
}

TEST_CASE("order and meet properties on generated pairs") {
  gen::Rng rng(13);
  gen::Shape shape;
  shape.maxCut = 12;
  shape.maxValue = 6;
  int compatibleSeen = 0;
  for (int i = 0; i < 400; ++i) {
    auto [xr, yr] = gen::compatiblePair(rng, shape);
    const NablaPoint x = pt(xr), y = pt(yr);
    CHECK(precedes(x, x));
    CHECK(precedes(x, top()));
    if (!pfn::compatible(xr, yr)) continue;
    ++compatibleSeen;
    const NablaPoint m = meet(x, y);
    CHECK(precedes(m, x));
    CHECK(precedes(m, y));
    CHECK(meet(y, x) == m);

    const LinPerPF fx = gen::total(rng, shape);
    const LinPerPF fy = gen::total(rng, shape);
    const Nbhd nx(x, fx), ny(y, fy);
    CHECK(nbhdsIntersect(nx, ny) == (inNbhd(m, nx) && inNbhd(m, ny)));
    CHECK(nbhdsIntersect(nx, ny) == nbhdsIntersect(ny, nx));

    // Monotonicity along a chain m ⪯ z ⪯ x built from the meet.
    const NablaPoint z = pt(pfn::graphUnion(x.rep(), pfn::restrict(pfn::diff(m.rep(), x.rep()),
                                                                      gen::indexSet(rng, 6, 4, 50))));
    CHECK(precedes(m, z));
    CHECK(precedes(z, x));
    if (inNbhd(m, nx)) CHECK(inNbhd(z, nx));
  }
  CHECK(compatibleSeen > 300);
}

TEST_CASE("precedes is transitive on a small family") {
  gen::Rng rng(3);
  gen::Shape shape;
  shape.maxValue = 3;
  std::vector<NablaPoint> fam;
  const LinPerPF base = gen::total(rng, shape);
  for (int i = 0; i < 14; ++i) fam.push_back(pt(pfn::restrict(base, gen::indexSet(rng, 4, 3, 60))));
  for (const auto& a : fam)
    for (const auto& b : fam)
      for (const auto& d : fam)
        if (precedes(a, b) && precedes(b, d)) CHECK(precedes(a, d));
}

TEST_CASE("JSON round trip") {
  const Nbhd n(pt(evens(Affine{1, 0})), c(4));
  const Nbhd back = decodeNbhd(encode(n));
  CHECK(back.center == n.center);
  CHECK(graphEqual(back.radius, n.radius));
  CHECK_THROWS_AS(decodeNbhd(Json::parse(R"({"center":{}})")), SchemaError);
}
