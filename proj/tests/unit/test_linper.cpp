#include <doctest.h>

#include "deltakit/gen.hpp"
#include "deltakit/json_io.hpp"
#include "deltakit/linper.hpp"
#include "support/window.hpp"

using namespace deltakit;
using pfn::LinPerPF;

namespace {

LinPerPF evensHalf() { return LinPerPF::periodic({Affine{1, 0}, std::nullopt}); }

}  // namespace

TEST_CASE("evalAt follows the prefix/tail formula") {
  CHECK(LinPerPF::constant(0).at(17) == Value{0});
  CHECK(LinPerPF::undefined().at(3) == std::nullopt);
  CHECK(evensHalf().at(10) == Value{5});
  CHECK(evensHalf().at(11) == std::nullopt);

  const LinPerPF x({3, std::nullopt, 9}, {Affine{2, 1}, std::nullopt});
  CHECK(x.at(0) == Value{3});
  CHECK(x.at(1) == std::nullopt);
  CHECK(x.at(3) == Value{1});
  CHECK(x.at(7) == Value{5});
  CHECK(x.at(8) == std::nullopt);
}

TEST_CASE("refinement and canonical form preserve the graph") {
  gen::Rng rng(7);
  for (int i = 0; i < 300; ++i) {
    const LinPerPF x = gen::linPer(rng, {});
    const Grid target{x.cut() + gen::uniform(rng, 0, 9), x.period() * gen::uniform(rng, 1, 4)};
    const LinPerPF r = x.refined(target);
    const LinPerPF c = x.canonical();
    CHECK(window::sample(r, 200) == window::sample(x, 200));
    CHECK(window::sample(c, 200) == window::sample(x, 200));
    CHECK(c.cut() <= x.cut());
    CHECK(x.period() % c.period() == 0);
    CHECK(c.canonical() == c);
    CHECK(r.canonical() == c);
  }
}

TEST_CASE("canonical form minimizes period and cut") {
  const LinPerPF twoClasses = LinPerPF::periodic({Affine{2, 0}, Affine{2, 1}});
  CHECK(twoClasses.canonical() == LinPerPF::identity());

  const LinPerPF shifted({0, 1, 2, 3}, {Affine{1, 4}});
  CHECK(shifted.canonical() == LinPerPF::identity());

  const LinPerPF edited({0, 7}, {Affine{0, 0}});
  CHECK(edited.canonical().cut() == 2);
  CHECK(graphEqual(LinPerPF({std::nullopt}, {std::nullopt}), LinPerPF::undefined()));
}

TEST_CASE("domain predicates") {
  CHECK(LinPerPF::identity().isTotal());
  CHECK_FALSE(evensHalf().isTotal());
  CHECK(evensHalf().hasInfiniteDomain());
  CHECK(LinPerPF::finite({1, 2}).isTotal() == false);
  CHECK_FALSE(LinPerPF::finite({1, 2}).hasInfiniteDomain());
  CHECK(LinPerPF::finite({std::nullopt}).isEmpty());
  CHECK_THROWS_AS(LinPerPF({}, {}), PreconditionError);
}

TEST_CASE("certificate horizon settles every pairwise comparison") {
  const LinPerPF x = LinPerPF::identity();
  const LinPerPF y = LinPerPF::constant(5);
  const std::vector<LinPerPF> both{x, y};
  const Nat h = certificateHorizon(both);
  CHECK(h > 5);
  for (Nat n = h; n < h + 50; ++n) CHECK(*x.at(n) > *y.at(n));
}

TEST_CASE("JSON encoding round-trips to a graph-equal value") {
  gen::Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    const LinPerPF x = gen::linPer(rng, {});
    const Json j = encode(x);
    const LinPerPF back = decodeLinPer(j);
    CHECK(graphEqual(back, x));
    CHECK(encode(back) == j);
  }
}

TEST_CASE("JSON decoding enforces the schema") {
  Json ok = encode(LinPerPF({1, std::nullopt}, {Affine{1, 2}}));
  CHECK_NOTHROW(decodeLinPer(ok));
  Json missingPrefix = ok;
  missingPrefix["prefix"] = Json::array();
  CHECK_THROWS_AS(decodeLinPer(missingPrefix), SchemaError);
  Json badKind = ok;
  badKind["classes"][0]["kind"] = "cubic";
  CHECK_THROWS_AS(decodeLinPer(badKind), SchemaError);
  Json negative = ok;
  negative["classes"][0]["b"] = -1;
  CHECK_THROWS_AS(decodeLinPer(negative), SchemaError);

  const pfn::FinitePF f({Value{2}, std::nullopt, Value{0}}, 1);
  CHECK(decodeFinite(encode(f)) == f);
  CHECK(encode(f)["entries"] == Json::parse("[[0,2],[2,0]]"));
}
