#include <doctest.h>

#include "deltakit/gen.hpp"
#include "deltakit/pfn.hpp"
#include "support/window.hpp"

using namespace deltakit;
using namespace deltakit::pfn;

namespace {

constexpr Nat kHorizon = 160;

LinPerPF evensHalf() { return LinPerPF::periodic({Affine{1, 0}, std::nullopt}); }
LinPerPF oddsHalf() { return LinPerPF::periodic({std::nullopt, Affine{1, 0}}); }
LinPerPF fiveThreeFourTwo() { return LinPerPF::finite({5, 3, 4, 2}); }

LinPerPF edited(LinPerPF x, std::vector<std::pair<Nat, Value>> edits) {
  Nat cut = x.cut();
  for (auto& [n, v] : edits) cut = std::max(cut, n + 1);
  std::vector<Value> prefix(cut);
  for (Nat n = 0; n < cut; ++n) prefix[n] = x.at(n);
  for (auto& [n, v] : edits) prefix[n] = v;
  return LinPerPF(std::move(prefix), x.refined({cut, x.period()}).classes());
}

// Sampled graph of x over [0, H) as a set of points.
bool sameOnWindow(const LinPerPF& x, const LinPerPF& y, Nat h = kHorizon) {
  return window::sample(x, h) == window::sample(y, h);
}

}  // namespace

TEST_CASE("eqModFinite examples") {
  CHECK(eqModFinite(LinPerPF::constant(0), edited(LinPerPF::constant(0), {{4, 7}})));
  CHECK_FALSE(eqModFinite(LinPerPF::identity(), LinPerPF::constant(0)));
  const LinPerPF y = edited(evensHalf(), {{0, std::nullopt}, {1, 9}, {6, 1}});
  CHECK(eqModFinite(evensHalf(), y));
}

TEST_CASE("diff examples") {
  const LinPerPF x = LinPerPF({4, std::nullopt}, {Affine{2, 1}, std::nullopt, Affine{0, 3}});
  CHECK(diff(x, x).isEmpty());
  CHECK(graphEqual(diff(x, LinPerPF::undefined()), x));
  const LinPerPF d = diff(LinPerPF::identity(), LinPerPF::constant(5));
  CHECK(d.at(5) == std::nullopt);
  for (Nat n = 0; n < kHorizon; ++n)
    if (n != 5) CHECK(d.at(n) == Value{n});
}

TEST_CASE("gtStar examples") {
  CHECK(gtStar(LinPerPF::identity(), LinPerPF::constant(0)));
  CHECK_FALSE(gtStar(LinPerPF::constant(3), LinPerPF::identity()));
  const LinPerPF x = LinPerPF::periodic({Affine{1, 1}, std::nullopt});
  const LinPerPF h = LinPerPF::periodic({Affine{1, 0}, Affine{1, 0}});
  CHECK(gtStar(x, h));
  CHECK_THROWS_AS(gtStar(x, evensHalf()), PreconditionError);
}

TEST_CASE("compatible and switches examples") {
  CHECK(compatible(evensHalf(), oddsHalf()));
  CHECK_FALSE(compatible(LinPerPF::constant(0), LinPerPF::constant(1)));
  CHECK(compatible(LinPerPF::identity(), edited(LinPerPF::identity(), {{2, 9}, {3, 0}})));

  CHECK(switches(evensHalf(), oddsHalf()));
  CHECK_FALSE(switches(evensHalf(), LinPerPF::periodic({Affine{1, 0}, Affine{0, 0}})));
  CHECK_FALSE(switches(LinPerPF::constant(0), LinPerPF::constant(1)));
}

TEST_CASE("maxFn examples") {
  const LinPerPF f = LinPerPF({3, 1}, {Affine{1, 0}, Affine{2, 2}});
  CHECK(graphEqual(maxFn(f, f), f));
  CHECK(graphEqual(maxFn(LinPerPF::constant(0), LinPerPF::identity()), LinPerPF::identity()));
  const LinPerPF m = maxFn(LinPerPF::identity(), LinPerPF::constant(5));
  for (Nat n = 0; n < kHorizon; ++n) CHECK(*m.at(n) == std::max<Nat>(n, 5));
  CHECK_THROWS_AS(maxFn(evensHalf(), LinPerPF::identity()), PreconditionError);
}

TEST_CASE("perp examples") {
  CHECK(graphEqual(perp(LinPerPF::identity()), LinPerPF::identity()));
  CHECK(graphEqual(perp(fiveThreeFourTwo()), LinPerPF::finite({std::nullopt, std::nullopt, std::nullopt, 2})));

  const LinPerPF x = LinPerPF::periodic({Affine{1, 5}, Affine{1, 0}});
  const LinPerPF p = perp(x);
  const window::Seq oracle = window::perp(window::sample(x, 64), 40);
  CHECK(window::prefixOf(window::sample(p, 40), 40) == oracle);
  CHECK(eqModFinite(diff(x, p), LinPerPF::periodic({Affine{1, 5}, std::nullopt})));
  CHECK(eqModFinite(p, oddsHalf()));
}

TEST_CASE("decPrefix examples") {
  CHECK(decPrefix(LinPerPF::identity()).domain() == std::vector<Nat>{0});
  const FinitePF d = decPrefix(fiveThreeFourTwo());
  CHECK(d.domain() == std::vector<Nat>{0, 1, 3});
  CHECK(d.at(0) == Value{5});
  CHECK(d.at(1) == Value{3});
  CHECK(d.at(3) == Value{2});
  CHECK(decPrefix(LinPerPF::constant(7)).domain() == std::vector<Nat>{0});
  CHECK_THROWS_AS(decPrefix(LinPerPF::undefined()), PreconditionError);
}

TEST_CASE("blocksDec examples") {
  const std::vector<FinitePF> inc = blocksDec(LinPerPF::identity(), 5);
  REQUIRE(inc.size() == 5);
  for (Nat i = 0; i < 5; ++i) CHECK(inc[i].domain() == std::vector<Nat>{i});

  const LinPerPF x({5, 3, 4, 2}, {Affine{1, 6}});
  const std::vector<FinitePF> b = blocksDec(x, 2);
  CHECK(b[0].domain() == std::vector<Nat>{0, 1, 3});
  CHECK(b[1].domain().front() == 2);
  CHECK(b[1].at(2) == Value{4});

  for (const FinitePF& blk : blocksDec(LinPerPF::constant(0), 4)) CHECK(blk.domain().size() == 1);
  CHECK_THROWS_AS(blocksDec(fiveThreeFourTwo(), 6), PreconditionError);
}

TEST_CASE("nextInDom examples") {
  CHECK(nextInDom(evensHalf(), 3) == 4);
  CHECK(nextInDom(LinPerPF::identity(), 9) == 10);
  std::vector<Value> prefix(8);
  prefix[5] = 1;
  const LinPerPF x(prefix, {std::nullopt, Affine{1, 0}});
  CHECK(nextInDom(x, 5) == 9);
  CHECK_THROWS_AS(nextInDom(fiveThreeFourTwo(), 3), PreconditionError);
}

TEST_CASE("properties on generated functions") {
  gen::Rng rng(2024);
  for (int i = 0; i < 400; ++i) {
    const LinPerPF x = gen::linPer(rng, {});
    const LinPerPF y = i % 3 == 0 ? gen::perturbPrefix(rng, x, 4, 12) : gen::linPer(rng, {});
    const window::Seq sx = window::sample(x, kHorizon);

    // perp matches the exhaustive window check well below the horizon.
    const LinPerPF p = perp(x);
    CHECK(isIncreasing(p));
    CHECK(isSubgraph(p, x));
    const Nat safe = std::min<Nat>(kHorizon, certificateHorizon(std::vector<LinPerPF>{x}));
    const window::Seq big = window::sample(x, safe + 4 * kHorizon);
    CHECK(window::sample(p, safe) == window::perp(big, safe));
    for (Nat m = 0; m < safe; ++m) CHECK(perpContains(x, m) == p.at(m).has_value());

    if (!x.isEmpty()) {
      const FinitePF d = decPrefix(x);
      const window::Seq oracle = window::dec(sx);
      for (Nat n = 0; n < kHorizon; ++n) CHECK(d.at(n) == oracle[n]);
    }

    // diff and intersection partition x.
    const LinPerPF dxy = diff(x, y);
    const LinPerPF ixy = intersection(x, y);
    CHECK(graphEqual(graphUnion(dxy, ixy), x));
    CHECK(sameOnWindow(graphUnion(dxy, ixy), x));
    CHECK(intersection(dxy, ixy).isEmpty());

    CHECK(switches(x, y) == switches(y, x));
    if (switches(x, y)) {
      CHECK(compatible(x, y));
      CHECK(dxy.hasInfiniteDomain());
      CHECK(diff(y, x).hasInfiniteDomain());
    }
    CHECK(eqModFinite(x, y) == eqModFinite(y, x));
    CHECK(eqModFinite(x, x.canonical()));
  }
}

TEST_CASE("gtStar agrees with the window check past the certificate") {
  gen::Rng rng(99);
  for (int i = 0; i < 400; ++i) {
    const LinPerPF x = gen::linPer(rng, {});
    const LinPerPF h = gen::total(rng, {});
    auto [ok, cert] = gtStarCertified(x, h);
    CHECK(ok == gtStar(x, h));
    const Nat t = std::max(cert.from, certificateHorizon(std::vector<LinPerPF>{x, h}));
    bool windowOk = true;
    for (Nat n = t; n < t + kHorizon; ++n) {
      const Value v = x.at(n);
      if (v && *v <= *h.at(n)) windowOk = false;
    }
    CHECK(ok == windowOk);
    if (ok) {
      for (Nat n = cert.from; n < cert.from + kHorizon; ++n)
        if (x.at(n)) CHECK(*x.at(n) > *h.at(n));
    } else {
      REQUIRE(cert.kind == "infinitely-often");
      REQUIRE_FALSE(cert.residues.empty());
      for (Nat k = 0; k < 20; ++k) {
        const Nat n = cert.grid.index(cert.residues.front(), k);
        CHECK(x.at(n).has_value());
        CHECK(*x.at(n) <= *h.at(n));
      }
    }
  }
}

TEST_CASE("eqModFinite is an equivalence on a small family") {
  gen::Rng rng(5);
  std::vector<LinPerPF> fam;
  for (int i = 0; i < 10; ++i) {
    fam.push_back(gen::linPer(rng, {}));
    fam.push_back(gen::perturbPrefix(rng, fam.back(), 3, 12));
  }
  for (const auto& a : fam) {
    CHECK(eqModFinite(a, a));
    for (const auto& b : fam)
      for (const auto& c : fam)
        if (eqModFinite(a, b) && eqModFinite(b, c)) CHECK(eqModFinite(a, c));
  }
}
