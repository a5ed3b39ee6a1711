#include <doctest.h>

#include "deltakit/fi.hpp"
#include "deltakit/oracle.hpp"

using namespace deltakit;
using namespace deltakit::oracle;

namespace {

FinitePF fin(std::vector<Value> v, Nat t = 0) { return FinitePF(std::move(v), t); }

SearchConfig small(Nat n, Nat v) {
  SearchConfig cfg;
  cfg.horizon = n;
  cfg.valueBound = v;
  return cfg;
}

// All functions on [0, n) with values below v, in no particular order.
std::vector<std::vector<Value>> literalUniverse(Nat n, Nat v) {
  std::vector<std::vector<Value>> out{{}};
  for (Nat i = 0; i < n; ++i) {
    std::vector<std::vector<Value>> next;
    for (const auto& s : out) {
      auto u = s;
      u.push_back(std::nullopt);
      next.push_back(u);
      for (Nat k = 0; k < v; ++k) {
        auto d = s;
        d.push_back(k);
        next.push_back(d);
      }
    }
    out = std::move(next);
  }
  return out;
}

}  // namespace

TEST_CASE("universe enumeration") {
  CHECK(universeSize(small(2, 2)) == 9);
  CHECK(enumeratePFs(small(2, 2)).size() == 9);
  CHECK(enumeratePFs(small(0, 3)).size() == 1);
  CHECK(universeSize(small(8, 4)) == 390625);

  // domain bitmask first, then values
  const auto all = enumeratePFs(small(2, 2));
  CHECK(all[0].isEmpty());
  CHECK(all[1].at(0) == Value(0));
  CHECK(!all[1].at(1));
  CHECK(all[2].at(0) == Value(1));
  CHECK(all[8].at(0) == Value(1));
  CHECK(all[8].at(1) == Value(1));

  SearchConfig sized = small(3, 2);
  sized.minDomain = sized.maxDomain = 2;
  CHECK(enumeratePFs(sized).size() == 12);

  SearchConfig tight = small(8, 4);
  tight.budget = 1000;
  CHECK_THROWS_AS(enumeratePFs(tight), BudgetExceeded);

  SearchConfig random = small(6, 3);
  random.mode = Mode::Random;
  random.budget = 50;
  random.seed = 7;
  const auto a = enumeratePFs(random), b = enumeratePFs(random);
  REQUIRE(a.size() == 50);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].values() == b[i].values());
}

TEST_CASE("brute-force primitives") {
  const FinitePF x = fin({5, 3, 4, 2});
  CHECK(brutePerp(x).values() == std::vector<Value>{std::nullopt, std::nullopt, std::nullopt, 2});
  CHECK(bruteDec(x).values() == std::vector<Value>{5, 3, std::nullopt, 2});

  const FinitePF e = fin({0, std::nullopt, 2, std::nullopt});
  const FinitePF o = fin({0, 1, std::nullopt, 3});
  CHECK(bruteCompatible(e, o));
  CHECK(bruteSwitch(e, o));
  CHECK_FALSE(bruteSwitch(e, e));
  CHECK_FALSE(bruteCompatible(e, fin({1, 1, 2, 3})));
  // disagreement below the threshold is ignored
  CHECK(bruteCompatible(fin({0, 1}, 1), fin({1, 1}, 1)));

  CHECK(bruteGtStar(fin({3, std::nullopt, 4}), fin({2, 9, 3})));
  CHECK_FALSE(bruteGtStar(fin({3, std::nullopt, 4}), fin({2, 9, 4})));
  CHECK(brutePrecedes(fin({0, 1, 2, 3}), e));
  CHECK_FALSE(brutePrecedes(o, e));

  const FinitePF m = finiteMeet(e, o);
  CHECK(m.values() == std::vector<Value>{0, 1, 2, 3});
}

TEST_CASE("meet is the greatest lower bound on a small universe") {
  const auto universe = enumeratePFs(small(3, 2));
  Nat applicable = 0;
  for (const auto& x : universe)
    for (const auto& y : universe) {
      const GlbVerdict v = bruteMeetGLB(x, y, universe);
      applicable += v.applicable;
      CHECK(v.holds());
    }
  // compatible ordered pairs: (V+1)^0 * (3V+1)^N
  CHECK(applicable == 343);
}

TEST_CASE("exhaustive Delta(FI) counts match a literal double loop") {
  const Nat n = 4, v = 3;
  const auto fns = literalUniverse(n, v);
  Nat switching = 0, violatedByZero = 0;
  for (const auto& x : fns)
    for (const auto& y : fns) {
      bool compatible = true, xOnly = false, yOnly = false, xBig = true, yBig = true;
      for (Nat i = 0; i < n; ++i) {
        if (x[i] && y[i] && *x[i] != *y[i]) compatible = false;
        if (x[i] && !y[i]) xOnly = true, xBig = xBig && *x[i] > 0;
        if (y[i] && !x[i]) yOnly = true, yBig = yBig && *y[i] > 0;
      }
      if (!compatible || !xOnly || !yOnly) continue;
      ++switching;
      violatedByZero += xBig && yBig;
    }
  REQUIRE(switching == 5454);
  REQUIRE(violatedByZero == 1760);

  const Report good = searchCounterexample(Principle::DeltaFI, constructiveWitness(), small(n, v));
  CHECK(good.checked == switching);
  CHECK(good.violationCount == 0);
  CHECK(good.clean());

  SearchConfig capped = small(n, v);
  capped.maxRecorded = 5;
  const Report bad = searchCounterexample(Principle::DeltaFI, constantWitness(0), capped);
  CHECK(bad.checked == switching);
  CHECK(bad.violationCount == violatedByZero);
  CHECK(bad.violations.size() == 5);
}

TEST_CASE("exhaustive compatible-pair count with a threshold") {
  SearchConfig cfg = small(3, 2);
  cfg.threshold = 1;
  const Report r = searchCounterexample(Principle::DeltaFI, constructiveWitness(), cfg);
  // (V+1)^(2t) * (3V+1)^(N-t)
  CHECK(r.config.at("compatible_pairs") == 9 * 49);
  CHECK(r.clean());
}

TEST_CASE("reports do not depend on the worker count") {
  SearchConfig cfg;
  cfg.mode = Mode::Random;
  cfg.seed = 11;
  cfg.budget = 40;
  cfg.corpusSize = 3;
  for (Principle p : {Principle::DeltaFI, Principle::Halving, Principle::MNAxiom}) {
    cfg.workers = 1;
    const std::string one = encode(searchCounterexample(p, constantWitness(0), cfg)).dump();
    cfg.workers = 3;
    const std::string three = encode(searchCounterexample(p, constantWitness(0), cfg)).dump();
    CHECK(one == three);
    CHECK(one == encode(searchCounterexample(p, constantWitness(0), cfg)).dump());
  }
  CHECK(instanceSeed(1, 0) != instanceSeed(1, 1));
  CHECK(instanceSeed(1, 0) != instanceSeed(2, 0));
}

TEST_CASE("constructive witnesses survive the random searches") {
  SearchConfig cfg;
  cfg.mode = Mode::Random;
  cfg.seed = 5;
  cfg.budget = 60;
  CHECK(searchCounterexample(Principle::DeltaFI, constructiveWitness(), cfg).clean());
  CHECK(searchCounterexample(Principle::Halving, constructiveWitness(), cfg).clean());
  CHECK(searchCounterexample(Principle::MNAxiom, constructiveWitness(), cfg).clean());
  CHECK_FALSE(searchCounterexample(Principle::DeltaAKappa, constantWitness(0), cfg).clean());
  CHECK_THROWS_AS(searchCounterexample(Principle::DeltaAKappa, constructiveWitness(), cfg), WitnessUndefined);
  CHECK_THROWS_AS(searchCounterexample(Principle::DeltaAlpha, constructiveWitness(), cfg), WitnessUndefined);
}

TEST_CASE("principle and witness names") {
  for (Principle p : {Principle::DeltaFI, Principle::DeltaAKappa, Principle::DeltaAlpha, Principle::DeltaMetric,
                      Principle::Halving, Principle::MNAxiom})
    CHECK(parsePrinciple(principleName(p)) == p);
  CHECK_FALSE(parsePrinciple("delta"));
  CHECK(namedWitness("fi")->name == "constructive");
  CHECK(namedWitness("constant-4")->name == "constant-4");
  CHECK_FALSE(namedWitness("constant-x"));
  CHECK_FALSE(namedWitness("greedy"));
}

TEST_CASE("symbolic and brute checks agree") {
  const DiffReport d = oracleDiff(3, 60, 2);
  CHECK(d.disagreements.empty());
  CHECK(d.checked.at("perp") == 60);
  CHECK(d.checked.at("nbhd") == 60);
  CHECK(encode(d).dump() == encode(oracleDiff(3, 60, 1)).dump());
}
