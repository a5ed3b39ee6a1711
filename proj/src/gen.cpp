#include "deltakit/gen.hpp"

#include <algorithm>

#include "deltakit/fi.hpp"
#include "deltakit/pfn.hpp"

namespace deltakit::gen {

Nat uniform(Rng& rng, Nat lo, Nat hi) {
  if (hi <= lo) return lo;
  return lo + rng() % (hi - lo + 1);
}

bool chance(Rng& rng, Nat percent) { return uniform(rng, 0, 99) < percent; }

namespace {

pfn::LinPerPF build(Rng& rng, const Shape& s, bool total, bool forceInfinite) {
  const Nat period = uniform(rng, 1, s.maxPeriod);
  const Nat cut = uniform(rng, 0, s.maxCut);
  std::vector<Value> prefix(cut);
  for (Value& v : prefix)
    if (total || !chance(rng, s.undefinedPercent)) v = uniform(rng, 0, s.maxValue);
  std::vector<TailClass> classes(period);
  for (TailClass& c : classes)
    if (total || !chance(rng, s.undefinedPercent)) c = Affine{uniform(rng, 0, s.maxSlope), uniform(rng, 0, s.maxValue)};
  if (forceInfinite && std::none_of(classes.begin(), classes.end(), [](const TailClass& c) { return c.has_value(); }))
    classes[uniform(rng, 0, period - 1)] = Affine{uniform(rng, 0, s.maxSlope), uniform(rng, 0, s.maxValue)};
  return pfn::LinPerPF(std::move(prefix), std::move(classes));
}

}  // namespace

pfn::LinPerPF linPer(Rng& rng, const Shape& shape) { return build(rng, shape, false, false); }
pfn::LinPerPF total(Rng& rng, const Shape& shape) { return build(rng, shape, true, true); }

pfn::LinPerPF sparse(Rng& rng, const Shape& shape) {
  Shape s = shape;
  s.maxValue = std::min<Nat>(s.maxValue, 4);
  s.maxSlope = std::min<Nat>(s.maxSlope, 1);
  s.undefinedPercent = std::max<Nat>(s.undefinedPercent, 50);
  return build(rng, s, false, true);
}

pfn::LinPerPF perturbPrefix(Rng& rng, const pfn::LinPerPF& x, Nat edits, Nat maxValue) {
  if (x.cut() == 0) return x;
  std::vector<Value> prefix = x.prefix();
  for (Nat i = 0; i < edits; ++i) {
    Value& v = prefix[uniform(rng, 0, x.cut() - 1)];
    v = chance(rng, 30) ? Value{} : Value{uniform(rng, 0, maxValue)};
  }
  return pfn::LinPerPF(std::move(prefix), x.classes());
}

IndexSet indexSet(Rng& rng, Nat maxCut, Nat maxPeriod, Nat percent) {
  std::vector<char> prefix(uniform(rng, 0, maxCut));
  for (char& c : prefix) c = chance(rng, percent);
  std::vector<char> cycle(uniform(rng, 1, maxPeriod));
  for (char& c : cycle) c = chance(rng, percent);
  return IndexSet(Periodic<char>(std::move(prefix), std::move(cycle)));
}

std::pair<pfn::LinPerPF, pfn::LinPerPF> compatiblePair(Rng& rng, const Shape& shape) {
  const pfn::LinPerPF base = total(rng, shape);
  const IndexSet a = indexSet(rng, shape.maxCut / 2, shape.maxPeriod, 55);
  const IndexSet b = indexSet(rng, shape.maxCut / 2, shape.maxPeriod, 55);
  pfn::LinPerPF x = perturbPrefix(rng, pfn::restrict(base, a), uniform(rng, 0, 3), shape.maxValue);
  pfn::LinPerPF y = perturbPrefix(rng, pfn::restrict(base, b), uniform(rng, 0, 3), shape.maxValue);
  return {std::move(x), std::move(y)};
}

pfn::LinPerPF fiPlus(Rng& rng, const Shape& shape, Nat maxHeight) {
  for (;;) {
    pfn::LinPerPF x = chance(rng, 50) ? linPer(rng, shape) : total(rng, shape);
    if (x.isEmpty()) continue;
    try {
      if (fi::isFIplus(x, maxHeight)) return x;
    } catch (const fi::HeightExceeded&) {
    }
  }
}

}  // namespace deltakit::gen
