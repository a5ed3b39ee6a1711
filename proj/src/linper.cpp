#include "deltakit/linper.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace deltakit {

namespace {
constexpr Nat kMaxPeriod = Nat{1} << 20;
}

Grid commonGrid(std::span<const Grid> grids) {
  Grid g;
  for (const Grid& h : grids) {
    g.cut = std::max(g.cut, h.cut);
    g.period = std::lcm(g.period, h.period);
    if (g.period > kMaxPeriod) throw std::overflow_error("common period exceeds 2^20");
  }
  return g;
}

namespace pfn {

LinPerPF::LinPerPF() : classes_{TailClass{}} {}

LinPerPF::LinPerPF(std::vector<Value> prefix, std::vector<TailClass> classes)
    : prefix_(std::move(prefix)), classes_(std::move(classes)) {
  if (classes_.empty()) throw PreconditionError("LinPerPF: period must be at least 1");
  if (classes_.size() > kMaxPeriod) throw PreconditionError("LinPerPF: period too large");
}

LinPerPF LinPerPF::constant(Nat c) { return LinPerPF({}, {Affine{0, c}}); }
LinPerPF LinPerPF::identity() { return LinPerPF({}, {Affine{1, 0}}); }
LinPerPF LinPerPF::periodic(std::vector<TailClass> classes) { return LinPerPF({}, std::move(classes)); }
LinPerPF LinPerPF::finite(std::vector<Value> values) { return LinPerPF(std::move(values), {TailClass{}}); }

Value LinPerPF::at(Nat n) const {
  if (n < cut()) return prefix_[n];
  const Grid g = grid();
  const TailClass& c = classes_[g.residue(n)];
  if (!c) return std::nullopt;
  return c->at(g.block(n));
}

bool LinPerPF::isTotal() const {
  return std::all_of(prefix_.begin(), prefix_.end(), [](const Value& v) { return v.has_value(); }) &&
         std::all_of(classes_.begin(), classes_.end(), [](const TailClass& c) { return c.has_value(); });
}

bool LinPerPF::hasInfiniteDomain() const {
  return std::any_of(classes_.begin(), classes_.end(), [](const TailClass& c) { return c.has_value(); });
}

bool LinPerPF::isEmpty() const {
  return !hasInfiniteDomain() &&
         std::none_of(prefix_.begin(), prefix_.end(), [](const Value& v) { return v.has_value(); });
}

Nat LinPerPF::maxIntercept() const {
  Nat m = 0;
  for (const TailClass& c : classes_)
    if (c) m = std::max(m, c->intercept);
  return m;
}

LinPerPF LinPerPF::refined(Grid target) const {
  if (target.cut < cut() || target.period % period() != 0)
    throw PreconditionError("refined: target grid does not refine this function's grid");
  std::vector<Value> prefix(prefix_);
  prefix.reserve(target.cut);
  for (Nat n = cut(); n < target.cut; ++n) prefix.push_back(at(n));
  const Nat m = target.period / period();
  std::vector<TailClass> classes(target.period);
  for (Nat r = 0; r < target.period; ++r) {
    const Nat offset = target.cut - cut() + r;
    const TailClass& old = classes_[offset % period()];
    if (!old) continue;
    const Nat q = offset / period();
    classes[r] = Affine{old->slope * m, old->slope * q + old->intercept};
  }
  return LinPerPF(std::move(prefix), std::move(classes));
}

LinPerPF LinPerPF::advanced(Nat blocks) const { return refined({cut() + period() * blocks, period()}); }

namespace {

// Tries to express the tail with period d (a divisor of p) at the same cut.
std::optional<std::vector<TailClass>> mergeClasses(const std::vector<TailClass>& classes, Nat d) {
  const Nat p = classes.size();
  const Nat m = p / d;
  std::vector<TailClass> merged(d);
  for (Nat s = 0; s < d; ++s) {
    const TailClass& base = classes[s];
    if (!base) {
      for (Nat i = 1; i < m; ++i)
        if (classes[s + d * i]) return std::nullopt;
      continue;
    }
    if (base->slope % m != 0) return std::nullopt;
    const Nat a = base->slope / m;
    for (Nat i = 1; i < m; ++i) {
      const TailClass& c = classes[s + d * i];
      if (!c || c->slope != base->slope || c->intercept != base->intercept + a * i) return std::nullopt;
    }
    merged[s] = Affine{a, base->intercept};
  }
  return merged;
}

}  // namespace

LinPerPF LinPerPF::canonical() const {
  std::vector<TailClass> classes = classes_;
  const Nat p = period();
  for (Nat d = 1; d < p; ++d) {
    if (p % d != 0) continue;
    if (auto merged = mergeClasses(classes, d)) {
      classes = std::move(*merged);
      break;
    }
  }
  std::vector<Value> prefix = prefix_;
  // Extend the tail leftward while the prefix entry matches class p-1 at block -1.
  while (!prefix.empty()) {
    const TailClass& last = classes.back();
    const Value& entry = prefix.back();
    TailClass shifted;
    if (last) {
      if (last->intercept < last->slope) break;
      shifted = Affine{last->slope, last->intercept - last->slope};
      if (entry != Value{shifted->intercept}) break;
    } else if (entry) {
      break;
    }
    prefix.pop_back();
    classes.pop_back();
    classes.insert(classes.begin(), shifted);
  }
  return LinPerPF(std::move(prefix), std::move(classes));
}

bool graphEqual(const LinPerPF& x, const LinPerPF& y) { return x.canonical() == y.canonical(); }

Nat stableBlock(std::span<const LinPerPF> refined) {
  Nat m = 0;
  for (const LinPerPF& x : refined) m = std::max(m, x.maxIntercept());
  return m + 1;
}

Nat commonPeriod(std::span<const LinPerPF> xs) {
  std::vector<Grid> grids;
  for (const LinPerPF& x : xs) grids.push_back(x.grid());
  return commonGrid(grids).period;
}

Nat certificateHorizon(std::span<const LinPerPF> xs) {
  std::vector<Grid> grids;
  for (const LinPerPF& x : xs) grids.push_back(x.grid());
  const Grid g = commonGrid(grids);
  std::vector<LinPerPF> refined;
  for (const LinPerPF& x : xs) refined.push_back(x.refined(g));
  return g.index(0, stableBlock(refined));
}

std::string describe(const LinPerPF& x) {
  std::ostringstream os;
  os << "[";
  for (Nat n = 0; n < x.cut(); ++n) {
    if (n) os << ' ';
    if (x.prefix()[n]) os << *x.prefix()[n]; else os << '_';
  }
  os << " | p=" << x.period() << ":";
  for (const TailClass& c : x.classes()) {
    if (c) os << ' ' << c->slope << "k+" << c->intercept; else os << " _";
  }
  os << "]";
  return os.str();
}

FinitePF::FinitePF(std::vector<Value> values, Nat threshold) : values_(std::move(values)), threshold_(threshold) {
  if (threshold_ > values_.size()) throw PreconditionError("FinitePF: threshold exceeds horizon");
}

bool FinitePF::isEmpty() const {
  return std::none_of(values_.begin(), values_.end(), [](const Value& v) { return v.has_value(); });
}

std::vector<Nat> FinitePF::domain() const {
  std::vector<Nat> d;
  for (Nat n = 0; n < horizon(); ++n)
    if (values_[n]) d.push_back(n);
  return d;
}

FinitePF truncate(const LinPerPF& x, Nat horizon, Nat threshold) {
  std::vector<Value> v(horizon);
  for (Nat n = 0; n < horizon; ++n) v[n] = x.at(n);
  return FinitePF(std::move(v), threshold);
}

LinPerPF toLinPer(const FinitePF& x) { return LinPerPF::finite(x.values()).canonical(); }

}  // namespace pfn
}  // namespace deltakit
