#include "deltakit/pfn.hpp"

#include <algorithm>
#include <array>
#include <limits>

namespace deltakit::pfn {

namespace {

using Wide = __int128;

struct Aligned {
  Grid grid;
  LinPerPF x;
  LinPerPF y;
  Nat stable;  // first block with settled comparisons
};

Aligned align(const LinPerPF& x, const LinPerPF& y) {
  const std::array<Grid, 2> grids{x.grid(), y.grid()};
  const Grid g = commonGrid(grids);
  LinPerPF xr = x.refined(g);
  LinPerPF yr = y.refined(g);
  const std::array<LinPerPF, 2> both{xr, yr};
  const Nat k = stableBlock(both);
  return {g, std::move(xr), std::move(yr), k};
}

void requireTotal(const LinPerPF& f, const char* op) {
  if (!f.isTotal()) throw PreconditionError(std::string(op) + ": argument must be a total function");
}

// True iff x∖y has infinite domain; x, y already on a common grid.
bool diffInfiniteAligned(const LinPerPF& x, const LinPerPF& y) {
  for (Nat r = 0; r < x.period(); ++r) {
    const TailClass& a = x.classes()[r];
    const TailClass& b = y.classes()[r];
    if (a && (!b || *a != *b)) return true;
  }
  return false;
}

}  // namespace

Value evalAt(const LinPerPF& x, Nat n) { return x.at(n); }

LinPerPF combine(const LinPerPF& x, const LinPerPF& y, const std::function<Value(Value, Value)>& fn) {
  const Aligned al = align(x, y);
  const Nat cut = al.grid.index(0, al.stable);
  const Nat p = al.grid.period;
  std::vector<Value> prefix(cut);
  for (Nat n = 0; n < cut; ++n) prefix[n] = fn(x.at(n), y.at(n));
  std::vector<TailClass> classes(p);
  for (Nat r = 0; r < p; ++r) {
    std::array<Value, 3> v;
    for (Nat k = 0; k < 3; ++k) {
      const Nat n = cut + p * k + r;
      v[k] = fn(x.at(n), y.at(n));
    }
    if (!v[0]) {
      if (v[1] || v[2]) throw std::logic_error("combine: tail class is not eventually uniform");
      continue;
    }
    if (!v[1] || !v[2] || *v[1] < *v[0] || *v[2] - *v[1] != *v[1] - *v[0])
      throw std::logic_error("combine: tail class is not eventually affine");
    classes[r] = Affine{*v[1] - *v[0], *v[0]};
  }
  return LinPerPF(std::move(prefix), std::move(classes)).canonical();
}

bool eqModFinite(const LinPerPF& x, const LinPerPF& y) {
  const Aligned al = align(x, y);
  return al.x.classes() == al.y.classes();
}

LinPerPF diff(const LinPerPF& x, const LinPerPF& y) {
  return combine(x, y, [](Value a, Value b) -> Value { return (a && a != b) ? a : std::nullopt; });
}

LinPerPF intersection(const LinPerPF& x, const LinPerPF& y) {
  return combine(x, y, [](Value a, Value b) -> Value { return (a && a == b) ? a : std::nullopt; });
}

LinPerPF graphUnion(const LinPerPF& x, const LinPerPF& y) {
  return combine(x, y, [](Value a, Value b) -> Value {
    if (a && b && *a != *b) throw PreconditionError("graphUnion: functions disagree on a common index");
    return a ? a : b;
  });
}

LinPerPF restrict(const LinPerPF& x, const IndexSet& keep) {
  const std::array<Grid, 2> grids{x.grid(), keep.grid()};
  const Grid g = commonGrid(grids);
  const LinPerPF xr = x.refined(g);
  std::vector<Value> prefix(g.cut);
  for (Nat n = 0; n < g.cut; ++n) prefix[n] = keep.contains(n) ? x.at(n) : std::nullopt;
  std::vector<TailClass> classes(g.period);
  for (Nat r = 0; r < g.period; ++r)
    if (keep.contains(g.index(r, 0))) classes[r] = xr.classes()[r];
  return LinPerPF(std::move(prefix), std::move(classes)).canonical();
}

LinPerPF removeIndices(const LinPerPF& x, const std::vector<Nat>& indices) {
  if (indices.empty()) return x;
  const Nat top = *std::max_element(indices.begin(), indices.end());
  const Nat blocks = top < x.cut() ? 0 : (top - x.cut()) / x.period() + 1;
  const LinPerPF ext = x.advanced(blocks);
  std::vector<Value> prefix = ext.prefix();
  for (Nat n : indices) prefix[n] = std::nullopt;
  return LinPerPF(std::move(prefix), ext.classes()).canonical();
}

bool isSubgraph(const LinPerPF& x, const LinPerPF& y) { return diff(x, y).isEmpty(); }

std::pair<bool, Certificate> gtStarCertified(const LinPerPF& x, const LinPerPF& h) {
  requireTotal(h, "gtStar");
  const Aligned al = align(x, h);
  const Grid tail{al.grid.index(0, al.stable), al.grid.period};
  Certificate cert;
  cert.grid = tail;
  for (Nat r = 0; r < al.grid.period; ++r) {
    const TailClass& a = al.x.classes()[r];
    if (!a) continue;
    const Affine& b = *al.y.classes()[r];
    const bool eventuallyAbove = a->slope > b.slope || (a->slope == b.slope && a->intercept > b.intercept);
    if (!eventuallyAbove) cert.residues.push_back(r);
  }
  if (!cert.residues.empty()) {
    cert.kind = "infinitely-often";
    cert.note = "x(n) <= h(n) on the listed residue classes";
    return {false, cert};
  }
  cert.kind = "eventually";
  for (Nat n = 0; n < tail.cut; ++n) {
    const Value v = x.at(n);
    if (v && *v <= *h.at(n)) cert.from = n + 1;
  }
  cert.note = "x(n) > h(n) for every n >= from in dom x";
  return {true, cert};
}

bool gtStar(const LinPerPF& x, const LinPerPF& h) { return gtStarCertified(x, h).first; }

bool leqStar(const LinPerPF& f, const LinPerPF& g) {
  requireTotal(f, "leqStar");
  requireTotal(g, "leqStar");
  const Aligned al = align(f, g);
  for (Nat r = 0; r < al.grid.period; ++r) {
    const Affine& a = *al.x.classes()[r];
    const Affine& b = *al.y.classes()[r];
    if (a.slope > b.slope || (a.slope == b.slope && a.intercept > b.intercept)) return false;
  }
  return true;
}

bool compatible(const LinPerPF& x, const LinPerPF& y) {
  const Aligned al = align(x, y);
  for (Nat r = 0; r < al.grid.period; ++r) {
    const TailClass& a = al.x.classes()[r];
    const TailClass& b = al.y.classes()[r];
    if (a && b && *a != *b) return false;
  }
  return true;
}

bool switches(const LinPerPF& x, const LinPerPF& y) {
  const Aligned al = align(x, y);
  bool agree = true;
  for (Nat r = 0; r < al.grid.period; ++r) {
    const TailClass& a = al.x.classes()[r];
    const TailClass& b = al.y.classes()[r];
    if (a && b && *a != *b) agree = false;
  }
  return agree && diffInfiniteAligned(al.x, al.y) && diffInfiniteAligned(al.y, al.x);
}

LinPerPF maxFn(const LinPerPF& f, const LinPerPF& g) {
  requireTotal(f, "maxFn");
  requireTotal(g, "maxFn");
  return combine(f, g, [](Value a, Value b) -> Value { return std::max(*a, *b); });
}

LinPerPF scaled(const LinPerPF& f, Nat c) {
  requireTotal(f, "scaled");
  return combine(f, LinPerPF::undefined(), [c](Value a, Value) -> Value { return *a * c; });
}

LinPerPF plusConstant(const LinPerPF& f, Nat c) {
  requireTotal(f, "plusConstant");
  return combine(f, LinPerPF::undefined(), [c](Value a, Value) -> Value { return *a + c; });
}

namespace {

// Blocks k of tail class r whose point is a perp point; hi == nullopt means unbounded.
struct BlockRange {
  bool empty = false;
  Nat lo = 0;
  std::optional<Nat> hi;

  bool contains(Nat k) const { return !empty && k >= lo && (!hi || k <= *hi); }
  bool eventual() const { return !empty && !hi; }
};

BlockRange perpRange(const LinPerPF& x, Nat r) {
  BlockRange range;
  const TailClass& own = x.classes()[r];
  if (!own) {
    range.empty = true;
    return range;
  }
  // Later points of class s start at block k (s > r) or k+1 (s <= r); tails
  // are nondecreasing, so only the first later point of each class matters:
  // (a_s - a_r) k + c >= 0 with c = b_s - b_r + [s <= r] a_s.
  for (Nat s = 0; s < x.period(); ++s) {
    const TailClass& other = x.classes()[s];
    if (!other) continue;
    const Wide d = Wide(other->slope) - Wide(own->slope);
    const Wide c = Wide(other->intercept) - Wide(own->intercept) + (s <= r ? Wide(other->slope) : 0);
    if (d > 0) {
      if (c < 0) range.lo = std::max<Nat>(range.lo, static_cast<Nat>((-c + d - 1) / d));
    } else if (d == 0) {
      if (c < 0) range.empty = true;
    } else {
      if (c < 0) {
        range.empty = true;
      } else {
        const Nat bound = static_cast<Nat>(c / -d);
        range.hi = range.hi ? std::min(*range.hi, bound) : bound;
      }
    }
  }
  if (range.hi && *range.hi < range.lo) range.empty = true;
  return range;
}

Nat tailMinimum(const LinPerPF& x) {
  Nat m = std::numeric_limits<Nat>::max();
  for (const TailClass& c : x.classes())
    if (c) m = std::min(m, c->intercept);
  return m;
}

}  // namespace

bool perpContains(const LinPerPF& x, Nat m) {
  const Value v = x.at(m);
  if (!v) return false;
  if (m >= x.cut()) {
    const Grid g = x.grid();
    return perpRange(x, g.residue(m)).contains(g.block(m));
  }
  for (Nat n = m + 1; n < x.cut(); ++n) {
    const Value w = x.at(n);
    if (w && *w < *v) return false;
  }
  return *v <= tailMinimum(x);
}

LinPerPF perp(const LinPerPF& x) {
  std::vector<BlockRange> ranges;
  Nat settle = 0;
  for (Nat r = 0; r < x.period(); ++r) {
    ranges.push_back(perpRange(x, r));
    const BlockRange& br = ranges.back();
    if (br.empty) continue;
    settle = std::max(settle, br.hi ? *br.hi + 1 : br.lo);
  }
  const LinPerPF ext = x.advanced(settle);
  std::vector<Value> prefix(ext.cut());
  for (Nat n = 0; n < ext.cut(); ++n) prefix[n] = perpContains(x, n) ? x.at(n) : std::nullopt;
  std::vector<TailClass> classes(x.period());
  for (Nat r = 0; r < x.period(); ++r)
    if (ranges[r].eventual()) classes[r] = ext.classes()[r];
  return LinPerPF(std::move(prefix), std::move(classes)).canonical();
}

FinitePF decPrefix(const LinPerPF& x) {
  // Tail classes are nondecreasing, so no point after the first tail block can
  // undercut an earlier one.
  const Nat end = x.cut() + x.period();
  std::vector<Value> out;
  std::optional<Nat> runningMin;
  for (Nat n = 0; n < end; ++n) {
    const Value v = x.at(n);
    if (!v) continue;
    if (!runningMin || *v < *runningMin) {
      out.resize(n + 1);
      out[n] = v;
      runningMin = v;
    }
  }
  if (!runningMin) throw PreconditionError("decPrefix: empty domain");
  return FinitePF(std::move(out));
}

std::vector<FinitePF> blocksDec(const LinPerPF& x, Nat m) {
  std::vector<FinitePF> blocks;
  LinPerPF rest = x;
  for (Nat i = 0; i < m; ++i) {
    if (rest.isEmpty()) throw PreconditionError("blocksDec: domain exhausted before the requested block count");
    FinitePF block = decPrefix(rest);
    rest = removeIndices(rest, block.domain());
    blocks.push_back(std::move(block));
  }
  return blocks;
}

Nat nextInDom(const LinPerPF& x, Nat n) {
  const Nat end = std::max(n + 1, x.cut()) + x.period();
  for (Nat m = n + 1; m < end; ++m)
    if (x.at(m)) return m;
  throw PreconditionError("nextInDom: no domain element above " + std::to_string(n));
}

bool isIncreasing(const LinPerPF& x) { return graphEqual(perp(x), x); }

}  // namespace deltakit::pfn
