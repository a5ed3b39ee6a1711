#include <array>

#include "deltakit/periodic.hpp"

namespace deltakit {

IndexSet IndexSet::progression(Nat start, Nat period) {
  if (period == 0) throw PreconditionError("progression: period must be positive");
  std::vector<char> prefix(start, 0);
  std::vector<char> cycle(period, 0);
  cycle[0] = 1;
  return IndexSet(Periodic<char>(std::move(prefix), std::move(cycle))).canonical();
}

IndexSet IndexSet::finite(const std::vector<Nat>& members) {
  Nat top = 0;
  for (Nat m : members) top = std::max(top, m + 1);
  std::vector<char> prefix(top, 0);
  for (Nat m : members) prefix[m] = 1;
  return IndexSet(Periodic<char>(std::move(prefix), {0})).canonical();
}

IndexSet IndexSet::domainOf(const pfn::LinPerPF& x) {
  std::vector<char> prefix, cycle;
  for (const Value& v : x.prefix()) prefix.push_back(v ? 1 : 0);
  for (const TailClass& c : x.classes()) cycle.push_back(c ? 1 : 0);
  return IndexSet(Periodic<char>(std::move(prefix), std::move(cycle))).canonical();
}

IndexSet IndexSet::tabulate(Grid grid, Nat stable, const std::function<bool(Nat)>& pred) {
  const Nat cut = grid.index(0, stable);
  std::vector<char> prefix(cut), cycle(grid.period);
  for (Nat n = 0; n < cut; ++n) prefix[n] = pred(n) ? 1 : 0;
  for (Nat r = 0; r < grid.period; ++r) cycle[r] = pred(cut + r) ? 1 : 0;
  return IndexSet(Periodic<char>(std::move(prefix), std::move(cycle))).canonical();
}

bool IndexSet::isInfinite() const {
  const auto& c = bits_.cycle();
  return std::find(c.begin(), c.end(), 1) != c.end();
}

bool IndexSet::isEmpty() const {
  const auto& p = bits_.prefix();
  return !isInfinite() && std::find(p.begin(), p.end(), 1) == p.end();
}

std::vector<Nat> IndexSet::membersBelow(Nat limit) const {
  std::vector<Nat> out;
  for (Nat n = 0; n < limit; ++n)
    if (contains(n)) out.push_back(n);
  return out;
}

std::optional<Nat> IndexSet::firstFrom(Nat n) const {
  const Nat end = std::max(n, bits_.cut()) + bits_.period();
  for (Nat m = n; m < end; ++m)
    if (contains(m)) return m;
  return std::nullopt;
}

std::vector<Nat> IndexSet::tailResidues() const {
  std::vector<Nat> out;
  for (Nat r = 0; r < bits_.period(); ++r)
    if (bits_.cycle()[r]) out.push_back(r);
  return out;
}

namespace {

template <class Op>
IndexSet pointwise(const IndexSet& a, const IndexSet& b, Op op) {
  const std::array<Grid, 2> grids{a.grid(), b.grid()};
  const Grid g = commonGrid(grids);
  return IndexSet::tabulate(g, 0, [&](Nat n) { return op(a.contains(n), b.contains(n)); });
}

}  // namespace

IndexSet operator&(const IndexSet& a, const IndexSet& b) {
  return pointwise(a, b, [](bool x, bool y) { return x && y; });
}
IndexSet operator|(const IndexSet& a, const IndexSet& b) {
  return pointwise(a, b, [](bool x, bool y) { return x || y; });
}
IndexSet operator-(const IndexSet& a, const IndexSet& b) {
  return pointwise(a, b, [](bool x, bool y) { return x && !y; });
}

bool almostDisjoint(const IndexSet& a, const IndexSet& b) { return (a & b).isFinite(); }
bool setEqual(const IndexSet& a, const IndexSet& b) { return a.canonical() == b.canonical(); }

}  // namespace deltakit
