#include "deltakit/ordinal.hpp"

#include <array>

namespace deltakit::variants {

using deltakit::encode;
using pfn::LinPerPF;

std::string describe(const Ord& o) {
  if (o.q == 0) return std::to_string(o.r);
  std::string s = o.q == 1 ? "w" : "w*" + std::to_string(o.q);
  if (o.r) s += "+" + std::to_string(o.r);
  return s;
}

namespace {

LinPerPF coefficientPart(const std::vector<Ord>& prefix, const std::vector<OrdTail>& classes) {
  std::vector<Value> p;
  for (const Ord& o : prefix) p.push_back(o.q);
  std::vector<TailClass> c;
  for (const OrdTail& t : classes) c.push_back(Affine{0, t.q});
  return LinPerPF(std::move(p), std::move(c));
}

LinPerPF remainderPart(const std::vector<Ord>& prefix, const std::vector<OrdTail>& classes) {
  std::vector<Value> p;
  for (const Ord& o : prefix) p.push_back(o.r);
  std::vector<TailClass> c;
  for (const OrdTail& t : classes) c.push_back(t.r);
  return LinPerPF(std::move(p), std::move(c));
}

}  // namespace

OrdinalPF::OrdinalPF(std::vector<Ord> prefix, std::vector<OrdTail> classes, Ord bound)
    : OrdinalPF(coefficientPart(prefix, classes), remainderPart(prefix, classes), bound) {}

OrdinalPF::OrdinalPF(LinPerPF q, LinPerPF r, Ord bound) : q_(std::move(q)), r_(std::move(r)), bound_(bound) {
  if (!q_.isTotal() || !r_.isTotal()) throw PreconditionError("OrdinalPF: sequence must be total");
  const Grid g = grid();
  q_ = q_.refined(g);
  r_ = r_.refined(g);
  for (Nat n = 0; n < g.cut; ++n)
    if (!(at(n) < bound_)) throw PreconditionError("OrdinalPF: value " + describe(at(n)) + " not below the bound");
  for (Nat c = 0; c < g.period; ++c) {
    const Affine& qc = *q_.classes()[c];
    const Affine& rc = *r_.classes()[c];
    if (qc.slope != 0) throw PreconditionError("OrdinalPF: the coefficient of w must be constant on tail classes");
    const bool ok = rc.slope == 0 ? Ord{qc.intercept, rc.intercept} < bound_ : qc.intercept < bound_.q;
    if (!ok) throw PreconditionError("OrdinalPF: tail class exceeds the bound");
  }
}

Grid OrdinalPF::grid() const {
  const std::array<Grid, 2> gs{q_.grid(), r_.grid()};
  return commonGrid(gs);
}

std::pair<Grid, Nat> settleOrdinals(std::initializer_list<const OrdinalPF*> xs) {
  std::vector<Grid> grids;
  for (const OrdinalPF* x : xs) grids.push_back(x->grid());
  const Grid g = commonGrid(grids);
  std::vector<LinPerPF> refined;
  for (const OrdinalPF* x : xs) {
    refined.push_back(x->coefficients().refined(g));
    refined.push_back(x->remainders().refined(g));
  }
  return {g, stableBlock(refined)};
}

namespace {

// Index set of a predicate that settles on each class from block k.
IndexSet where(Grid g, Nat k, const std::function<bool(Nat)>& pred) { return IndexSet::tabulate(g, k, pred); }

pfn::Certificate often(const IndexSet& s, std::string note) {
  pfn::Certificate c;
  c.kind = "infinitely-often";
  c.grid = s.grid();
  c.residues = s.tailResidues();
  c.note = std::move(note);
  return c;
}

void checkBounds(const OrdinalPF& a, const OrdinalPF& b) {
  if (a.bound() != b.bound()) throw PreconditionError("ordinal sequences use different bounds");
}

}  // namespace

bool switchOrdinal(const OrdinalPF& x, const OrdinalPF& y) {
  checkBounds(x, y);
  auto [g, k] = settleOrdinals({&x, &y});
  const IndexSet up = where(g, k, [&](Nat n) { return x.at(n) < y.at(n) && y.at(n).isLimit(); });
  const IndexSet down = where(g, k, [&](Nat n) { return y.at(n) < x.at(n) && x.at(n).isLimit(); });
  const IndexSet clash = where(g, k, [&](Nat n) {
    const Ord a = x.at(n), b = y.at(n);
    return !a.isLimit() && !b.isLimit() && a != b;
  });
  return up.isInfinite() && down.isInfinite() && clash.isFinite();
}

DeltaVerdict checkDeltaAlpha(const OrdinalPF& x, const OrdinalPF& y, const OrdinalPF& fx, const OrdinalPF& fy) {
  checkBounds(x, y);
  checkBounds(x, fx);
  checkBounds(x, fy);
  DeltaVerdict v;
  if (!switchOrdinal(x, y)) {
    v.certificate.kind = "not-switching";
    return v;
  }
  auto [g, k] = settleOrdinals({&x, &y, &fx, &fy});
  const IndexSet left = where(g, k, [&](Nat n) { return y.at(n) < fx.at(n) && fx.at(n) < x.at(n); });
  if (left.isInfinite()) {
    v.kind = VerdictKind::HoldsLeft;
    v.certificate = often(left, "y(n) < Fx(n) < x(n)");
    return v;
  }
  const IndexSet right = where(g, k, [&](Nat n) { return x.at(n) < fy.at(n) && fy.at(n) < y.at(n); });
  if (right.isInfinite()) {
    v.kind = VerdictKind::HoldsRight;
    v.certificate = often(right, "x(n) < Fy(n) < y(n)");
    return v;
  }
  v.kind = VerdictKind::Violated;
  v.certificate.kind = "eventually";
  v.certificate.from = std::max(left.grid().cut, right.grid().cut);
  v.certificate.note = "neither witness separates the pair from this index";
  return v;
}

bool precedesOrdinal(const OrdinalPF& y, const OrdinalPF& x) {
  checkBounds(x, y);
  auto [g, k] = settleOrdinals({&x, &y});
  const IndexSet bad = where(g, k, [&](Nat n) {
    const Ord a = x.at(n), b = y.at(n);
    return a.isLimit() ? !(b <= a) : b != a;
  });
  return bad.isFinite();
}

bool inNbhdOrdinal(const OrdinalPF& y, const OrdinalPF& x, const OrdinalPF& f) {
  checkBounds(x, y);
  checkBounds(x, f);
  auto [g, k] = settleOrdinals({&x, &y, &f});
  const IndexSet badRadius = where(g, k, [&](Nat n) { return x.at(n).isLimit() && !(f.at(n) < x.at(n)); });
  if (badRadius.isInfinite()) throw PreconditionError("inNbhdOrdinal: radius reaches the centre at infinitely many limits");
  const IndexSet bad = where(g, k, [&](Nat n) {
    const Ord a = x.at(n), b = y.at(n), r = f.at(n);
    return a.isLimit() ? !(r <= b && b <= a) : b != a;
  });
  return bad.isFinite();
}

Json encode(const Ord& o) { return Json::array({o.q, o.r}); }

Ord decodeOrd(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw SchemaError("ordinal: expected [q, r]");
  return {readNat(j[0], "ordinal q"), readNat(j[1], "ordinal r")};
}

Json encode(const OrdinalPF& x) {
  return {{"coefficients", encode(x.coefficients())}, {"remainders", encode(x.remainders())},
          {"bound", encode(x.bound())}};
}

OrdinalPF decodeOrdinal(const Json& j) {
  if (!j.is_object() || !j.contains("coefficients") || !j.contains("remainders") || !j.contains("bound"))
    throw SchemaError("ordinal sequence: expected keys \"coefficients\", \"remainders\", \"bound\"");
  try {
    return OrdinalPF(decodeLinPer(j.at("coefficients")), decodeLinPer(j.at("remainders")), decodeOrd(j.at("bound")));
  } catch (const PreconditionError& e) {
    throw SchemaError(e.what());
  }
}

}  // namespace deltakit::variants
