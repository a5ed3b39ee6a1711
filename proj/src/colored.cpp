#include "deltakit/colored.hpp"

#include <algorithm>
#include <array>

namespace deltakit::variants {

using deltakit::encode;

ColoredPF::ColoredPF(LinPerPF graph, Nat kappa) : graph_(std::move(graph)), kappa_(kappa) {
  if (kappa_ == 0) return;
  for (const Value& v : graph_.prefix())
    if (v && *v >= kappa_) throw PreconditionError("ColoredPF: prefix colour outside [0, kappa)");
  for (const TailClass& c : graph_.classes())
    if (c && (c->slope != 0 || c->intercept >= kappa_))
      throw PreconditionError("ColoredPF: tail colours must be constant and below kappa");
}

FiniteSetSeq::FiniteSetSeq(Periodic<Set> sets) : sets_(std::move(sets)) {
  auto check = [](const Set& s) {
    if (!std::is_sorted(s.begin(), s.end()) || std::adjacent_find(s.begin(), s.end()) != s.end())
      throw PreconditionError("FiniteSetSeq: sets must be sorted without repeats");
  };
  for (const Set& s : sets_.prefix()) check(s);
  for (const Set& s : sets_.cycle()) check(s);
}

bool FiniteSetSeq::contains(Nat n, Nat colour) const {
  const Set& s = at(n);
  return std::binary_search(s.begin(), s.end(), colour);
}

Nat FiniteSetSeq::maxElement() const {
  Nat m = 0;
  for (const Set& s : sets_.prefix())
    if (!s.empty()) m = std::max(m, s.back());
  for (const Set& s : sets_.cycle())
    if (!s.empty()) m = std::max(m, s.back());
  return m;
}

namespace {

// Common grid and settled block for the given functions and extra grids.
// From that block on, every value comparison between the functions is
// constant on each residue class.
std::pair<Grid, Nat> settle(std::initializer_list<const LinPerPF*> fns, std::initializer_list<Grid> extra) {
  std::vector<Grid> grids(extra);
  for (const LinPerPF* f : fns) grids.push_back(f->grid());
  const Grid g = commonGrid(grids);
  std::vector<LinPerPF> refined;
  for (const LinPerPF* f : fns) refined.push_back(f->refined(g));
  return {g, stableBlock(refined)};
}

Value minus(Value a, Value b) { return (a && a != b) ? a : std::nullopt; }

}  // namespace

bool switchColored(const ColoredPF& x, const ColoredPF& y) {
  auto [g, k] = settle({&x.graph(), &y.graph()}, {});
  const IndexSet clash = IndexSet::tabulate(g, k, [&](Nat n) {
    const Value a = x.at(n), b = y.at(n);
    return a && b && *a != *b;
  });
  const IndexSet left = IndexSet::tabulate(g, k, [&](Nat n) { return minus(x.at(n), y.at(n)).has_value(); });
  const IndexSet right = IndexSet::tabulate(g, k, [&](Nat n) { return minus(y.at(n), x.at(n)).has_value(); });
  return clash.isFinite() && left.isInfinite() && right.isInfinite();
}

DeltaVerdict checkDeltaAKappa(const ColoredPF& x, const ColoredPF& y, const FiniteSetSeq& fx,
                              const FiniteSetSeq& fy) {
  DeltaVerdict v;
  if (!switchColored(x, y)) {
    v.certificate.kind = "not-switching";
    return v;
  }
  auto [g, k] = settle({&x.graph(), &y.graph()}, {fx.grid(), fy.grid()});
  // Growing tail colours leave every finite set once they pass its maximum.
  k = std::max(k, std::max(fx.maxElement(), fy.maxElement()) + 1);
  const IndexSet hits = IndexSet::tabulate(g, k, [&](Nat n) {
    const Value l = minus(x.at(n), y.at(n));
    const Value r = minus(y.at(n), x.at(n));
    return (l && fy.contains(n, *l)) || (r && fx.contains(n, *r));
  });
  if (hits.isInfinite()) {
    v.kind = VerdictKind::Holds;
    v.certificate.kind = "infinitely-often";
    v.certificate.grid = hits.grid();
    v.certificate.residues = hits.tailResidues();
    v.certificate.note = "a difference value lies in the opposite witness set";
  } else {
    v.kind = VerdictKind::Violated;
    v.certificate.kind = "eventually";
    v.certificate.from = hits.grid().cut;
    v.certificate.note = "no difference value lies in the opposite witness set from this index";
  }
  return v;
}

Json encode(const ColoredPF& x) {
  Json j = encode(x.graph());
  j["kappa"] = x.kappa();
  return j;
}

ColoredPF decodeColored(const Json& j) {
  const Nat kappa = j.contains("kappa") ? readNat(j.at("kappa"), "kappa") : 0;
  try {
    return ColoredPF(decodeLinPer(j), kappa);
  } catch (const PreconditionError& e) {
    throw SchemaError(e.what());
  }
}

namespace {

Json encodeSets(const std::vector<FiniteSetSeq::Set>& sets) {
  Json out = Json::array();
  for (const auto& s : sets) out.push_back(s);
  return out;
}

std::vector<FiniteSetSeq::Set> decodeSets(const Json& j, const char* what) {
  if (!j.is_array()) throw SchemaError(std::string("set sequence: ") + what + " must be an array");
  std::vector<FiniteSetSeq::Set> out;
  for (const Json& s : j) {
    if (!s.is_array()) throw SchemaError("set sequence: each entry must be an array");
    FiniteSetSeq::Set set;
    for (const Json& e : s) set.push_back(readNat(e, "colour"));
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
    out.push_back(std::move(set));
  }
  return out;
}

}  // namespace

Json encode(const FiniteSetSeq& s) {
  return {{"prefix", encodeSets(s.sets().prefix())}, {"cycle", encodeSets(s.sets().cycle())}};
}

FiniteSetSeq decodeSetSeq(const Json& j) {
  if (!j.is_object() || !j.contains("cycle")) throw SchemaError("set sequence: missing \"cycle\"");
  auto prefix = j.contains("prefix") ? decodeSets(j.at("prefix"), "prefix") : std::vector<FiniteSetSeq::Set>{};
  auto cycle = decodeSets(j.at("cycle"), "cycle");
  if (cycle.empty()) throw SchemaError("set sequence: cycle must not be empty");
  return FiniteSetSeq(Periodic<FiniteSetSeq::Set>(std::move(prefix), std::move(cycle)));
}

}  // namespace deltakit::variants
