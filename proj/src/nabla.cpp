#include "deltakit/nabla.hpp"

#include <algorithm>

namespace deltakit::nabla {

using deltakit::encode;

Nbhd::Nbhd(NablaPoint c, LinPerPF r) : center(std::move(c)), radius(std::move(r)) {
  if (!radius.isTotal()) throw PreconditionError("Nbhd: radius must be total");
}

bool precedes(const NablaPoint& y, const NablaPoint& x) {
  return !pfn::diff(x.rep(), y.rep()).hasInfiniteDomain();
}

NablaPoint meet(const NablaPoint& x, const NablaPoint& y) {
  if (!pfn::compatible(x.rep(), y.rep())) throw Incompatible("meet: points are not compatible");
  // Points where both are defined but disagree are finitely many; dropping them
  // does not change the class.
  return NablaPoint(pfn::combine(x.rep(), y.rep(), [](Value a, Value b) -> Value {
    if (a && b) return a == b ? a : std::nullopt;
    return a ? a : b;
  }));
}

bool inNbhd(const NablaPoint& y, const Nbhd& nb) {
  return precedes(y, nb.center) && pfn::gtStar(pfn::diff(y.rep(), nb.center.rep()), nb.radius);
}

std::pair<bool, Nat> nbhdsIntersectFrom(const Nbhd& nx, const Nbhd& ny) {
  const LinPerPF& x = nx.center.rep();
  const LinPerPF& y = ny.center.rep();
  if (!pfn::compatible(x, y)) return {false, 0};
  auto [left, leftCert] = pfn::gtStarCertified(pfn::diff(y, x), nx.radius);
  if (!left) return {false, 0};
  auto [right, rightCert] = pfn::gtStarCertified(pfn::diff(x, y), ny.radius);
  if (!right) return {false, 0};
  return {true, std::max(leftCert.from, rightCert.from)};
}

bool nbhdsIntersect(const Nbhd& nx, const Nbhd& ny) { return nbhdsIntersectFrom(nx, ny).first; }

std::vector<Violation> halvesCheck(const std::vector<Nbhd>& t, const std::vector<Nbhd>& s) {
  if (t.size() != s.size()) throw PreconditionError("halvesCheck: T and S have different index sets");
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!(s[i].center == t[i].center)) throw PreconditionError("halvesCheck: S and T centers differ at an index");
  }
  std::vector<Violation> out;
  for (Nat i = 0; i < s.size(); ++i) {
    for (Nat j = i + 1; j < s.size(); ++j) {
      auto [meets, from] = nbhdsIntersectFrom(s[i], s[j]);
      if (!meets) continue;
      if (inNbhd(t[i].center, t[j]) || inNbhd(t[j].center, t[i])) continue;
      out.push_back({i, j, from});
    }
  }
  return out;
}

Nbhd MNOperator::apply(Nat i, const Nbhd& box) const {
  if (i >= family.size()) throw PreconditionError("MNOperator: index outside the family");
  if (!(box.center == family[i])) throw PreconditionError("MNOperator: box is not centred at the family member");
  return Nbhd(family[i], pfn::maxFn(radii[i], box.radius));
}

MNOperator synthesizeMN(const std::vector<NablaPoint>& family, const WitnessFn& witness) {
  MNOperator op;
  op.family = family;
  for (const NablaPoint& p : family) {
    LinPerPF f = witness(p.rep());
    if (!f.isTotal()) throw PreconditionError("synthesizeMN: witness is not total on a family member");
    op.radii.push_back(std::move(f));
  }
  Nat missing = 0;
  for (std::size_t i = 0; i < family.size(); ++i) {
    for (std::size_t j = i + 1; j < family.size(); ++j) {
      if (!pfn::compatible(family[i].rep(), family[j].rep())) continue;
      const NablaPoint m = meet(family[i], family[j]);
      if (std::none_of(family.begin(), family.end(), [&](const NablaPoint& p) { return p == m; })) ++missing;
    }
  }
  if (missing > 0)
    op.warnings.push_back("family is not closed under meet (" + std::to_string(missing) +
                          " compatible pairs); only the forward direction is checked");
  return op;
}

std::vector<Violation> mnAxiomCheck(const MNOperator& op, const std::vector<MNQuery>& queries) {
  std::vector<Violation> out;
  for (const MNQuery& q : queries) {
    const Nbhd gi = op.apply(q.i, q.boxI);
    const Nbhd gj = op.apply(q.j, q.boxJ);
    auto [meets, from] = nbhdsIntersectFrom(gi, gj);
    if (!meets) continue;
    if (inNbhd(op.family[q.i], q.boxJ) || inNbhd(op.family[q.j], q.boxI)) continue;
    out.push_back({q.i, q.j, from});
  }
  return out;
}

Json encode(const NablaPoint& p) { return {{"rep", encode(p.rep())}}; }

NablaPoint decodePoint(const Json& j) {
  if (!j.is_object() || !j.contains("rep")) throw SchemaError("point: expected an object with key \"rep\"");
  return NablaPoint(decodeLinPer(j.at("rep")));
}

Json encode(const Nbhd& nb) { return {{"center", encode(nb.center)}, {"radius", encode(nb.radius)}}; }

Nbhd decodeNbhd(const Json& j) {
  if (!j.is_object() || !j.contains("center") || !j.contains("radius"))
    throw SchemaError("nbhd: expected keys \"center\" and \"radius\"");
  const Json& c = j.at("center");
  NablaPoint center = c.contains("rep") ? decodePoint(c) : NablaPoint(decodeLinPer(c));
  LinPerPF radius = decodeLinPer(j.at("radius"));
  if (!radius.isTotal()) throw SchemaError("nbhd: radius must be total");
  return Nbhd(std::move(center), std::move(radius));
}

Json encode(const Violation& v) { return {{"i", v.i}, {"j", v.j}, {"from", v.from}}; }

}  // namespace deltakit::nabla
