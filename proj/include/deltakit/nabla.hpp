#pragma once

#include <functional>
#include <string>
#include <vector>

#include "deltakit/json_io.hpp"
#include "deltakit/pfn.hpp"

namespace deltakit::nabla {

using pfn::LinPerPF;

/// The =*-class of a partial function, stored through a canonical representative.
class NablaPoint {
 public:
  NablaPoint() = default;
  explicit NablaPoint(const LinPerPF& rep) : rep_(rep.canonical()) {}
  const LinPerPF& rep() const { return rep_; }

  /// Class equality (eqModFinite of representatives).
  friend bool operator==(const NablaPoint& a, const NablaPoint& b) { return pfn::eqModFinite(a.rep_, b.rep_); }

 private:
  LinPerPF rep_;
};

/// The top element: the class of the empty function.
inline NablaPoint top() { return NablaPoint(LinPerPF::undefined()); }

/// N(center, radius) = { y : y precedes center and y minus center >* radius }.
struct Nbhd {
  NablaPoint center;
  LinPerPF radius;

  Nbhd() : radius(LinPerPF::constant(0)) {}
  Nbhd(NablaPoint c, LinPerPF r);
};

class Incompatible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// y ⪯ x: y agrees with x at all but finitely many points of dom x.
bool precedes(const NablaPoint& y, const NablaPoint& x);
/// Greatest lower bound of compatible points.
NablaPoint meet(const NablaPoint& x, const NablaPoint& y);
bool inNbhd(const NablaPoint& y, const Nbhd& nb);
/// Decided through the meet characterization, never by search.
bool nbhdsIntersect(const Nbhd& nx, const Nbhd& ny);
/// Like nbhdsIntersect, and reports the index from which both
/// differences dominate the opposite radius.
std::pair<bool, Nat> nbhdsIntersectFrom(const Nbhd& nx, const Nbhd& ny);

struct Violation {
  Nat i = 0;
  Nat j = 0;
  Nat from = 0;
  friend bool operator==(const Violation&, const Violation&) = default;
};

/// Pairs i < j with S_i ∩ S_j nonempty but neither x_i ∈ T_j nor x_j ∈ T_i.
/// T and S are indexed by the same family; each S_i must contain its point.
std::vector<Violation> halvesCheck(const std::vector<Nbhd>& t, const std::vector<Nbhd>& s);

using WitnessFn = std::function<LinPerPF(const LinPerPF&)>;

/// G(x, B) = N(x, F(x)) ∩ B for the members of a finite family.
struct MNOperator {
  std::vector<NablaPoint> family;
  std::vector<LinPerPF> radii;
  std::vector<std::string> warnings;

  /// G(family[i], B) as a single neighbourhood.
  Nbhd apply(Nat i, const Nbhd& box) const;
};

MNOperator synthesizeMN(const std::vector<NablaPoint>& family, const WitnessFn& witness);

struct MNQuery {
  Nat i = 0;
  Nbhd boxI;
  Nat j = 0;
  Nbhd boxJ;
};

/// Queries whose G-sets meet while neither point lies in the other's box.
std::vector<Violation> mnAxiomCheck(const MNOperator& op, const std::vector<MNQuery>& queries);

Json encode(const NablaPoint& p);
NablaPoint decodePoint(const Json& j);
Json encode(const Nbhd& nb);
Nbhd decodeNbhd(const Json& j);
Json encode(const Violation& v);

}  // namespace deltakit::nabla
