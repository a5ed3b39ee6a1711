#pragma once

#include <functional>
#include <vector>

#include "deltakit/linper.hpp"
#include "deltakit/periodic.hpp"

namespace deltakit::pfn {

/// Evidence attached to eventual comparisons.
///
/// kind "eventually": the property holds at every relevant index >= from.
/// kind "infinitely-often": the property fails at every index
/// cut + period*k + r for r in residues, k >= 0.
struct Certificate {
  std::string kind;
  Nat from = 0;
  Grid grid;
  std::vector<Nat> residues;
  std::string note;
};

Value evalAt(const LinPerPF& x, Nat n);

/// x =* y
bool eqModFinite(const LinPerPF& x, const LinPerPF& y);

/// Graph difference x \ y.
LinPerPF diff(const LinPerPF& x, const LinPerPF& y);
/// Graph intersection x ∩ y.
LinPerPF intersection(const LinPerPF& x, const LinPerPF& y);
/// Graph union; throws PreconditionError if x and y disagree somewhere.
LinPerPF graphUnion(const LinPerPF& x, const LinPerPF& y);
/// x restricted to indices in `keep`.
LinPerPF restrict(const LinPerPF& x, const IndexSet& keep);
/// x with the listed indices removed from the domain.
LinPerPF removeIndices(const LinPerPF& x, const std::vector<Nat>& indices);
/// Graph containment x ⊆ y.
bool isSubgraph(const LinPerPF& x, const LinPerPF& y);

/// x >* h: x(n) > h(n) for all but finitely many n in dom x. h must be total.
bool gtStar(const LinPerPF& x, const LinPerPF& h);
/// gtStar with evidence: the first index from which it holds, or the
/// residue classes where it fails infinitely often.
std::pair<bool, Certificate> gtStarCertified(const LinPerPF& x, const LinPerPF& h);
/// f <=* g for total f, g.
bool leqStar(const LinPerPF& f, const LinPerPF& g);

/// Finitely many disagreements on dom x ∩ dom y.
bool compatible(const LinPerPF& x, const LinPerPF& y);
/// x and y are compatible and both graph differences are infinite.
bool switches(const LinPerPF& x, const LinPerPF& y);

LinPerPF maxFn(const LinPerPF& f, const LinPerPF& g);
/// c*f for total f.
LinPerPF scaled(const LinPerPF& f, Nat c);
/// f + c for total f.
LinPerPF plusConstant(const LinPerPF& f, Nat c);

/// Restriction of x to its "perp" indices: m in dom x with x(m) <= x(n) for
/// every later n in dom x.
LinPerPF perp(const LinPerPF& x);
/// Membership test for the perp index set, without building the result.
bool perpContains(const LinPerPF& x, Nat m);

/// x restricted to Dec(x): min dom x and every n whose value is strictly
/// below all earlier values.
FinitePF decPrefix(const LinPerPF& x);
/// First m blocks of the iterated Dec decomposition.
std::vector<FinitePF> blocksDec(const LinPerPF& x, Nat m);

/// Least element of dom x greater than n.
Nat nextInDom(const LinPerPF& x, Nat n);

/// Increasing on its domain (x(m) <= x(n) for m < n in dom x).
bool isIncreasing(const LinPerPF& x);

/// Applies fn pointwise. fn must be a selection among its arguments, or
/// affine in them, once the pairwise comparisons of x and y are settled.
LinPerPF combine(const LinPerPF& x, const LinPerPF& y, const std::function<Value(Value, Value)>& fn);

}  // namespace deltakit::pfn
