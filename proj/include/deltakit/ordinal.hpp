#pragma once

#include <compare>
#include <string>
#include <vector>

#include "deltakit/json_io.hpp"
#include "deltakit/verdict.hpp"

namespace deltakit::variants {

/// The ordinal ω·q + r.
struct Ord {
  Nat q = 0;
  Nat r = 0;

  bool isLimit() const { return r == 0 && q >= 1; }
  friend auto operator<=>(const Ord&, const Ord&) = default;
};

std::string describe(const Ord& o);

/// Tail class of an ordinal sequence: ω·q + (slope·k + intercept).
struct OrdTail {
  Nat q = 0;
  Affine r;
};

/// Total sequence into the ordinal `bound`, stored as two total LinPerPFs
/// for the ω-coefficient (constant on every tail class) and the finite part.
class OrdinalPF {
 public:
  OrdinalPF(std::vector<Ord> prefix, std::vector<OrdTail> classes, Ord bound);
  static OrdinalPF constant(Ord v, Ord bound) { return OrdinalPF({}, {OrdTail{v.q, Affine{0, v.r}}}, bound); }

  Ord at(Nat n) const { return {*q_.at(n), *r_.at(n)}; }
  Ord bound() const { return bound_; }
  const pfn::LinPerPF& coefficients() const { return q_; }
  const pfn::LinPerPF& remainders() const { return r_; }
  Grid grid() const;

 private:
  OrdinalPF(pfn::LinPerPF q, pfn::LinPerPF r, Ord bound);
  pfn::LinPerPF q_;
  pfn::LinPerPF r_;
  Ord bound_;
  friend OrdinalPF decodeOrdinal(const Json& j);
};

/// Common grid and a block from which every comparison among the given
/// sequences is constant on each residue class.
std::pair<Grid, Nat> settleOrdinals(std::initializer_list<const OrdinalPF*> xs);

/// Infinitely often x(n) < y(n) ∈ Lim, infinitely often y(n) < x(n) ∈ Lim,
/// and finitely many n with distinct isolated values.
bool switchOrdinal(const OrdinalPF& x, const OrdinalPF& y);

/// Holds iff y(n) < Fx(n) < x(n) or x(n) < Fy(n) < y(n) infinitely often.
DeltaVerdict checkDeltaAlpha(const OrdinalPF& x, const OrdinalPF& y, const OrdinalPF& fx, const OrdinalPF& fy);

/// y ⪯ x: eventually y(n) ≤ x(n), with equality where x(n) is isolated.
bool precedesOrdinal(const OrdinalPF& y, const OrdinalPF& x);

/// y ∈ N(x, f). Requires f(n) < x(n) at almost all limit values of x.
bool inNbhdOrdinal(const OrdinalPF& y, const OrdinalPF& x, const OrdinalPF& f);

Json encode(const Ord& o);
Ord decodeOrd(const Json& j);
Json encode(const OrdinalPF& x);
OrdinalPF decodeOrdinal(const Json& j);

}  // namespace deltakit::variants
