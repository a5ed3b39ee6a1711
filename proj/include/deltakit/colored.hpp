#pragma once

#include <vector>

#include "deltakit/json_io.hpp"
#include "deltakit/periodic.hpp"
#include "deltakit/verdict.hpp"

namespace deltakit::variants {

using pfn::LinPerPF;

/// Partial function into the colours [0, kappa). kappa == 0 stands for an
/// unbounded palette, in which case any LinPerPF is allowed.
class ColoredPF {
 public:
  ColoredPF(LinPerPF graph, Nat kappa);
  const LinPerPF& graph() const { return graph_; }
  Nat kappa() const { return kappa_; }
  Value at(Nat n) const { return graph_.at(n); }

 private:
  LinPerPF graph_;
  Nat kappa_;
};

/// Eventually periodic sequence of finite colour sets.
class FiniteSetSeq {
 public:
  using Set = std::vector<Nat>;
  FiniteSetSeq() = default;
  explicit FiniteSetSeq(Periodic<Set> sets);
  static FiniteSetSeq constant(Set s) { return FiniteSetSeq(Periodic<Set>::constant(std::move(s))); }

  const Set& at(Nat n) const { return sets_.at(n); }
  bool contains(Nat n, Nat colour) const;
  Grid grid() const { return sets_.grid(); }
  Nat maxElement() const;
  const Periodic<Set>& sets() const { return sets_; }

 private:
  Periodic<Set> sets_;
};

/// Both differences infinite and only finitely many n where both are
/// defined with different colours.
bool switchColored(const ColoredPF& x, const ColoredPF& y);

/// Holds iff (x∖y)(n) ∈ Fy(n) or (y∖x)(n) ∈ Fx(n) for infinitely many n.
DeltaVerdict checkDeltaAKappa(const ColoredPF& x, const ColoredPF& y, const FiniteSetSeq& fx,
                              const FiniteSetSeq& fy);

Json encode(const ColoredPF& x);
ColoredPF decodeColored(const Json& j);
Json encode(const FiniteSetSeq& s);
FiniteSetSeq decodeSetSeq(const Json& j);

}  // namespace deltakit::variants
