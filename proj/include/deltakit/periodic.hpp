#pragma once

#include <algorithm>
#include <functional>
#include <vector>

#include "deltakit/linper.hpp"

namespace deltakit {

/// An eventually periodic sequence: prefix entries below cut, then
/// cycle[(n - cut) % period].
template <class T>
class Periodic {
 public:
  Periodic() : cycle_{T{}} {}
  Periodic(std::vector<T> prefix, std::vector<T> cycle) : prefix_(std::move(prefix)), cycle_(std::move(cycle)) {
    if (cycle_.empty()) throw PreconditionError("Periodic: period must be at least 1");
  }
  static Periodic constant(T v) { return Periodic({}, {std::move(v)}); }

  Nat cut() const { return static_cast<Nat>(prefix_.size()); }
  Nat period() const { return static_cast<Nat>(cycle_.size()); }
  Grid grid() const { return {cut(), period()}; }
  const std::vector<T>& prefix() const { return prefix_; }
  const std::vector<T>& cycle() const { return cycle_; }

  const T& at(Nat n) const { return n < cut() ? prefix_[n] : cycle_[(n - cut()) % period()]; }

  Periodic canonical() const {
    std::vector<T> cycle = cycle_;
    const Nat p = period();
    for (Nat d = 1; d < p; ++d) {
      if (p % d != 0) continue;
      bool ok = true;
      for (Nat r = d; r < p && ok; ++r) ok = cycle[r] == cycle[r - d];
      if (ok) {
        cycle.resize(d);
        break;
      }
    }
    std::vector<T> prefix = prefix_;
    while (!prefix.empty() && prefix.back() == cycle.back()) {
      prefix.pop_back();
      std::rotate(cycle.rbegin(), cycle.rbegin() + 1, cycle.rend());
    }
    return Periodic(std::move(prefix), std::move(cycle));
  }

  friend bool operator==(const Periodic&, const Periodic&) = default;

 private:
  std::vector<T> prefix_;
  std::vector<T> cycle_;
};

/// An eventually periodic subset of the naturals.
class IndexSet {
 public:
  IndexSet() = default;
  explicit IndexSet(Periodic<char> bits) : bits_(std::move(bits)) {}
  static IndexSet none() { return IndexSet(); }
  static IndexSet all() { return IndexSet(Periodic<char>::constant(1)); }
  /// {start + period*k : k >= 0}
  static IndexSet progression(Nat start, Nat period);
  static IndexSet finite(const std::vector<Nat>& members);
  static IndexSet domainOf(const pfn::LinPerPF& x);

  /// Builds a set from a predicate that is constant on each residue class of
  /// `grid` from block `stable` onward.
  static IndexSet tabulate(Grid grid, Nat stable, const std::function<bool(Nat)>& pred);

  bool contains(Nat n) const { return bits_.at(n) != 0; }
  Grid grid() const { return bits_.grid(); }
  const Periodic<char>& bits() const { return bits_; }

  bool isInfinite() const;
  bool isFinite() const { return !isInfinite(); }
  bool isEmpty() const;
  /// Members below `limit`.
  std::vector<Nat> membersBelow(Nat limit) const;
  /// Smallest member >= n, if any.
  std::optional<Nat> firstFrom(Nat n) const;
  /// Residues (relative to grid()) whose whole tail class is inside the set.
  std::vector<Nat> tailResidues() const;

  IndexSet canonical() const { return IndexSet(bits_.canonical()); }
  friend bool operator==(const IndexSet&, const IndexSet&) = default;

 private:
  Periodic<char> bits_;
};

IndexSet operator&(const IndexSet& a, const IndexSet& b);
IndexSet operator|(const IndexSet& a, const IndexSet& b);
IndexSet operator-(const IndexSet& a, const IndexSet& b);
bool almostDisjoint(const IndexSet& a, const IndexSet& b);
bool setEqual(const IndexSet& a, const IndexSet& b);

}  // namespace deltakit
