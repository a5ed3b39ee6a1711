#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace deltakit {

using Nat = std::uint64_t;
using Value = std::optional<Nat>;

/// Raised when an operation's documented precondition does not hold.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A (cut, period) pair. Index n >= cut decomposes as cut + period*block + residue.
struct Grid {
  Nat cut = 0;
  Nat period = 1;

  Nat residue(Nat n) const { return (n - cut) % period; }
  Nat block(Nat n) const { return (n - cut) / period; }
  Nat index(Nat residue, Nat block) const { return cut + period * block + residue; }

  friend bool operator==(const Grid&, const Grid&) = default;
};

/// Smallest grid refining all inputs: max cut, lcm of periods.
Grid commonGrid(std::span<const Grid> grids);

struct Affine {
  Nat slope = 0;
  Nat intercept = 0;

  Nat at(Nat block) const { return slope * block + intercept; }
  friend bool operator==(const Affine&, const Affine&) = default;
};

/// nullopt means the residue class is undefined on the whole tail.
using TailClass = std::optional<Affine>;

namespace pfn {

/// A partial function from naturals to naturals with a finite prefix and an
/// affine-periodic tail: x(cut + period*k + r) = slope_r*k + intercept_r.
///
/// Values are compared as graphs through graphEqual(); operator== is
/// structural and only agrees with graph equality on canonical values.
class LinPerPF {
 public:
  /// The empty function.
  LinPerPF();
  LinPerPF(std::vector<Value> prefix, std::vector<TailClass> classes);

  static LinPerPF undefined() { return LinPerPF(); }
  static LinPerPF constant(Nat c);
  static LinPerPF identity();
  /// Tail-only function with the given per-residue classes and cut 0.
  static LinPerPF periodic(std::vector<TailClass> classes);
  /// Finite function: defined exactly on the listed prefix entries.
  static LinPerPF finite(std::vector<Value> values);

  Nat cut() const { return static_cast<Nat>(prefix_.size()); }
  Nat period() const { return static_cast<Nat>(classes_.size()); }
  Grid grid() const { return {cut(), period()}; }
  const std::vector<Value>& prefix() const { return prefix_; }
  const std::vector<TailClass>& classes() const { return classes_; }

  Value at(Nat n) const;
  bool isTotal() const;
  bool hasInfiniteDomain() const;
  bool isEmpty() const;
  /// Largest intercept over affine tail classes (0 if none).
  Nat maxIntercept() const;

  /// Same graph, re-expressed on a finer grid (cut >= cut(), period a multiple of period()).
  LinPerPF refined(Grid target) const;
  /// Same graph with the cut pushed forward by whole blocks.
  LinPerPF advanced(Nat blocks) const;
  /// Minimal period, then minimal cut.
  LinPerPF canonical() const;

  friend bool operator==(const LinPerPF&, const LinPerPF&) = default;

 private:
  std::vector<Value> prefix_;
  std::vector<TailClass> classes_;
};

bool graphEqual(const LinPerPF& x, const LinPerPF& y);

/// First block on the common grid after which every pairwise affine
/// comparison between the (refined) inputs is constant.
Nat stableBlock(std::span<const LinPerPF> refinedOnCommonGrid);

/// Index after which all class-level comparisons between the inputs are
/// settled. Finite-window checks that start here agree with the exact layer.
Nat certificateHorizon(std::span<const LinPerPF> xs);
/// Common period of the inputs (lcm).
Nat commonPeriod(std::span<const LinPerPF> xs);

std::string describe(const LinPerPF& x);

/// A finite partial function on [0, horizon) together with a threshold t.
/// "All but finitely many" reads as "all n in [t, horizon)"; "infinitely
/// many" reads as "some n in [t, horizon)".
class FinitePF {
 public:
  FinitePF() = default;
  explicit FinitePF(std::vector<Value> values, Nat threshold = 0);

  Nat horizon() const { return static_cast<Nat>(values_.size()); }
  Nat threshold() const { return threshold_; }
  Value at(Nat n) const { return n < horizon() ? values_[n] : std::nullopt; }
  const std::vector<Value>& values() const { return values_; }
  bool isEmpty() const;
  std::vector<Nat> domain() const;

  friend bool operator==(const FinitePF&, const FinitePF&) = default;

 private:
  std::vector<Value> values_;
  Nat threshold_ = 0;
};

/// Restriction of x to [0, horizon).
FinitePF truncate(const LinPerPF& x, Nat horizon, Nat threshold = 0);
/// The finite function as a LinPerPF (no tail).
LinPerPF toLinPer(const FinitePF& x);

}  // namespace pfn
}  // namespace deltakit
