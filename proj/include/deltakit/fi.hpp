#pragma once

#include <vector>

#include "deltakit/pfn.hpp"
#include "deltakit/verdict.hpp"

namespace deltakit::fi {

inline constexpr Nat kDefaultMaxHeight = 16;

/// The residue still had points after the allowed number of layers.
class HeightExceeded : public std::runtime_error {
 public:
  explicit HeightExceeded(Nat bound)
      : std::runtime_error("decomposition did not terminate within " + std::to_string(bound) + " layers"),
        bound_(bound) {}
  Nat bound() const { return bound_; }

 private:
  Nat bound_;
};

/// Layers x_0 = perp(x), x_n = perp(x minus earlier layers), until exhaustion.
struct FiDecomposition {
  pfn::LinPerPF source;
  std::vector<pfn::LinPerPF> layers;
};

FiDecomposition fiDecompose(const pfn::LinPerPF& x, Nat maxHeight = kDefaultMaxHeight);
Nat height(const pfn::LinPerPF& x, Nat maxHeight = kDefaultMaxHeight);

/// Increasing with infinite domain.
bool isINCplus(const pfn::LinPerPF& x);
/// Every decomposition layer is in INC⁺ (relative to maxHeight).
bool isFIplus(const pfn::LinPerPF& x, Nat maxHeight = kDefaultMaxHeight);

/// F(x)(n) = x(n) on dom x, otherwise x(next domain point) + 1.
pfn::LinPerPF witnessIncF(const pfn::LinPerPF& x);
/// Pointwise maximum of witnessIncF over the decomposition layers.
pfn::LinPerPF witnessFiF(const pfn::LinPerPF& x, Nat maxHeight = kDefaultMaxHeight);

/// NotSwitching, HoldsLeft (x∖y ≯* Fy), HoldsRight (y∖x ≯* Fx) or Violated.
DeltaVerdict checkDeltaConclusion(const pfn::LinPerPF& x, const pfn::LinPerPF& y, const pfn::LinPerPF& fx,
                                  const pfn::LinPerPF& fy);

enum class IndStepKind { HypothesisFails, LemmaHolds, LemmaViolated };

struct IndStepVerdict {
  IndStepKind kind = IndStepKind::HypothesisFails;
  pfn::Certificate certificate;
  std::string detail;
};

/// If z∖w >* F(perp w) and w∖z >* F(perp z) then perp z =* perp w.
/// Requires compatible z, w with infinite domains.
IndStepVerdict indStepCheck(const pfn::LinPerPF& z, const pfn::LinPerPF& w);

Json encode(const FiDecomposition& d);
Json encode(const IndStepVerdict& v);

}  // namespace deltakit::fi
