#pragma once

#include <random>

#include "deltakit/linper.hpp"
#include "deltakit/periodic.hpp"

namespace deltakit::gen {

using Rng = std::mt19937_64;

/// Uniform integer in [lo, hi]. Platform-independent (unlike std distributions).
Nat uniform(Rng& rng, Nat lo, Nat hi);
bool chance(Rng& rng, Nat percent);

struct Shape {
  Nat maxPeriod = 6;
  Nat maxCut = 32;
  Nat maxValue = 12;
  Nat maxSlope = 3;
  Nat undefinedPercent = 35;
};

/// Arbitrary LinPerPF within the shape (not canonicalized).
pfn::LinPerPF linPer(Rng& rng, const Shape& shape);
/// Total LinPerPF.
pfn::LinPerPF total(Rng& rng, const Shape& shape);
/// LinPerPF with infinite domain whose values stay small, which makes many
/// pairs compatible or switching.
pfn::LinPerPF sparse(Rng& rng, const Shape& shape);

/// Eventually periodic index set with the given membership density.
IndexSet indexSet(Rng& rng, Nat maxCut, Nat maxPeriod, Nat percent);

/// Two restrictions of one total function to random index sets, each with a
/// few prefix edits. Always compatible; often switching.
std::pair<pfn::LinPerPF, pfn::LinPerPF> compatiblePair(Rng& rng, const Shape& shape);

/// Rejection-samples a function whose decomposition layers all have infinite
/// domains, with at most maxHeight layers.
pfn::LinPerPF fiPlus(Rng& rng, const Shape& shape, Nat maxHeight);

/// A copy of x with a few prefix entries changed (domain and values).
pfn::LinPerPF perturbPrefix(Rng& rng, const pfn::LinPerPF& x, Nat edits, Nat maxValue);

}  // namespace deltakit::gen
