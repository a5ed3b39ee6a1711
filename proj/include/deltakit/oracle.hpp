#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "deltakit/colored.hpp"
#include "deltakit/gen.hpp"
#include "deltakit/json_io.hpp"
#include "deltakit/metric.hpp"
#include "deltakit/nabla.hpp"
#include "deltakit/ordinal.hpp"

namespace deltakit::oracle {

using pfn::FinitePF;
using pfn::LinPerPF;

enum class Mode { Exhaustive, Random };

/// Finite universe: partial functions on [0, horizon) with values below
/// valueBound and domain size in [minDomain, maxDomain].
struct SearchConfig {
  Nat horizon = 4;
  Nat threshold = 0;
  Nat valueBound = 3;
  Nat minDomain = 0;
  Nat maxDomain = ~Nat{0};
  Mode mode = Mode::Exhaustive;
  std::uint64_t seed = 0;
  Nat budget = 1'000'000;
  Nat workers = 1;
  /// Points per sampled family or corpus (Halving, MNAxiom, DeltaMetric).
  Nat corpusSize = 3;
  /// Violations stored in a report; the count covers all of them.
  Nat maxRecorded = 64;

  void validate() const;
};

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class WitnessUndefined : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Report {
  std::string principle;
  std::string witness;
  std::string mode;
  std::uint64_t seed = 0;
  Nat checked = 0;
  Nat violationCount = 0;
  std::vector<Json> violations;
  Json config;
  /// Wall-clock seconds; kept out of the JSON so reports compare byte for byte.
  double elapsed = 0;

  bool clean() const { return violationCount == 0; }
};

Json encode(const Report& r);

/// Number of functions in the universe (ignores the budget).
std::uint64_t universeSize(const SearchConfig& cfg);
/// Visits the universe in (domain bitmask, value vector) lexicographic order,
/// or budget seeded samples in random mode. Exhaustive mode throws
/// BudgetExceeded when the universe is larger than the budget.
void forEachPF(const SearchConfig& cfg, const std::function<void(const FinitePF&)>& visit);
std::vector<FinitePF> enumeratePFs(const SearchConfig& cfg);

/// { m in dom x : x(m) <= x(n) for all n > m in dom x }.
FinitePF brutePerp(const FinitePF& x);
/// min dom x and every n whose value is below all earlier values.
FinitePF bruteDec(const FinitePF& x);
/// Agreement on the common domain within [t, N).
bool bruteCompatible(const FinitePF& x, const FinitePF& y);
/// Compatible, and both differences have a point in [t, N).
bool bruteSwitch(const FinitePF& x, const FinitePF& y);
/// x(n) > h(n) at every n in dom x ∩ [t, N).
bool bruteGtStar(const FinitePF& x, const FinitePF& h);
/// y agrees with x on dom x ∩ [t, N).
bool brutePrecedes(const FinitePF& y, const FinitePF& x);
/// The meet formula on finite functions: common values, else whichever side
/// is defined; disagreements are dropped.
FinitePF finiteMeet(const FinitePF& x, const FinitePF& y);

struct GlbVerdict {
  bool applicable = false;  // x, y compatible
  bool lowerBound = false;
  Nat commonLowerBounds = 0;
  std::optional<FinitePF> undominated;  // a common lower bound that does not precede the meet

  bool holds() const { return !applicable || (lowerBound && !undominated); }
};

/// Checks the meet formula against every common lower bound in `universe`.
GlbVerdict bruteMeetGLB(const FinitePF& x, const FinitePF& y, const std::vector<FinitePF>& universe);

/// N(x, f) ∩ N(y, g) nonempty in the finite product on [t, N): searched one
/// coordinate at a time over undefined and every value up to the largest
/// input value plus one. The threshold is taken from x.
bool bruteNbhdIntersect(const FinitePF& x, const FinitePF& f, const FinitePF& y, const FinitePF& g);

/// Finite analogue of the FI witness: pointwise maximum over the perp layers
/// of L(n) on dom L, else L(next point of dom L) + 1, else the sentinel.
FinitePF finiteWitnessFi(const FinitePF& x, Nat sentinel);

enum class Principle { DeltaFI, DeltaAKappa, DeltaAlpha, DeltaMetric, Halving, MNAxiom };

std::string principleName(Principle p);
std::optional<Principle> parsePrinciple(const std::string& s);

/// A witness F for one or more principles. Fields left empty make the
/// search throw WitnessUndefined for principles that need them.
struct WitnessAssignment {
  std::string name;
  std::function<LinPerPF(const LinPerPF&)> linper;
  std::function<FinitePF(const FinitePF&, Nat valueBound)> finite;
  std::function<variants::FiniteSetSeq(const variants::ColoredPF&)> colored;
  std::function<variants::OrdinalPF(const variants::OrdinalPF&)> ordinal;
  std::function<std::vector<LinPerPF>(const variants::FactorCatalog&, const std::vector<variants::PointRadius>&)>
      metric;
};

/// witnessFiF, its finite analogue, and the enumeration witness for metric corpora.
WitnessAssignment constructiveWitness();
/// Constant c_k everywhere (empty sets for colours, ordinal k, radius k+1 for metric).
WitnessAssignment constantWitness(Nat k);
std::optional<WitnessAssignment> namedWitness(const std::string& name);

/// Seeded instances for the variant principles. Pairs share their isolated
/// values so that switching is common.
std::pair<variants::ColoredPF, variants::ColoredPF> coloredPair(gen::Rng& rng, Nat kappa);
/// Ordinal pair below ω·k+1.
std::pair<variants::OrdinalPF, variants::OrdinalPF> ordinalPair(gen::Rng& rng, Nat k);
/// Points of the ω+1 product with positive radii.
std::vector<variants::PointRadius> metricCorpus(gen::Rng& rng, Nat size);

/// Searches for instances where the witness fails the principle. Exhaustive
/// mode is available for DeltaFI on finite functions; every other principle
/// samples LinPer instances from the seed.
Report searchCounterexample(Principle p, const WitnessAssignment& witness, const SearchConfig& cfg);

/// Runs body(i) for i in [0, count) on up to `workers` threads and returns
/// the results in index order.
template <typename T>
std::vector<T> parallelMap(Nat count, Nat workers, const std::function<T(Nat)>& body);

/// Seed of instance i under a run seed; independent of the worker count.
std::uint64_t instanceSeed(std::uint64_t seed, Nat i);

/// Symbolic-vs-brute cross-check of perp, Dec, switch, gtStar and
/// neighbourhood intersection on certified truncations of sampled pairs.
struct DiffReport {
  std::uint64_t seed = 0;
  Nat samples = 0;
  std::map<std::string, Nat> checked;
  std::vector<Json> disagreements;
};

DiffReport oracleDiff(std::uint64_t seed, Nat samples, Nat workers);
Json encode(const DiffReport& d);

}  // namespace deltakit::oracle

#include "deltakit/oracle_parallel.hpp"
