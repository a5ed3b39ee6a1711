#pragma once

#include <cstdint>
#include <vector>

#include <boost/rational.hpp>

#include "deltakit/json_io.hpp"
#include "deltakit/periodic.hpp"
#include "deltakit/verdict.hpp"

namespace deltakit::variants {

using Rational = boost::rational<std::int64_t>;
using pfn::LinPerPF;

/// Point of a factor space. In ω+1, kOmega is the limit point and every
/// other id m ≥ 0 is the isolated point m.
using PointId = std::int64_t;
inline constexpr PointId kOmega = -1;

/// ω+1 with d(m,n) = |1/(m+1) − 1/(n+1)| and d(m,ω) = 1/(m+1), or a finite
/// metric space given by its distance matrix (all points isolated).
struct Factor {
  enum class Kind { OmegaPlusOne, Finite };
  Kind kind = Kind::OmegaPlusOne;
  std::vector<std::vector<Rational>> dist;

  static Factor omegaPlusOne() { return {}; }
  static Factor finite(std::vector<std::vector<Rational>> d);

  bool valid(PointId a) const;
  bool isolated(PointId a) const { return kind == Kind::Finite || a != kOmega; }
  Rational distance(PointId a, PointId b) const;
};

/// Factor spaces X_n, given as an eventually periodic choice from a list.
struct FactorCatalog {
  std::vector<Factor> factors;
  Periodic<Nat> layout;

  static FactorCatalog allOmegaPlusOne() { return {{Factor::omegaPlusOne()}, Periodic<Nat>::constant(0)}; }
  const Factor& at(Nat n) const { return factors[layout.at(n)]; }
  void validate() const;
};

using MetricPoint = Periodic<PointId>;

/// A point together with the radius function of a basic neighbourhood
/// N(x, f): coordinate balls of radius 1/f(n). f must be total and positive.
struct PointRadius {
  MetricPoint x;
  LinPerPF f;
};

/// Raised when a radius function takes the value 0.
class ZeroRadius : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Membership of b in the ball of radius 1/f around a.
bool inBall(const Factor& space, PointId a, Nat f, PointId b);
/// Whether the balls B(a, 1/fa) and B(b, 1/fb) are disjoint.
bool ballsDisjoint(const Factor& space, PointId a, Nat fa, PointId b, Nat fb);

/// M(x, f; y) = { n : y(n) ∉ B_n(x(n), 1/f(n)) }.
IndexSet mSet(const FactorCatalog& cat, const MetricPoint& x, const LinPerPF& f, const MetricPoint& y);
/// y ∈ N(x, f), i.e. M(x, f; y) finite.
bool inNbhdMetric(const FactorCatalog& cat, const MetricPoint& y, const MetricPoint& x, const LinPerPF& f);
/// Indices where the coordinate balls of N(x, f) and N(y, g) are disjoint.
IndexSet disjointBalls(const FactorCatalog& cat, const MetricPoint& x, const LinPerPF& f, const MetricPoint& y,
                       const LinPerPF& g);
/// N(x, f) ∩ N(y, g) = ∅ in the nabla product: infinitely many disjoint coordinates.
bool nbhdsDisjointMetric(const FactorCatalog& cat, const MetricPoint& x, const LinPerPF& f, const MetricPoint& y,
                         const LinPerPF& g);

/// M(x,f;y) and M(y,g;x) are almost disjoint infinite sets.
bool switchMetric(const FactorCatalog& cat, const PointRadius& a, const PointRadius& b);

/// Holds iff 1/fx(n) + 1/gy(n) < d_n(x(n), y(n)) for infinitely many n.
DeltaVerdict checkDeltaMetric(const FactorCatalog& cat, const PointRadius& a, const PointRadius& b,
                              const LinPerPF& fx, const LinPerPF& gy);

/// G(x, N(x, f)) = N(x, max{2f, F(x, f)}) over a finite corpus.
struct MetricMNOperator {
  FactorCatalog catalog;
  std::vector<PointRadius> corpus;
  std::vector<LinPerPF> witness;

  LinPerPF gRadius(Nat i) const;
};

MetricMNOperator metricMNOperator(FactorCatalog cat, std::vector<PointRadius> corpus, std::vector<LinPerPF> witness);

/// Proof cases for a pair with y ∉ N(x,f) and x ∉ N(y,g):
/// 1: one M-set finite (then the premise already fails),
/// 2: the M-sets meet infinitely often, 3: the pair switches.
struct MetricPairCheck {
  Nat i = 0;
  Nat j = 0;
  int proofCase = 0;
  bool premise = false;    // y ∉ N(x,f) and x ∉ N(y,g)
  bool gDisjoint = false;  // G-sets disjoint
  bool claimHolds = true;  // half-radius balls (case 2) or Δ inequality (case 3) infinitely often
  bool violated() const { return premise && (!gDisjoint || !claimHolds); }
};

std::vector<MetricPairCheck> metricMNCheck(const MetricMNOperator& op, const std::vector<std::pair<Nat, Nat>>& pairs);

/// f = max(G) + 1 (or the constant 1 for empty G), so that {n ∈ a : f(n) > g(n)}
/// is infinite for every g in G and a in A.
struct Diagonal {
  LinPerPF f;
  /// certified[gi][ai]: residues of a's grid on which f > g from a's cut on.
  std::vector<std::vector<IndexSet>> certified;
};

Diagonal diagonalize(const std::vector<LinPerPF>& g, const std::vector<IndexSet>& a);
/// Independent check through the symbolic eventual-comparison engine.
bool verifyDiagonal(const LinPerPF& f, const std::vector<LinPerPF>& g, const std::vector<IndexSet>& a);

class Unmatched : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// F(x, f) = multiplier·f_α for the least α with f ≤* f_α.
class ScaleWitness {
 public:
  ScaleWitness(std::vector<LinPerPF> chain, Nat multiplier);
  LinPerPF operator()(const LinPerPF& f) const;
  Nat levelOf(const LinPerPF& f) const;
  const std::vector<LinPerPF>& chain() const { return chain_; }

 private:
  std::vector<LinPerPF> chain_;
  Nat multiplier_;
};

ScaleWitness scaleWitness(std::vector<LinPerPF> chain, Nat multiplier = 2);

/// Recursion along the corpus order: F(x_α, f_α) = 2·max{f_α, f'_α} where f'_α
/// diagonalizes the doubled earlier radii on the infinite sets M(x_β, f_β; x_α).
std::vector<LinPerPF> enumerationWitness(const FactorCatalog& cat, const std::vector<PointRadius>& corpus);

Json encode(const Rational& q);
Rational decodeRational(const Json& j);
Json encode(const FactorCatalog& cat);
FactorCatalog decodeCatalog(const Json& j);
Json encode(const MetricPoint& x);
MetricPoint decodeMetricPoint(const Json& j);
Json encode(const MetricPairCheck& c);

}  // namespace deltakit::variants
