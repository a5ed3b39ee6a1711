#include "deltakit/fi.hpp"

namespace deltakit {

std::string verdictLabel(VerdictKind k) {
  switch (k) {
    case VerdictKind::NotSwitching: return "NotSwitching";
    case VerdictKind::Violated: return "Violated";
    default: return "Holds";
  }
}

Json encode(const DeltaVerdict& v) {
  Json j{{"verdict", verdictLabel(v.kind)}, {"certificate", encode(v.certificate)}};
  if (v.kind == VerdictKind::HoldsLeft) j["side"] = "left";
  if (v.kind == VerdictKind::HoldsRight) j["side"] = "right";
  if (!v.detail.empty()) j["detail"] = v.detail;
  return j;
}

}  // namespace deltakit

namespace deltakit::fi {

using pfn::LinPerPF;
using deltakit::encode;

FiDecomposition fiDecompose(const LinPerPF& x, Nat maxHeight) {
  if (x.isEmpty()) throw PreconditionError("fiDecompose: empty domain");
  FiDecomposition d{x, {}};
  LinPerPF rest = x;
  while (!rest.isEmpty()) {
    if (d.layers.size() == maxHeight) throw HeightExceeded(maxHeight);
    LinPerPF layer = pfn::perp(rest);
    rest = pfn::diff(rest, layer);
    d.layers.push_back(std::move(layer));
  }
  return d;
}

Nat height(const LinPerPF& x, Nat maxHeight) { return fiDecompose(x, maxHeight).layers.size(); }

bool isINCplus(const LinPerPF& x) { return x.hasInfiniteDomain() && pfn::isIncreasing(x); }

bool isFIplus(const LinPerPF& x, Nat maxHeight) {
  if (x.isEmpty()) return false;
  for (const LinPerPF& layer : fiDecompose(x, maxHeight).layers)
    if (!layer.hasInfiniteDomain()) return false;
  return true;
}

LinPerPF witnessIncF(const LinPerPF& x) {
  if (!isINCplus(x)) throw PreconditionError("witnessIncF: argument is not increasing with infinite domain");
  std::vector<Value> prefix(x.cut());
  for (Nat n = 0; n < x.cut(); ++n) {
    const Value v = x.at(n);
    prefix[n] = v ? *v : *x.at(pfn::nextInDom(x, n)) + 1;
  }
  const Nat p = x.period();
  std::vector<TailClass> classes(p);
  for (Nat r = 0; r < p; ++r) {
    if (x.classes()[r]) {
      classes[r] = x.classes()[r];
      continue;
    }
    // The next domain point lies in the next affine class, cyclically; wrapping
    // past the end of the period moves to the following block.
    for (Nat step = 1; step < p; ++step) {
      const Nat s = (r + step) % p;
      const TailClass& c = x.classes()[s];
      if (!c) continue;
      const Nat wrap = s < r ? 1 : 0;
      classes[r] = Affine{c->slope, c->slope * wrap + c->intercept + 1};
      break;
    }
  }
  return LinPerPF(std::move(prefix), std::move(classes)).canonical();
}

LinPerPF witnessFiF(const LinPerPF& x, Nat maxHeight) {
  if (!isFIplus(x, maxHeight)) throw PreconditionError("witnessFiF: argument is not in FI+");
  const FiDecomposition d = fiDecompose(x, maxHeight);
  LinPerPF f = witnessIncF(d.layers.front());
  for (std::size_t i = 1; i < d.layers.size(); ++i) f = pfn::maxFn(f, witnessIncF(d.layers[i]));
  return f;
}

DeltaVerdict checkDeltaConclusion(const LinPerPF& x, const LinPerPF& y, const LinPerPF& fx, const LinPerPF& fy) {
  if (!fx.isTotal() || !fy.isTotal()) throw PreconditionError("checkDeltaConclusion: witnesses must be total");
  DeltaVerdict v;
  if (!pfn::switches(x, y)) {
    v.kind = VerdictKind::NotSwitching;
    v.certificate.kind = "not-switching";
    if (!pfn::compatible(x, y)) v.certificate.note = "incompatible";
    else if (!pfn::diff(x, y).hasInfiniteDomain()) v.certificate.note = "x minus y is finite";
    else v.certificate.note = "y minus x is finite";
    return v;
  }
  auto [left, leftCert] = pfn::gtStarCertified(pfn::diff(x, y), fy);
  if (!left) {
    v.kind = VerdictKind::HoldsLeft;
    v.certificate = leftCert;
    return v;
  }
  auto [right, rightCert] = pfn::gtStarCertified(pfn::diff(y, x), fx);
  if (!right) {
    v.kind = VerdictKind::HoldsRight;
    v.certificate = rightCert;
    return v;
  }
  v.kind = VerdictKind::Violated;
  v.certificate.kind = "eventually";
  v.certificate.from = std::max(leftCert.from, rightCert.from);
  v.certificate.note = "both differences dominate the opposite witness from this index";
  return v;
}

IndStepVerdict indStepCheck(const LinPerPF& z, const LinPerPF& w) {
  if (!z.hasInfiniteDomain() || !w.hasInfiniteDomain())
    throw PreconditionError("indStepCheck: both arguments need infinite domains");
  if (!pfn::compatible(z, w)) throw PreconditionError("indStepCheck: arguments are not compatible");
  const LinPerPF zp = pfn::perp(z);
  const LinPerPF wp = pfn::perp(w);
  IndStepVerdict v;
  auto [left, leftCert] = pfn::gtStarCertified(pfn::diff(z, w), witnessIncF(wp));
  if (!left) {
    v.certificate = leftCert;
    v.detail = "z minus w does not dominate F(perp w)";
    return v;
  }
  auto [right, rightCert] = pfn::gtStarCertified(pfn::diff(w, z), witnessIncF(zp));
  if (!right) {
    v.certificate = rightCert;
    v.detail = "w minus z does not dominate F(perp z)";
    return v;
  }
  v.certificate.kind = "eventually";
  v.certificate.from = std::max(leftCert.from, rightCert.from);
  if (pfn::eqModFinite(zp, wp)) {
    v.kind = IndStepKind::LemmaHolds;
  } else {
    v.kind = IndStepKind::LemmaViolated;
    v.detail = "perp z and perp w differ infinitely often";
  }
  return v;
}

Json encode(const FiDecomposition& d) {
  Json layers = Json::array();
  for (const LinPerPF& l : d.layers) layers.push_back(encode(l));
  return {{"source", encode(d.source)}, {"height", d.layers.size()}, {"layers", layers}};
}

Json encode(const IndStepVerdict& v) {
  static constexpr const char* kLabels[] = {"HypothesisFails", "LemmaHolds", "LemmaViolated"};
  Json j{{"verdict", kLabels[static_cast<int>(v.kind)]}, {"certificate", encode(v.certificate)}};
  if (!v.detail.empty()) j["detail"] = v.detail;
  return j;
}

}  // namespace deltakit::fi
