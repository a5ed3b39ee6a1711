#pragma once

// Literal finite-window evaluation used as an independent check on the
// symbolic layer. Only LinPerPF::at is shared with the code under test.

#include <vector>

#include "deltakit/linper.hpp"

namespace window {

using deltakit::Nat;
using deltakit::Value;
using Seq = std::vector<Value>;

inline Seq sample(const deltakit::pfn::LinPerPF& x, Nat horizon) {
  Seq s(horizon);
  for (Nat n = 0; n < horizon; ++n) s[n] = x.at(n);
  return s;
}

// Indices m < limit with x(m) <= x(n) for every later n in dom x below s.size().
inline Seq perp(const Seq& s, Nat limit) {
  Seq out(limit);
  for (Nat m = 0; m < limit; ++m) {
    if (!s[m]) continue;
    bool ok = true;
    for (Nat n = m + 1; n < s.size() && ok; ++n) ok = !s[n] || *s[m] <= *s[n];
    if (ok) out[m] = s[m];
  }
  return out;
}

inline Seq dec(const Seq& s) {
  Seq out(s.size());
  bool first = true;
  for (Nat n = 0; n < s.size(); ++n) {
    if (!s[n]) continue;
    bool below = true;
    for (Nat m = 0; m < n && below; ++m) below = !s[m] || *s[m] > *s[n];
    if (first || below) out[n] = s[n];
    first = false;
  }
  return out;
}

// Longest strictly decreasing subsequence of the defined values, index order.
inline Nat longestDecreasing(const Seq& s) {
  std::vector<Nat> best(s.size(), 0);
  Nat top = 0;
  for (Nat n = 0; n < s.size(); ++n) {
    if (!s[n]) continue;
    best[n] = 1;
    for (Nat m = 0; m < n; ++m)
      if (s[m] && *s[m] > *s[n]) best[n] = std::max(best[n], best[m] + 1);
    top = std::max(top, best[n]);
  }
  return top;
}

inline Seq prefixOf(const Seq& s, Nat n) { return Seq(s.begin(), s.begin() + std::min<std::size_t>(n, s.size())); }

}  // namespace window
