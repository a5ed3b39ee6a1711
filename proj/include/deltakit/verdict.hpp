#pragma once

#include <string>

#include "deltakit/json_io.hpp"
#include "deltakit/pfn.hpp"

namespace deltakit {

enum class VerdictKind { NotSwitching, Holds, HoldsLeft, HoldsRight, Violated };

/// Outcome of checking a Δ-style conclusion on one pair.
struct DeltaVerdict {
  VerdictKind kind = VerdictKind::NotSwitching;
  pfn::Certificate certificate;
  std::string detail;

  bool violated() const { return kind == VerdictKind::Violated; }
  bool holds() const {
    return kind == VerdictKind::Holds || kind == VerdictKind::HoldsLeft || kind == VerdictKind::HoldsRight;
  }
};

std::string verdictLabel(VerdictKind k);
Json encode(const DeltaVerdict& v);

}  // namespace deltakit
