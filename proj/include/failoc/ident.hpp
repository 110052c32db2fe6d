#pragma once

#include <optional>
#include <string>
#include <vector>

#include "failoc/errors.hpp"

namespace failoc {

// Probing mechanisms, ordered by capability: UP replays a fixed path set,
// CSP routes any simple monitor-to-monitor path, CAP routes arbitrary
// monitor-to-monitor walks (cycles allowed).
enum class MechanismTag { CAP, CSP, UP };

inline const char* mechanism_name(MechanismTag m) {
  switch (m) {
    case MechanismTag::CAP: return "cap";
    case MechanismTag::CSP: return "csp";
    case MechanismTag::UP: return "up";
  }
  return "?";
}

inline MechanismTag parse_mechanism(const std::string& s) {
  if (s == "cap") return MechanismTag::CAP;
  if (s == "csp") return MechanismTag::CSP;
  if (s == "up") return MechanismTag::UP;
  throw ConfigError("unknown mechanism: " + s);
}

// How a bound interval was obtained. Exact: from an if-and-only-if
// characterization, lower == upper. InRange: the two-sided pivot bound
// applied within its stated range. RangeExceeded: the requested node sits
// outside that range; the reported interval comes from the boundary cases
// and is still sound.
enum class Applicability { Exact, InRange, RangeExceeded };

inline const char* applicability_name(Applicability a) {
  switch (a) {
    case Applicability::Exact: return "exact";
    case Applicability::InRange: return "in-range";
    case Applicability::RangeExceeded: return "range-exceeded";
  }
  return "?";
}

// Verdict of a sufficient/necessary condition pair.
enum class TriState { Sufficient, Inconclusive, No };

inline const char* tristate_name(TriState t) {
  switch (t) {
    case TriState::Sufficient: return "sufficient";
    case TriState::Inconclusive: return "inconclusive";
    case TriState::No: return "no";
  }
  return "?";
}

// Bounds on the maximum identifiability of one node: the largest k such that
// the node's failure is always localizable when at most k nodes fail.
struct IdentInterval {
  int lower = 0;
  int upper = 0;
  MechanismTag mechanism = MechanismTag::CSP;
  Applicability applicability = Applicability::InRange;

  bool operator==(const IdentInterval&) const = default;
};

// Inner and outer approximations of the set of k-identifiable non-monitors.
// inner is guaranteed contained in the true set, outer contains it. exact is
// set when the two coincide by construction.
struct IdentSetBounds {
  int k = 0;
  std::vector<int> inner;
  std::vector<int> outer;
  std::optional<std::vector<int>> exact;
};

}  // namespace failoc
