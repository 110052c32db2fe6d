#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

#include "failoc/aux_graph.hpp"
#include "failoc/connectivity.hpp"
#include "failoc/errors.hpp"
#include "failoc/graph.hpp"
#include "failoc/ident.hpp"

namespace failoc {

namespace detail {

inline std::vector<int> checked_non_monitors(const Topology& topo, const std::vector<int>& nodes,
                                             const char* who) {
  if (nodes.empty()) throw ConfigError(std::string(who) + ": empty node set");
  std::vector<int> s = nodes;
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  for (int v : s) {
    if (!topo.g.has_node(v)) throw ConfigError(std::string(who) + ": node id out of range");
    if (topo.is_monitor(v)) throw ConfigError(std::string(who) + ": set contains a monitor");
  }
  return s;
}

// Min over the given nodes of their cut to the virtual monitor of `aux`.
// The set value is capped exactly when every member is capped.
inline CutValue min_cut_over(const AuxGraph& aux, const std::vector<int>& base_nodes, int cap) {
  CutValue best{cap, true, cap};
  for (int v : base_nodes) {
    CutValue c = vertex_connectivity(aux.g, aux.local(v), aux.virtual_monitor, cap);
    if (c.value < best.value || (c.value == best.value && !c.capped)) best = c;
  }
  return best;
}

}  // namespace detail

// Minimum cut separating any of the given non-monitors from the merged
// monitor set, capped at the non-monitor count.
inline CutValue monitor_cut_merged(const Topology& topo, const std::vector<int>& nodes) {
  auto s = detail::checked_non_monitors(topo, nodes, "monitor_cut_merged");
  if (topo.num_monitors() < 1) throw ConfigError("monitor_cut_merged: no monitors");
  auto aux = merge_monitors(topo);
  return detail::min_cut_over(aux, s, topo.num_non_monitors());
}

struct MonitorCutMin {
  CutValue cut;
  int monitor = -1;  // smallest monitor attaining the minimum
};

// Min over single-monitor deletions of the cut separating any given
// non-monitor from the remaining merged monitors.
inline MonitorCutMin monitor_cut_removed_min(const Topology& topo, const std::vector<int>& nodes) {
  auto s = detail::checked_non_monitors(topo, nodes, "monitor_cut_removed_min");
  if (topo.num_monitors() < 2)
    throw ConfigError("monitor_cut_removed_min: needs at least two monitors");
  int cap = topo.num_non_monitors();
  MonitorCutMin best;
  for (int m : topo.monitors()) {
    auto aux = merge_monitors_without(topo, m);
    CutValue c = detail::min_cut_over(aux, s, cap);
    if (best.monitor < 0 || c.value < best.cut.value ||
        (c.value == best.cut.value && !c.capped && best.cut.capped)) {
      best.cut = c;
      best.monitor = m;
    }
  }
  return best;
}

// Cut profile of a single non-monitor. pivot drives the CSP bounds: nodes
// with pivot at least k+1 are k-identifiable, nodes above k may be.
struct CspNodeMetrics {
  int node = -1;
  CutValue merged_cut;                  // to the merged monitor, all monitors kept
  std::map<int, CutValue> removed_cut;  // monitor -> cut with that monitor deleted
  int pivot = 0;                        // min(merged_cut - 1, smallest removed_cut)
  int num_non_monitors = 0;
  int monitor_neighbors = 0;
};

inline CspNodeMetrics csp_node_metrics(const Topology& topo, int v) {
  detail::checked_non_monitors(topo, {v}, "csp_node_metrics");
  if (topo.num_monitors() < 2) throw ConfigError("csp_node_metrics: needs at least two monitors");
  int cap = topo.num_non_monitors();
  CspNodeMetrics nm;
  nm.node = v;
  nm.num_non_monitors = cap;
  nm.monitor_neighbors = topo.monitor_neighbor_count(v);
  auto star = merge_monitors(topo);
  nm.merged_cut = vertex_connectivity(star.g, star.local(v), star.virtual_monitor, cap);
  int removed_min = cap;
  for (int m : topo.monitors()) {
    auto aux = merge_monitors_without(topo, m);
    CutValue c = vertex_connectivity(aux.g, aux.local(v), aux.virtual_monitor, cap);
    removed_min = std::min(removed_min, c.value);
    nm.removed_cut.emplace(m, c);
  }
  nm.pivot = std::max(0, std::min(nm.merged_cut.value - 1, removed_min));
  return nm;
}

// Batch variant: builds each auxiliary graph once.
inline std::vector<CspNodeMetrics> csp_node_metrics_all(const Topology& topo) {
  if (topo.num_monitors() < 2)
    throw ConfigError("csp_node_metrics_all: needs at least two monitors");
  int cap = topo.num_non_monitors();
  auto non_monitors = topo.non_monitors();
  std::vector<CspNodeMetrics> out(non_monitors.size());
  auto star = merge_monitors(topo);
  for (std::size_t i = 0; i < non_monitors.size(); ++i) {
    int v = non_monitors[i];
    out[i].node = v;
    out[i].num_non_monitors = cap;
    out[i].monitor_neighbors = topo.monitor_neighbor_count(v);
    out[i].merged_cut = vertex_connectivity(star.g, star.local(v), star.virtual_monitor, cap);
  }
  for (int m : topo.monitors()) {
    auto aux = merge_monitors_without(topo, m);
    for (std::size_t i = 0; i < non_monitors.size(); ++i) {
      int v = non_monitors[i];
      out[i].removed_cut.emplace(
          m, vertex_connectivity(aux.g, aux.local(v), aux.virtual_monitor, cap));
    }
  }
  for (auto& nm : out) {
    int removed_min = cap;
    for (const auto& [m, c] : nm.removed_cut) removed_min = std::min(removed_min, c.value);
    nm.pivot = std::max(0, std::min(nm.merged_cut.value - 1, removed_min));
  }
  return out;
}

inline int csp_pivot(const Topology& topo, int v) { return csp_node_metrics(topo, v).pivot; }

// The one non-monitor a topology may tolerate at the second-highest failure
// level: it has exactly one monitor neighbor but touches every other
// non-monitor, while all the others have two monitor neighbors.
inline std::optional<int> csp_hub(const Topology& topo) {
  std::optional<int> weak;
  for (int v : topo.non_monitors()) {
    if (topo.monitor_neighbor_count(v) >= 2) continue;
    if (weak) return std::nullopt;  // more than one weak node
    weak = v;
  }
  if (!weak) return std::nullopt;
  if (topo.monitor_neighbor_count(*weak) != 1) return std::nullopt;
  for (int u : topo.non_monitors()) {
    if (u != *weak && !topo.g.has_edge(*weak, u)) return std::nullopt;
  }
  return weak;
}

namespace detail {

// Exact test for identifiability at failure level nn-1: either every
// candidate has two monitor neighbors, or the single weak candidate is a
// hub-shaped node and everyone else in the network has two.
inline bool near_full_identifiable(const Topology& topo, const std::vector<int>& s) {
  int nn = topo.num_non_monitors();
  if (nn <= 1) return true;  // level 0: vacuous
  bool all_two = true;
  for (int v : s)
    if (topo.monitor_neighbor_count(v) < 2) all_two = false;
  if (all_two) return true;
  auto hub = csp_hub(topo);
  return hub && std::find(s.begin(), s.end(), *hub) != s.end();
}

}  // namespace detail

// Top-of-range exact characterizations for a candidate set.
struct CspTopCases {
  bool full_identifiable = false;       // at failure level = non-monitor count
  bool near_full_identifiable = false;  // at level one below that
  std::optional<int> hub;
  std::vector<int> near_full_set;  // exact maximal set at that lower level
};

inline CspTopCases csp_top_cases(const Topology& topo, const std::vector<int>& nodes) {
  std::vector<int> s;
  if (!nodes.empty()) s = detail::checked_non_monitors(topo, nodes, "csp_top_cases");
  CspTopCases out;
  out.full_identifiable = true;
  for (int v : s)
    if (topo.monitor_neighbor_count(v) < 2) out.full_identifiable = false;
  out.near_full_identifiable = detail::near_full_identifiable(topo, s);
  out.hub = csp_hub(topo);
  for (int v : topo.non_monitors())
    if (topo.monitor_neighbor_count(v) >= 2) out.near_full_set.push_back(v);
  if (out.hub) {
    out.near_full_set.push_back(*out.hub);
    std::sort(out.near_full_set.begin(), out.near_full_set.end());
  }
  return out;
}

// Sufficient/necessary verdict for k-identifiability of a set under CSP.
// k = 0 is vacuous; the two highest levels have exact tests; in between the
// cut conditions decide: merged cut >= k+2 plus removed-monitor cut >= k+1
// suffices, merged >= k+1 plus removed >= k is necessary.
inline TriState csp_k_identifiable(const Topology& topo, const std::vector<int>& nodes, int k) {
  auto s = detail::checked_non_monitors(topo, nodes, "csp_k_identifiable");
  int nn = topo.num_non_monitors();
  if (k < 0 || k > nn) throw ConfigError("csp_k_identifiable: k outside 0..#non-monitors");
  if (k == 0) return TriState::Sufficient;
  if (k == nn) {
    for (int v : s)
      if (topo.monitor_neighbor_count(v) < 2) return TriState::No;
    return TriState::Sufficient;
  }
  if (k == nn - 1)
    return detail::near_full_identifiable(topo, s) ? TriState::Sufficient : TriState::No;
  CutValue merged = monitor_cut_merged(topo, s);
  MonitorCutMin removed = monitor_cut_removed_min(topo, s);
  if (merged.value >= k + 2 && removed.cut.value >= k + 1) return TriState::Sufficient;
  if (merged.value < k + 1 || removed.cut.value < k) return TriState::No;
  return TriState::Inconclusive;
}

namespace detail {

inline IdentInterval csp_bounds_from(const CspNodeMetrics& nm, bool is_hub) {
  IdentInterval out;
  out.mechanism = MechanismTag::CSP;
  int nn = nm.num_non_monitors;
  if (nm.pivot <= nn - 2) {
    out.lower = std::max(nm.pivot - 1, 0);
    out.upper = nm.pivot;
    out.applicability = Applicability::InRange;
    return out;
  }
  // pivot at its ceiling: the two-sided pivot bound no longer applies, but
  // the exact top-level characterizations may still pin the value
  if (nm.monitor_neighbors >= 2) {
    out.lower = out.upper = nn;
    out.applicability = Applicability::Exact;
    return out;
  }
  if (is_hub) {
    out.lower = out.upper = nn - 1;
    out.applicability = Applicability::Exact;
    return out;
  }
  out.lower = std::max(nm.pivot - 1, 0);
  out.upper = std::min(nm.pivot, nn);
  out.applicability = Applicability::RangeExceeded;
  return out;
}

inline IdentInterval cap_bounds_from(CutValue merged_cut, int nn) {
  IdentInterval out;
  out.mechanism = MechanismTag::CAP;
  if (merged_cut.capped) {
    // adjacent to a monitor: a two-hop round trip walk isolates the node
    // under any failure set, so the value tops out exactly
    out.lower = out.upper = nn;
    out.applicability = Applicability::Exact;
    return out;
  }
  out.lower = std::max(merged_cut.value - 1, 0);
  out.upper = merged_cut.value;
  out.applicability = Applicability::InRange;
  return out;
}

}  // namespace detail

inline IdentInterval csp_node_bounds(const Topology& topo, int v) {
  auto nm = csp_node_metrics(topo, v);
  auto hub = csp_hub(topo);
  return detail::csp_bounds_from(nm, hub == v);
}

inline std::vector<IdentInterval> csp_node_bounds_all(const Topology& topo) {
  auto metrics = csp_node_metrics_all(topo);
  auto hub = csp_hub(topo);
  std::vector<IdentInterval> out;
  out.reserve(metrics.size());
  for (const auto& nm : metrics) out.push_back(detail::csp_bounds_from(nm, hub == nm.node));
  return out;
}

inline IdentInterval cap_node_bounds(const Topology& topo, int v) {
  detail::checked_non_monitors(topo, {v}, "cap_node_bounds");
  if (topo.num_monitors() < 1) throw ConfigError("cap_node_bounds: no monitors");
  auto star = merge_monitors(topo);
  int nn = topo.num_non_monitors();
  return detail::cap_bounds_from(
      vertex_connectivity(star.g, star.local(v), star.virtual_monitor, nn), nn);
}

inline std::vector<IdentInterval> cap_node_bounds_all(const Topology& topo) {
  if (topo.num_monitors() < 1) throw ConfigError("cap_node_bounds_all: no monitors");
  auto star = merge_monitors(topo);
  int nn = topo.num_non_monitors();
  std::vector<IdentInterval> out;
  for (int v : topo.non_monitors()) {
    out.push_back(detail::cap_bounds_from(
        vertex_connectivity(star.g, star.local(v), star.virtual_monitor, nn), nn));
  }
  return out;
}

// Inner and outer approximations of the k-identifiable non-monitor set under
// CSP via the pivot thresholds; the level just below the top routes through
// the exact hub characterization instead. The metrics overload lets sweeps
// reuse one cut computation across every k.
inline IdentSetBounds csp_set_bounds(const Topology& topo, int k,
                                     const std::vector<CspNodeMetrics>& metrics) {
  int nn = topo.num_non_monitors();
  if (k < 1 || k > nn - 1) throw ConfigError("csp_set_bounds: k outside 1..#non-monitors-1");
  IdentSetBounds out;
  out.k = k;
  if (k == nn - 1) {
    auto cases = csp_top_cases(topo, {});
    out.inner = cases.near_full_set;
    out.outer = cases.near_full_set;
    out.exact = cases.near_full_set;
    return out;
  }
  for (const auto& nm : metrics) {
    if (nm.pivot >= k + 1) out.inner.push_back(nm.node);
    if (nm.pivot >= k) out.outer.push_back(nm.node);
  }
  if (out.inner == out.outer) out.exact = out.inner;
  return out;
}

inline IdentSetBounds csp_set_bounds(const Topology& topo, int k) {
  return csp_set_bounds(topo, k, csp_node_metrics_all(topo));
}

// Set-level view of the walk-mechanism intervals: nodes whose lower bound
// clears k are certainly k-identifiable, nodes whose upper bound does may be.
inline IdentSetBounds cap_set_bounds(const Topology& topo, int k,
                                     const std::vector<IdentInterval>& intervals) {
  int nn = topo.num_non_monitors();
  if (k < 1 || k > nn) throw ConfigError("cap_set_bounds: k outside 1..#non-monitors");
  IdentSetBounds out;
  out.k = k;
  auto non_monitors = topo.non_monitors();
  for (std::size_t i = 0; i < non_monitors.size(); ++i) {
    if (intervals[i].lower >= k) out.inner.push_back(non_monitors[i]);
    if (intervals[i].upper >= k) out.outer.push_back(non_monitors[i]);
  }
  if (out.inner == out.outer) out.exact = out.inner;
  return out;
}

inline IdentSetBounds cap_set_bounds(const Topology& topo, int k) {
  return cap_set_bounds(topo, k, cap_node_bounds_all(topo));
}

}  // namespace failoc
