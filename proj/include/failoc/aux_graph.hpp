#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "failoc/graph.hpp"

namespace failoc {

// Auxiliary graph for cut computations: the non-monitors of a base topology
// plus one virtual node standing for the (possibly reduced) monitor set.
// Local ids 0..nn-1 are the non-monitors in ascending base order; the virtual
// monitor is local id nn. Parallel edges produced by the merge collapse.
struct AuxGraph {
  Graph g;
  std::vector<int> to_base;    // local non-monitor id -> base id
  std::vector<int> from_base;  // base id -> local id, -1 for monitors
  int virtual_monitor = 0;
  std::optional<int> excluded_monitor;  // base id dropped before merging, if any

  int local(int base_id) const {
    int v = from_base[static_cast<std::size_t>(base_id)];
    if (v < 0) throw std::invalid_argument("AuxGraph: node has no local image");
    return v;
  }
};

namespace detail {

inline AuxGraph merge_impl(const Topology& topo, std::optional<int> excluded) {
  AuxGraph aux;
  aux.excluded_monitor = excluded;
  aux.from_base.assign(static_cast<std::size_t>(topo.num_nodes()), -1);
  for (int v = 0; v < topo.num_nodes(); ++v) {
    if (topo.is_monitor(v)) continue;
    aux.from_base[static_cast<std::size_t>(v)] = static_cast<int>(aux.to_base.size());
    aux.to_base.push_back(v);
  }
  int nn = static_cast<int>(aux.to_base.size());
  aux.virtual_monitor = nn;
  aux.g = Graph(nn + 1);
  for (auto [u, v] : topo.g.edges) {
    if (excluded && (u == *excluded || v == *excluded)) continue;
    bool um = topo.is_monitor(u);
    bool vm = topo.is_monitor(v);
    if (um && vm) continue;
    if (!um && !vm) {
      aux.g.add_edge(aux.from_base[static_cast<std::size_t>(u)],
                     aux.from_base[static_cast<std::size_t>(v)]);
    } else {
      int w = um ? v : u;
      aux.g.add_edge(aux.from_base[static_cast<std::size_t>(w)], aux.virtual_monitor);
    }
  }
  return aux;
}

}  // namespace detail

// Merges all monitors into the virtual monitor.
inline AuxGraph merge_monitors(const Topology& topo) {
  if (topo.num_monitors() == 0)
    throw std::invalid_argument("merge_monitors: topology has no monitors");
  return detail::merge_impl(topo, std::nullopt);
}

// Deletes monitor m, then merges the remaining monitors. Requires at least
// two monitors so the virtual monitor still stands for something.
inline AuxGraph merge_monitors_without(const Topology& topo, int m) {
  if (!topo.g.has_node(m) || !topo.is_monitor(m))
    throw std::invalid_argument("merge_monitors_without: m is not a monitor");
  if (topo.num_monitors() < 2)
    throw std::invalid_argument("merge_monitors_without: needs at least two monitors");
  return detail::merge_impl(topo, m);
}

}  // namespace failoc
