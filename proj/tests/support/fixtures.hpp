#pragma once

#include <string>
#include <vector>

#include "failoc/graph.hpp"

// Small topologies reused across the suite. Node ids follow first appearance
// in the edge lists below, so tests can rely on fixed ids.
namespace fixtures {

// m1 - a - m2; ids m1=0 a=1 m2=2
inline failoc::Topology fix_path() {
  return failoc::topology_from_edges({{"m1", "a"}, {"a", "m2"}}, {"m1", "m2"});
}

// m1 - a - b - m2; ids m1=0 a=1 b=2 m2=3
inline failoc::Topology fix_chain() {
  return failoc::topology_from_edges({{"m1", "a"}, {"a", "b"}, {"b", "m2"}}, {"m1", "m2"});
}

// Triangle a,b,c with monitors m1 (at a,b) and m2 (at c).
// ids m1=0 a=1 b=2 c=3 m2=4
inline failoc::Topology fix_k() {
  return failoc::topology_from_edges(
      {{"m1", "a"}, {"m1", "b"}, {"a", "b"}, {"a", "c"}, {"b", "c"}, {"c", "m2"}},
      {"m1", "m2"});
}

// Hub w next to a, b and one monitor; a and b each see two monitors.
// ids m1=0 a=1 m2=2 b=3 m3=4 w=5
inline failoc::Topology fix_star() {
  return failoc::topology_from_edges({{"m1", "a"},
                                      {"m2", "a"},
                                      {"m2", "b"},
                                      {"m3", "b"},
                                      {"m1", "w"},
                                      {"w", "a"},
                                      {"w", "b"}},
                                     {"m1", "m2", "m3"});
}

// Plain 4-cycle s - x - t - y - s; ids s=0 x=1 t=2 y=3
inline failoc::Graph fix_c4() {
  failoc::Graph g(4);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  g.add_edge(2, 3);
  g.add_edge(3, 0);
  return g;
}

inline int id(const failoc::Topology& topo, const std::string& name) {
  int v = topo.id_of(name);
  if (v < 0) throw std::runtime_error("fixture has no node " + name);
  return v;
}

inline std::vector<int> ids(const failoc::Topology& topo, const std::vector<std::string>& names) {
  std::vector<int> out;
  for (const auto& n : names) out.push_back(id(topo, n));
  return out;
}

}  // namespace fixtures
