#include <catch2/catch_amalgamated.hpp>

#include "failoc/aux_graph.hpp"
#include "failoc/connectivity.hpp"
#include "support/fixtures.hpp"

using failoc::AuxGraph;
using failoc::CutValue;
using failoc::merge_monitors;
using failoc::merge_monitors_without;

TEST_CASE("merge of the triangle fixture is complete") {
  auto topo = fixtures::fix_k();
  auto aux = merge_monitors(topo);
  REQUIRE(aux.g.n == 4);
  REQUIRE(aux.virtual_monitor == 3);
  REQUIRE(aux.to_base == std::vector<int>{1, 2, 3});
  REQUIRE(aux.from_base == std::vector<int>{-1, 0, 1, 2, -1});
  REQUIRE_FALSE(aux.excluded_monitor.has_value());
  // a,b,c plus the merged monitor form a K4
  REQUIRE(aux.g.num_edges() == 6);
  for (int u = 0; u < 4; ++u)
    for (int v = u + 1; v < 4; ++v) REQUIRE(aux.g.has_edge(u, v));
}

TEST_CASE("merge after deleting one monitor") {
  auto topo = fixtures::fix_k();
  int m1 = fixtures::id(topo, "m1");
  int m2 = fixtures::id(topo, "m2");

  auto without_m1 = merge_monitors_without(topo, m1);
  REQUIRE(without_m1.excluded_monitor == m1);
  REQUIRE(without_m1.g.n == 4);
  // only c keeps contact with the leftover monitor
  REQUIRE(without_m1.g.num_edges() == 4);
  REQUIRE(without_m1.g.has_edge(without_m1.local(3), without_m1.virtual_monitor));
  REQUIRE_FALSE(without_m1.g.has_edge(without_m1.local(1), without_m1.virtual_monitor));
  REQUIRE_FALSE(without_m1.g.has_edge(without_m1.local(2), without_m1.virtual_monitor));

  auto without_m2 = merge_monitors_without(topo, m2);
  REQUIRE(without_m2.g.num_edges() == 5);
  REQUIRE(without_m2.g.has_edge(without_m2.local(1), without_m2.virtual_monitor));
  REQUIRE(without_m2.g.has_edge(without_m2.local(2), without_m2.virtual_monitor));
  REQUIRE_FALSE(without_m2.g.has_edge(without_m2.local(3), without_m2.virtual_monitor));
}

TEST_CASE("parallel edges into the virtual monitor collapse") {
  auto topo = fixtures::fix_path();
  auto aux = merge_monitors(topo);
  REQUIRE(aux.g.n == 2);
  REQUIRE(aux.g.num_edges() == 1);
  REQUIRE(aux.g.has_edge(0, 1));
}

TEST_CASE("merge rejects bad monitor arguments") {
  auto topo = fixtures::fix_k();
  REQUIRE_THROWS_AS(merge_monitors_without(topo, fixtures::id(topo, "a")), std::invalid_argument);
  auto path = fixtures::fix_path();
  path.monitor.assign(path.monitor.size(), false);
  REQUIRE_THROWS_AS(merge_monitors(path), std::invalid_argument);
  path.monitor[0] = true;
  REQUIRE_THROWS_AS(merge_monitors_without(path, 0), std::invalid_argument);
}

TEST_CASE("cuts on merged graphs match the hand-checked fixture values") {
  auto topo = fixtures::fix_k();
  int nn = topo.num_non_monitors();
  auto star = merge_monitors(topo);
  auto gm1 = merge_monitors_without(topo, fixtures::id(topo, "m1"));
  auto gm2 = merge_monitors_without(topo, fixtures::id(topo, "m2"));

  // every non-monitor touches a monitor, so the merged cut caps out
  for (const std::string& name : {"a", "b", "c"}) {
    int v = star.local(fixtures::id(topo, name));
    REQUIRE(vertex_connectivity(star.g, v, star.virtual_monitor, nn) == CutValue{3, true, 3});
  }
  // a reaches the leftover monitor only through c once m1 is gone
  REQUIRE(vertex_connectivity(gm1.g, gm1.local(1), gm1.virtual_monitor, nn) ==
          CutValue{1, false, 3});
  // c reaches it only through a,b once m2 is gone
  REQUIRE(vertex_connectivity(gm2.g, gm2.local(3), gm2.virtual_monitor, nn) ==
          CutValue{2, false, 3});
}
