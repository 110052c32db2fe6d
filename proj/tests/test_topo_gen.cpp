#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "failoc/topo_gen.hpp"

using failoc::GenSpec;
using failoc::GraphModel;
using failoc::Rng;

namespace {

GenSpec er_spec(int n, double p, std::uint64_t seed) {
  GenSpec s;
  s.model = GraphModel::ER;
  s.num_nodes = n;
  s.param = p;
  s.seed = seed;
  return s;
}

}  // namespace

TEST_CASE("generation is deterministic in the seed") {
  auto a = failoc::generate(er_spec(12, 0.4, 7));
  auto b = failoc::generate(er_spec(12, 0.4, 7));
  REQUIRE(a.topo.g.edges == b.topo.g.edges);
  REQUIRE(a.attempts == b.attempts);
  auto c = failoc::generate(er_spec(12, 0.4, 8));
  REQUIRE(a.topo.g.edges != c.topo.g.edges);
}

TEST_CASE("ER rejection keeps drawing until connected") {
  auto spec = er_spec(10, 1.0, 1);
  auto res = failoc::generate(spec);
  REQUIRE(res.attempts == 1);
  REQUIRE(res.topo.num_links() == 45);

  spec.param = 0.0;
  spec.max_retries = 25;
  REQUIRE_THROWS_AS(failoc::generate(spec), failoc::BudgetError);
}

TEST_CASE("ER pre-rejection mean matches n choose 2 times p") {
  Rng rng(42);
  long long total = 0;
  const int draws = 400;
  for (int i = 0; i < draws; ++i) total += failoc::er_draw(10, 0.3, rng).num_edges();
  double mean = static_cast<double>(total) / draws;
  REQUIRE(mean > 12.5);
  REQUIRE(mean < 14.5);
}

TEST_CASE("RG links exactly the pairs within the radius") {
  GenSpec spec;
  spec.model = GraphModel::RG;
  spec.num_nodes = 14;
  spec.param = 0.45;
  spec.seed = 3;
  auto res = failoc::generate(spec);
  REQUIRE(res.positions.size() == 14);
  double r2 = spec.param * spec.param;
  for (int u = 0; u < 14; ++u)
    for (int v = u + 1; v < 14; ++v) {
      double dx = res.positions[u].first - res.positions[v].first;
      double dy = res.positions[u].second - res.positions[v].second;
      REQUIRE(res.topo.g.has_edge(u, v) == (dx * dx + dy * dy <= r2));
    }

  spec.param = 1.5;  // covers the whole unit square
  auto full = failoc::generate(spec);
  REQUIRE(full.topo.num_links() == 14 * 13 / 2);
  REQUIRE(full.attempts == 1);
}

TEST_CASE("BA seed star and link counts") {
  Rng rng(5);
  auto seed_only = failoc::ba_build(4, 2, rng);
  REQUIRE(seed_only.num_edges() == 3);
  REQUIRE(seed_only.degree(0) == 3);

  auto g2 = failoc::ba_build(10, 2, rng);
  REQUIRE(g2.num_edges() == 3 + 6 * 2);
  REQUIRE(failoc::is_connected(g2));

  auto g1 = failoc::ba_build(10, 1, rng);
  REQUIRE(g1.num_edges() == 9);

  // attach count larger than the current graph: attach to everyone
  auto g5 = failoc::ba_build(10, 5, rng);
  REQUIRE(g5.num_edges() == 3 + 4 + 5 * 5);

  REQUIRE_THROWS_AS(failoc::ba_build(3, 1, rng), failoc::ConfigError);
  REQUIRE_THROWS_AS(failoc::ba_build(10, 0, rng), failoc::ConfigError);
}

TEST_CASE("BA attachment is degree proportional") {
  // in the 4-node star the hub holds half the degree mass, so the single
  // link of node 5 lands on it about half the time
  Rng rng(99);
  int hub_hits = 0;
  const int builds = 1000;
  for (int i = 0; i < builds; ++i) {
    auto g = failoc::ba_build(5, 1, rng);
    if (g.has_edge(0, 4)) ++hub_hits;
  }
  double rate = static_cast<double>(hub_hits) / builds;
  REQUIRE(rate > 0.44);
  REQUIRE(rate < 0.56);
}

TEST_CASE("RPL pair probabilities and the clamp flag") {
  Rng rng(11);
  bool clamped = false;
  failoc::rpl_draw(5, 3.0, rng, &clamped);
  REQUIRE(clamped);  // top weights 64*125 overwhelm the weight sum 225

  clamped = true;
  failoc::rpl_draw(5, 0.0, rng, &clamped);
  REQUIRE_FALSE(clamped);

  // alpha 0 means every pair has probability 1/n
  long long total = 0;
  const int draws = 2000;
  for (int i = 0; i < draws; ++i) total += failoc::rpl_draw(5, 0.0, rng).num_edges();
  double mean = static_cast<double>(total) / draws;
  REQUIRE(mean > 1.8);
  REQUIRE(mean < 2.2);
}

TEST_CASE("calibration closed forms") {
  REQUIRE(failoc::calibrate_param(GraphModel::ER, 20, 51, 0) ==
          Catch::Approx(51.0 / 190.0));
  REQUIRE(failoc::calibrate_param(GraphModel::BA, 20, 51, 0) == 3.0);
  REQUIRE(failoc::calibrate_param(GraphModel::BA, 20, 99, 0) == 6.0);
  REQUIRE_THROWS_AS(failoc::calibrate_param(GraphModel::ER, 5, 11, 0), failoc::ConfigError);
  REQUIRE_THROWS_AS(failoc::calibrate_param(GraphModel::BA, 4, 3, 0), failoc::ConfigError);
  REQUIRE_THROWS_AS(failoc::calibrate_param(GraphModel::File, 5, 4, 0), failoc::ConfigError);
}

TEST_CASE("empirical calibration hits the target mean") {
  for (GraphModel model : {GraphModel::RG, GraphModel::RPL}) {
    double param = failoc::calibrate_param(model, 12, 20, 17);
    long long total = 0;
    const int draws = 600;
    for (int d = 0; d < draws; ++d) {
      Rng rng(failoc::mix_seed(0xabcdef, d));
      auto g = model == GraphModel::RG ? failoc::rg_draw(12, param, rng)
                                       : failoc::rpl_draw(12, param, rng);
      total += g.num_edges();
    }
    double mean = static_cast<double>(total) / draws;
    CAPTURE(failoc::model_name(model), param, mean);
    REQUIRE(std::abs(mean - 20.0) <= 1.0);
  }
}

TEST_CASE("generate with target_links calibrates first") {
  GenSpec spec;
  spec.model = GraphModel::ER;
  spec.num_nodes = 20;
  spec.target_links = 51;
  spec.seed = 2;
  auto res = failoc::generate(spec);
  REQUIRE(res.calibrated);
  REQUIRE(res.param == Catch::Approx(51.0 / 190.0));
}

TEST_CASE("place_monitors") {
  auto res = failoc::generate(er_spec(15, 0.4, 21));
  auto a = failoc::place_monitors(res.topo, 5, 77);
  auto b = failoc::place_monitors(res.topo, 5, 77);
  REQUIRE(a.monitors() == b.monitors());
  REQUIRE(a.num_monitors() == 5);
  REQUIRE(a.num_non_monitors() == 10);

  auto c = failoc::place_monitors(res.topo, 5, 78);
  REQUIRE(a.monitors() != c.monitors());  // fixed seeds chosen to differ

  REQUIRE_THROWS_AS(failoc::place_monitors(res.topo, 16, 0), failoc::ConfigError);
  REQUIRE_THROWS_AS(failoc::place_monitors(res.topo, -1, 0), failoc::ConfigError);

  // every node lands in the monitor set at roughly uniform frequency
  int node0 = 0;
  const int rounds = 2000;
  for (int s = 0; s < rounds; ++s)
    if (failoc::place_monitors(res.topo, 5, s).is_monitor(0)) ++node0;
  double rate = static_cast<double>(node0) / rounds;
  REQUIRE(rate > 0.28);
  REQUIRE(rate < 0.39);
}

TEST_CASE("file model loads from disk") {
  namespace fs = std::filesystem;
  auto dir = fs::temp_directory_path() / "failoc_gen_test";
  fs::create_directories(dir);
  {
    std::ofstream e(dir / "edges.txt");
    e << "m1 a\na b\nb m2\n";
    std::ofstream m(dir / "monitors.txt");
    m << "m1\nm2\n";
  }
  GenSpec spec;
  spec.model = GraphModel::File;
  spec.edge_file = (dir / "edges.txt").string();
  spec.monitor_file = (dir / "monitors.txt").string();
  auto res = failoc::generate(spec);
  REQUIRE(res.topo.num_nodes() == 4);
  REQUIRE(res.topo.num_monitors() == 2);
  fs::remove_all(dir);
}

TEST_CASE("model names round trip") {
  for (GraphModel m : {GraphModel::ER, GraphModel::RG, GraphModel::BA, GraphModel::RPL,
                       GraphModel::File}) {
    REQUIRE(failoc::parse_model(failoc::model_name(m)) == m);
  }
  REQUIRE_THROWS_AS(failoc::parse_model("nope"), failoc::ConfigError);
}
