#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "failoc/errors.hpp"
#include "failoc/graph.hpp"
#include "failoc/rng.hpp"

namespace failoc {

enum class GraphModel { ER, RG, BA, RPL, File };

inline const char* model_name(GraphModel m) {
  switch (m) {
    case GraphModel::ER: return "er";
    case GraphModel::RG: return "rg";
    case GraphModel::BA: return "ba";
    case GraphModel::RPL: return "rpl";
    case GraphModel::File: return "file";
  }
  return "?";
}

inline GraphModel parse_model(const std::string& s) {
  if (s == "er") return GraphModel::ER;
  if (s == "rg") return GraphModel::RG;
  if (s == "ba") return GraphModel::BA;
  if (s == "rpl") return GraphModel::RPL;
  if (s == "file") return GraphModel::File;
  throw ConfigError("unknown graph model: " + s);
}

struct GenSpec {
  GraphModel model = GraphModel::ER;
  int num_nodes = 0;
  // ER: link probability, RG: connection radius, BA: links per new node,
  // RPL: weight exponent. Ignored when target_links drives calibration.
  double param = 0.0;
  std::optional<int> target_links;
  std::uint64_t seed = 0;
  int max_retries = 10000;
  std::string edge_file, monitor_file;  // File model only
  std::string label;
};

struct GenResult {
  Topology topo;  // roles unset; see place_monitors
  double param = 0.0;
  int attempts = 0;      // connectivity rejections + 1
  bool clamped = false;  // an RPL pair probability was cut at 1
  bool calibrated = false;
  std::vector<std::pair<double, double>> positions;  // RG node coordinates
};

// ---- single draws (no connectivity rejection) ----

// Every pair linked independently with probability p.
inline Graph er_draw(int n, double p, Rng& rng) {
  Graph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (rng.bernoulli(p)) g.add_edge(u, v);
  return g;
}

// Nodes uniform in the unit square, linked within distance radius.
inline Graph rg_draw(int n, double radius, Rng& rng,
                     std::vector<std::pair<double, double>>* positions_out = nullptr) {
  std::vector<std::pair<double, double>> pos(static_cast<std::size_t>(n));
  for (auto& [x, y] : pos) {
    x = rng.next_unit();
    y = rng.next_unit();
  }
  Graph g(n);
  double r2 = radius * radius;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      double dx = pos[static_cast<std::size_t>(u)].first - pos[static_cast<std::size_t>(v)].first;
      double dy = pos[static_cast<std::size_t>(u)].second - pos[static_cast<std::size_t>(v)].second;
      if (dx * dx + dy * dy <= r2) g.add_edge(u, v);
    }
  if (positions_out) *positions_out = std::move(pos);
  return g;
}

// Node i (1-indexed) gets weight i^alpha; pair (i,j) linked with probability
// min(1, w_i * w_j / sum of weights). clamped_out reports whether any pair
// probability was cut down to 1.
inline Graph rpl_draw(int n, double alpha, Rng& rng, bool* clamped_out = nullptr) {
  std::vector<double> w(static_cast<std::size_t>(n));
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    w[static_cast<std::size_t>(i)] = std::pow(static_cast<double>(i + 1), alpha);
    total += w[static_cast<std::size_t>(i)];
  }
  Graph g(n);
  bool clamped = false;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      double p = w[static_cast<std::size_t>(u)] * w[static_cast<std::size_t>(v)] / total;
      if (p > 1.0) {
        p = 1.0;
        clamped = true;
      }
      if (rng.bernoulli(p)) g.add_edge(u, v);
    }
  if (clamped_out) *clamped_out = clamped;
  return g;
}

// Preferential attachment from a 4-node star seed: each later node links to
// `attach` distinct existing nodes sampled proportional to current degree
// (to all of them when fewer exist). Always connected, no rejection needed.
inline Graph ba_build(int n, int attach, Rng& rng) {
  if (n < 4) throw ConfigError("ba_build: needs at least 4 nodes");
  if (attach < 1) throw ConfigError("ba_build: attach count must be positive");
  Graph g(n);
  g.add_edge(0, 1);
  g.add_edge(0, 2);
  g.add_edge(0, 3);
  std::vector<int> chosen;
  for (int v = 4; v < n; ++v) {
    int want = std::min(attach, v);
    chosen.clear();
    std::vector<char> taken(static_cast<std::size_t>(v), 0);
    for (int pick = 0; pick < want; ++pick) {
      std::uint64_t total = 0;
      for (int u = 0; u < v; ++u)
        if (!taken[static_cast<std::size_t>(u)])
          total += static_cast<std::uint64_t>(g.degree(u));
      int hit = -1;
      if (total == 0) {
        // all remaining candidates isolated; fall back to uniform
        std::uint64_t left = 0;
        for (int u = 0; u < v; ++u)
          if (!taken[static_cast<std::size_t>(u)]) ++left;
        std::uint64_t r = rng.next_below(left);
        for (int u = 0; u < v && hit < 0; ++u)
          if (!taken[static_cast<std::size_t>(u)] && r-- == 0) hit = u;
      } else {
        std::uint64_t r = rng.next_below(total);
        for (int u = 0; u < v && hit < 0; ++u) {
          if (taken[static_cast<std::size_t>(u)]) continue;
          std::uint64_t d = static_cast<std::uint64_t>(g.degree(u));
          if (r < d) hit = u;
          else r -= d;
        }
      }
      taken[static_cast<std::size_t>(hit)] = 1;
      chosen.push_back(hit);
    }
    for (int u : chosen) g.add_edge(u, v);
  }
  return g;
}

namespace detail {

inline Topology role_free(Graph g) {
  Topology topo;
  int n = g.n;
  topo.g = std::move(g);
  topo.monitor.assign(static_cast<std::size_t>(n), false);
  topo.labels.resize(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) topo.labels[static_cast<std::size_t>(v)] = "v" + std::to_string(v + 1);
  return topo;
}

// Mean pre-rejection link count over `draws` samples. Substream seeds are a
// fixed function of the draw index, so different params see the same
// randomness (common random numbers; keeps the curve monotone for RG).
inline double mean_links(GraphModel model, int n, double param, std::uint64_t seed, int draws) {
  long long total = 0;
  for (int d = 0; d < draws; ++d) {
    Rng rng(mix_seed(seed, static_cast<std::uint64_t>(d)));
    Graph g;
    switch (model) {
      case GraphModel::ER: g = er_draw(n, param, rng); break;
      case GraphModel::RG: g = rg_draw(n, param, rng); break;
      case GraphModel::RPL: g = rpl_draw(n, param, rng); break;
      default: throw ConfigError("mean_links: unsupported model");
    }
    total += g.num_edges();
  }
  return static_cast<double>(total) / draws;
}

}  // namespace detail

// Picks the model parameter so the mean pre-rejection link count hits
// `target_links`. ER and BA have closed forms; RG and RPL are solved by grid
// bracketing plus bisection on a deterministic empirical estimate. Results
// are memoized: the search is deterministic in its arguments but costs many
// sample draws, and sweeps recalibrate the same configuration per instance.
inline double calibrate_param(GraphModel model, int n, int target_links, std::uint64_t seed);

namespace detail {
inline double calibrate_param_uncached(GraphModel model, int n, int target_links,
                                       std::uint64_t seed) {
  if (n < 2) throw ConfigError("calibrate_param: need at least 2 nodes");
  double pairs = 0.5 * n * (n - 1);
  if (target_links < 0 || target_links > pairs)
    throw ConfigError("calibrate_param: target link count out of range");
  switch (model) {
    case GraphModel::ER:
      return static_cast<double>(target_links) / pairs;
    case GraphModel::BA: {
      if (n < 5) throw ConfigError("calibrate_param: BA calibration needs n >= 5");
      double raw = (static_cast<double>(target_links) - 3.0) / (n - 4);
      long attach = std::lround(raw);
      if (attach < 1) attach = 1;
      if (attach > n - 1) attach = n - 1;
      return static_cast<double>(attach);
    }
    case GraphModel::RG:
    case GraphModel::RPL: break;
    case GraphModel::File:
      throw ConfigError("calibrate_param: file model has no parameter");
  }

  std::uint64_t est_seed = mix_seed(seed, kStreamCalibration);
  const int draws = 600;
  double lo, hi;
  if (model == GraphModel::RG) {
    lo = 0.0;
    hi = 1.4143;  // beyond the unit-square diameter: complete graph
  } else {
    lo = -4.0;
    hi = 8.0;
  }
  auto eval = [&](double param) {
    return detail::mean_links(model, n, param, est_seed, draws);
  };
  double flo = eval(lo), fhi = eval(hi);
  double target = static_cast<double>(target_links);
  if (target < flo - 1.0 || target > fhi + 1.0)
    throw ConfigError("calibrate_param: target outside the reachable range");
  // coarse scan to bracket the crossing; the estimate need not be perfectly
  // monotone for RPL, the scan picks the first bracketing cell
  const int cells = 16;
  double a = lo, b = hi, fa = flo, fb = fhi;
  double prev_x = lo, prev_f = flo;
  for (int i = 1; i <= cells; ++i) {
    double x = lo + (hi - lo) * i / cells;
    double fx = (i == cells) ? fhi : eval(x);
    if ((prev_f <= target && target <= fx) || (fx <= target && target <= prev_f)) {
      a = prev_x;
      b = x;
      fa = prev_f;
      fb = fx;
      break;
    }
    prev_x = x;
    prev_f = fx;
  }
  for (int it = 0; it < 48; ++it) {
    double mid = 0.5 * (a + b);
    double fmid = eval(mid);
    if (std::abs(fmid - target) <= 0.25) return mid;
    bool rising = fb >= fa;
    if ((fmid < target) == rising) {
      a = mid;
      fa = fmid;
    } else {
      b = mid;
      fb = fmid;
    }
  }
  double final_param = 0.5 * (a + b);
  if (std::abs(eval(final_param) - target) > 1.0)
    throw ConfigError("calibrate_param: bisection did not reach the target");
  return final_param;
}
}  // namespace detail

inline double calibrate_param(GraphModel model, int n, int target_links, std::uint64_t seed) {
  static std::map<std::tuple<int, int, int, std::uint64_t>, double> cache;
  static std::mutex mutex;
  std::tuple<int, int, int, std::uint64_t> key{static_cast<int>(model), n, target_links, seed};
  {
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  double value = detail::calibrate_param_uncached(model, n, target_links, seed);
  std::lock_guard<std::mutex> lock(mutex);
  cache.emplace(key, value);
  return value;
}

// Generates one connected topology. Rejection: redraw until connected, up to
// max_retries draws, then BudgetError. Roles are left unset.
inline GenResult generate(const GenSpec& spec) {
  GenResult res;
  if (spec.model == GraphModel::File) {
    auto loaded = load_topology_files(spec.edge_file, spec.monitor_file);
    res.topo = std::move(loaded.topo);
    res.attempts = 1;
    return res;
  }
  int n = spec.num_nodes;
  if (n < 2) throw ConfigError("generate: need at least 2 nodes");
  double param = spec.param;
  if (spec.target_links) {
    param = calibrate_param(spec.model, n, *spec.target_links, spec.seed);
    res.calibrated = true;
  }
  switch (spec.model) {
    case GraphModel::ER:
      if (param < 0.0 || param > 1.0) throw ConfigError("generate: ER probability outside [0,1]");
      break;
    case GraphModel::RG:
      if (param < 0.0) throw ConfigError("generate: RG radius must be non-negative");
      break;
    case GraphModel::BA:
      if (std::lround(param) < 1) throw ConfigError("generate: BA attach count must be >= 1");
      break;
    default: break;
  }
  res.param = param;

  Rng rng(mix_seed(spec.seed, kStreamEdges));
  if (spec.model == GraphModel::BA) {
    res.topo = detail::role_free(ba_build(n, static_cast<int>(std::lround(param)), rng));
    res.attempts = 1;
    return res;
  }
  if (spec.max_retries < 1) throw ConfigError("generate: max_retries must be positive");
  for (int attempt = 1; attempt <= spec.max_retries; ++attempt) {
    Graph g;
    std::vector<std::pair<double, double>> pos;
    bool clamped = false;
    switch (spec.model) {
      case GraphModel::ER: g = er_draw(n, param, rng); break;
      case GraphModel::RG: g = rg_draw(n, param, rng, &pos); break;
      case GraphModel::RPL: g = rpl_draw(n, param, rng, &clamped); break;
      default: break;
    }
    if (is_connected(g)) {
      res.topo = detail::role_free(std::move(g));
      res.attempts = attempt;
      res.clamped = clamped;
      res.positions = std::move(pos);
      return res;
    }
  }
  throw BudgetError("generate: no connected draw within " + std::to_string(spec.max_retries) +
                    " attempts");
}

// Uniformly samples `count` nodes as monitors; returns a copy with roles set.
inline Topology place_monitors(const Topology& topo, int count, std::uint64_t seed) {
  int n = topo.num_nodes();
  if (count < 0 || count > n) throw ConfigError("place_monitors: monitor count out of range");
  std::vector<int> ids(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) ids[static_cast<std::size_t>(v)] = v;
  Rng rng(mix_seed(seed, kStreamMonitors));
  rng.partial_shuffle(ids, static_cast<std::size_t>(count));
  Topology out = topo;
  out.monitor.assign(static_cast<std::size_t>(n), false);
  for (int i = 0; i < count; ++i) out.monitor[static_cast<std::size_t>(ids[static_cast<std::size_t>(i)])] = true;
  return out;
}

}  // namespace failoc
