#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "failoc/errors.hpp"
#include "failoc/graph.hpp"
#include "failoc/ident.hpp"

namespace failoc {

// A fixed collection of monitor-to-monitor simple paths over one topology.
// `through[v]` lists the indices of the paths traversing node v.
struct PathSet {
  std::vector<std::vector<int>> paths;
  std::vector<std::vector<int>> through;
  int num_nodes = 0;
};

// Validates and indexes a path collection: every path must be a simple walk
// between two distinct monitor endpoints along existing links. Interior
// monitors are allowed; they are just nodes that cannot fail.
inline PathSet make_path_set(const Topology& topo, std::vector<std::vector<int>> paths) {
  PathSet ps;
  ps.num_nodes = topo.num_nodes();
  ps.through.assign(static_cast<std::size_t>(topo.num_nodes()), {});
  for (std::size_t i = 0; i < paths.size(); ++i) {
    const auto& p = paths[i];
    std::string tag = "path " + std::to_string(i + 1);
    if (p.size() < 2) throw ConfigError(tag + ": needs at least two nodes");
    std::vector<char> seen(static_cast<std::size_t>(topo.num_nodes()), 0);
    for (std::size_t j = 0; j < p.size(); ++j) {
      int v = p[j];
      if (!topo.g.has_node(v)) throw ConfigError(tag + ": node id out of range");
      if (seen[static_cast<std::size_t>(v)]) throw ConfigError(tag + ": repeats node " + topo.label(v));
      seen[static_cast<std::size_t>(v)] = 1;
      if (j > 0 && !topo.g.has_edge(p[j - 1], p[j]))
        throw ConfigError(tag + ": no link " + topo.label(p[j - 1]) + " " + topo.label(p[j]));
    }
    if (!topo.is_monitor(p.front()) || !topo.is_monitor(p.back()))
      throw ConfigError(tag + ": endpoints must be monitors");
    for (int v : p) ps.through[static_cast<std::size_t>(v)].push_back(static_cast<int>(i));
  }
  ps.paths = std::move(paths);
  return ps;
}

// Text format: one path per line as whitespace-separated node labels,
// '#' starts a comment.
inline PathSet load_paths(std::istream& is, const Topology& topo,
                          const std::string& name = "paths") {
  std::vector<std::vector<int>> paths;
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    std::string s = detail::clean_line(line);
    if (s.empty()) continue;
    std::istringstream iss(s);
    std::vector<int> p;
    std::string label;
    while (iss >> label) {
      int v = topo.id_of(label);
      if (v < 0)
        throw ConfigError(name + ": line " + std::to_string(line_no) + ": unknown node " + label);
      p.push_back(v);
    }
    paths.push_back(std::move(p));
  }
  try {
    return make_path_set(topo, std::move(paths));
  } catch (const ConfigError& e) {
    throw ConfigError(name + ": " + e.what());
  }
}

inline PathSet load_paths_file(const std::string& path, const Topology& topo) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open path file " + path);
  return load_paths(is, topo, path);
}

inline void write_paths(std::ostream& os, const Topology& topo, const PathSet& ps,
                        const std::vector<std::string>& header_comments = {}) {
  for (const auto& c : header_comments) os << "# " << c << "\n";
  for (const auto& p : ps.paths) {
    for (std::size_t j = 0; j < p.size(); ++j) os << (j ? " " : "") << topo.label(p[j]);
    os << "\n";
  }
}

// Default path set: one shortest path per unordered monitor pair. Ties break
// deterministically by walking from the smaller monitor and always stepping
// to the smallest-id neighbor that still shrinks the distance. Unreachable
// pairs are skipped.
inline PathSet shortest_monitor_paths(const Topology& topo) {
  auto monitors = topo.monitors();
  std::vector<std::vector<int>> paths;
  std::vector<int> dist(static_cast<std::size_t>(topo.num_nodes()));
  for (std::size_t bi = 0; bi < monitors.size(); ++bi) {
    int t = monitors[bi];
    std::fill(dist.begin(), dist.end(), -1);
    std::vector<int> queue{t};
    dist[static_cast<std::size_t>(t)] = 0;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      int v = queue[qi];
      for (int w : topo.g.neighbors(v)) {
        if (dist[static_cast<std::size_t>(w)] >= 0) continue;
        dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(v)] + 1;
        queue.push_back(w);
      }
    }
    for (std::size_t ai = 0; ai < bi; ++ai) {
      int s = monitors[ai];
      if (dist[static_cast<std::size_t>(s)] < 0) continue;
      std::vector<int> p{s};
      int cur = s;
      while (cur != t) {
        for (int w : topo.g.neighbors(cur)) {  // neighbors sorted: smallest id wins
          if (dist[static_cast<std::size_t>(w)] == dist[static_cast<std::size_t>(cur)] - 1) {
            p.push_back(w);
            cur = w;
            break;
          }
        }
      }
      paths.push_back(std::move(p));
    }
  }
  return make_path_set(topo, std::move(paths));
}

inline double harmonic(int d) {
  double h = 0.0;
  for (int i = 1; i <= d; ++i) h += 1.0 / i;
  return h;
}

namespace detail {

// Fixed-width bitset over path indices; path sets can exceed 64 paths.
struct Bits {
  std::vector<std::uint64_t> w;

  explicit Bits(int bits = 0) : w(static_cast<std::size_t>((bits + 63) / 64), 0) {}
  void set(int i) { w[static_cast<std::size_t>(i) >> 6] |= 1ULL << (i & 63); }
  bool test(int i) const { return (w[static_cast<std::size_t>(i) >> 6] >> (i & 63)) & 1; }
  int count() const {
    int c = 0;
    for (auto x : w) c += std::popcount(x);
    return c;
  }
  bool covers(const Bits& o) const {  // o subset of this
    for (std::size_t i = 0; i < w.size(); ++i)
      if (o.w[i] & ~w[i]) return false;
    return true;
  }
  int count_and_not(const Bits& covered) const {  // |this \ covered|
    int c = 0;
    for (std::size_t i = 0; i < w.size(); ++i) c += std::popcount(w[i] & ~covered.w[i]);
    return c;
  }
  void or_with(const Bits& o) {
    for (std::size_t i = 0; i < w.size(); ++i) w[i] |= o.w[i];
  }
};

}  // namespace detail

// Cover structure of one non-monitor under a fixed path set. msc is the
// fewest other non-monitors hitting every path through the node; gsc the
// greedy cover size; d_max the most of those paths any single candidate
// hits. Sentinels: num_paths == 0 puts both covers at 0, an uncoverable
// path (no other non-monitor on it) puts both at the non-monitor count.
struct CoverMetrics {
  int node = -1;
  int num_paths = 0;
  int msc = 0;
  bool msc_exact = true;  // false when the search budget ran out (msc falls back to gsc)
  int gsc = 0;
  int d_max = 0;
  bool uncoverable = false;
};

inline constexpr long kDefaultCoverBudget = 2'000'000;

inline CoverMetrics cover_metrics(const Topology& topo, const PathSet& ps, int v,
                                  long budget = kDefaultCoverBudget) {
  if (!topo.g.has_node(v) || topo.is_monitor(v))
    throw ConfigError("cover_metrics: node must be a non-monitor");
  if (ps.num_nodes != topo.num_nodes())
    throw ConfigError("cover_metrics: path set belongs to another topology");
  CoverMetrics cm;
  cm.node = v;
  const auto& pv = ps.through[static_cast<std::size_t>(v)];
  cm.num_paths = static_cast<int>(pv.size());
  int nn = topo.num_non_monitors();
  if (pv.empty()) return cm;

  // relabel the paths through v as 0..|P_v|-1
  std::vector<int> local_index(ps.paths.size(), -1);
  for (std::size_t i = 0; i < pv.size(); ++i)
    local_index[static_cast<std::size_t>(pv[i])] = static_cast<int>(i);

  // candidate coverers and their coverage masks
  std::vector<detail::Bits> masks;
  for (int w : topo.non_monitors()) {
    if (w == v) continue;
    detail::Bits b(cm.num_paths);
    bool any = false;
    for (int p : ps.through[static_cast<std::size_t>(w)]) {
      int li = local_index[static_cast<std::size_t>(p)];
      if (li >= 0) {
        b.set(li);
        any = true;
      }
    }
    if (any) masks.push_back(std::move(b));
  }

  detail::Bits all(cm.num_paths);
  for (int i = 0; i < cm.num_paths; ++i) all.set(i);

  detail::Bits reachable(cm.num_paths);
  for (const auto& m : masks) reachable.or_with(m);
  if (!reachable.covers(all)) {
    // some path sees no other non-monitor: nothing can mask v on it
    cm.uncoverable = true;
    cm.msc = nn;
    cm.gsc = nn;
    cm.d_max = 0;
    return cm;
  }

  for (const auto& m : masks) cm.d_max = std::max(cm.d_max, m.count());

  // greedy cover: most newly covered paths wins, ties to the smallest node
  // id (masks keep ascending id order)
  {
    detail::Bits covered(cm.num_paths);
    int size = 0;
    while (!covered.covers(all)) {
      int best = -1, best_gain = 0;
      for (std::size_t i = 0; i < masks.size(); ++i) {
        int gain = masks[i].count_and_not(covered);
        if (gain > best_gain) {
          best_gain = gain;
          best = static_cast<int>(i);
        }
      }
      covered.or_with(masks[static_cast<std::size_t>(best)]);
      ++size;
    }
    cm.gsc = size;
  }

  // exact cover by iterative deepening: grow the allowed size until a cover
  // exists; branch on the uncovered path with the fewest candidates
  long spent = 0;
  std::vector<std::vector<int>> coverers(static_cast<std::size_t>(cm.num_paths));
  for (std::size_t i = 0; i < masks.size(); ++i)
    for (int p = 0; p < cm.num_paths; ++p)
      if (masks[i].test(p)) coverers[static_cast<std::size_t>(p)].push_back(static_cast<int>(i));

  auto search = [&](auto&& self, const detail::Bits& covered, int remaining) -> bool {
    if (covered.covers(all)) return true;
    if (remaining == 0) return false;
    if (++spent > budget) throw BudgetError("cover search budget exceeded");
    int uncovered = all.count_and_not(covered);
    if (static_cast<long>(remaining) * cm.d_max < uncovered) return false;
    int pick = -1, pick_options = 0;
    for (int p = 0; p < cm.num_paths; ++p) {
      if (covered.test(p)) continue;
      int options = static_cast<int>(coverers[static_cast<std::size_t>(p)].size());
      if (pick < 0 || options < pick_options) {
        pick = p;
        pick_options = options;
      }
    }
    for (int mi : coverers[static_cast<std::size_t>(pick)]) {
      detail::Bits next = covered;
      next.or_with(masks[static_cast<std::size_t>(mi)]);
      if (self(self, next, remaining - 1)) return true;
    }
    return false;
  };

  try {
    detail::Bits none(cm.num_paths);
    for (int target = 1; target <= cm.gsc; ++target) {
      if (search(search, none, target)) {
        cm.msc = target;
        return cm;
      }
    }
    cm.msc = cm.gsc;  // greedy found a cover, so the loop cannot fall through
    return cm;
  } catch (const BudgetError&) {
    cm.msc = cm.gsc;
    cm.msc_exact = false;
    return cm;
  }
}

inline std::vector<CoverMetrics> cover_metrics_all(const Topology& topo, const PathSet& ps,
                                                   long budget = kDefaultCoverBudget) {
  std::vector<CoverMetrics> out;
  for (int v : topo.non_monitors()) out.push_back(cover_metrics(topo, ps, v, budget));
  return out;
}

enum class UpMode { Original, Relaxed };

// Identifiability interval of one node under a fixed path set.
// Original mode sandwiches with the exact minimum cover, Relaxed with the
// greedy cover scaled by the harmonic guarantee. Nodes whose cover hits a
// sentinel get an exact value: 0 when unprobed, the non-monitor count when
// some path exposes the node on its own.
inline IdentInterval up_node_bounds(const CoverMetrics& cm, int num_non_monitors,
                                    UpMode mode = UpMode::Original) {
  IdentInterval out;
  out.mechanism = MechanismTag::UP;
  if (cm.num_paths == 0) {
    out.lower = out.upper = 0;
    out.applicability = Applicability::Exact;
    return out;
  }
  if (cm.uncoverable) {
    out.lower = out.upper = num_non_monitors;
    out.applicability = Applicability::Exact;
    return out;
  }
  out.applicability = Applicability::InRange;
  if (mode == UpMode::Original && cm.msc_exact) {
    out.lower = cm.msc - 1;
    out.upper = cm.msc;
    return out;
  }
  // relaxed bounds; also the sound fallback when the exact cover search
  // ran out of budget
  double scaled = static_cast<double>(cm.gsc) / harmonic(cm.d_max);
  out.lower = std::max(static_cast<int>(std::ceil(scaled - 1e-9)) - 1, 0);
  out.upper = cm.gsc;
  return out;
}

// Per-node sufficient/necessary test for k-identifiability of the whole
// candidate set S: sufficient when every member's minimum cover exceeds k,
// refuted when some member's cover is below k.
inline TriState up_k_identifiable(const Topology& topo, const PathSet& ps,
                                  const std::vector<int>& nodes, int k,
                                  long budget = kDefaultCoverBudget) {
  int nn = topo.num_non_monitors();
  if (k < 0 || k > nn) throw ConfigError("up_k_identifiable: k outside 0..#non-monitors");
  if (k == 0) return TriState::Sufficient;  // only the empty failure set fits
  bool all_sufficient = true;
  for (int v : nodes) {
    auto cm = cover_metrics(topo, ps, v, budget);
    if (cm.uncoverable) continue;  // exact top value, passes every k
    if (cm.num_paths == 0) return TriState::No;
    if (cm.msc < k) return TriState::No;  // even a budget-limited msc only shrinks
    if (!(cm.msc_exact && cm.msc >= k + 1)) all_sufficient = false;
  }
  return all_sufficient ? TriState::Sufficient : TriState::Inconclusive;
}

// Inner and outer approximations of the k-identifiable non-monitor set. The
// metrics overload lets sweeps reuse one cover computation across every k.
inline IdentSetBounds s_up_bounds(const Topology& topo, const std::vector<CoverMetrics>& metrics,
                                  int k, UpMode mode = UpMode::Original) {
  int nn = topo.num_non_monitors();
  if (k < 1 || k > nn) throw ConfigError("s_up_bounds: k outside 1..#non-monitors");
  IdentSetBounds out;
  out.k = k;
  bool tight = true;
  for (const auto& cm : metrics) {
    auto iv = up_node_bounds(cm, nn, mode);
    if (iv.lower >= k) out.inner.push_back(cm.node);
    if (iv.upper >= k) out.outer.push_back(cm.node);
    if (iv.lower < k && iv.upper >= k) tight = false;
  }
  if (tight) out.exact = out.inner;
  return out;
}

inline IdentSetBounds s_up_bounds(const Topology& topo, const PathSet& ps, int k,
                                  UpMode mode = UpMode::Original,
                                  long budget = kDefaultCoverBudget) {
  return s_up_bounds(topo, cover_metrics_all(topo, ps, budget), k, mode);
}

}  // namespace failoc
