#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <vector>

#include "failoc/errors.hpp"
#include "failoc/graph.hpp"
#include "failoc/ident.hpp"
#include "failoc/up.hpp"

namespace failoc {

// A probing mechanism instance. UP carries the fixed path set it replays;
// CSP may or may not route probes through intermediate monitors.
struct Mechanism {
  MechanismTag tag = MechanismTag::CAP;
  bool csp_monitor_transit = true;
  const PathSet* paths = nullptr;

  static Mechanism cap() { return {MechanismTag::CAP, true, nullptr}; }
  static Mechanism csp(bool monitor_transit = true) {
    return {MechanismTag::CSP, monitor_transit, nullptr};
  }
  static Mechanism up(const PathSet& ps) { return {MechanismTag::UP, true, &ps}; }
};

inline constexpr int kOracleMaxNodes = 14;

// All simple paths between distinct monitors, one orientation each (walked
// from the smaller endpoint). Interior monitors appear only when
// monitor_transit. Exponential: refuses instances above max_nodes.
inline PathSet enumerate_simple_paths(const Topology& topo, bool monitor_transit = true,
                                      int max_nodes = kOracleMaxNodes) {
  if (topo.num_nodes() > max_nodes)
    throw BudgetError("enumerate_simple_paths: instance above the node cap");
  if (topo.num_monitors() < 2)
    throw ConfigError("enumerate_simple_paths: needs at least two monitors");
  auto monitors = topo.monitors();
  std::vector<std::vector<int>> found;
  std::vector<int> path;
  std::vector<char> used(static_cast<std::size_t>(topo.num_nodes()), 0);
  auto dfs = [&](auto&& self, int cur, int target) -> void {
    if (cur == target) {
      found.push_back(path);
      return;
    }
    for (int w : topo.g.neighbors(cur)) {
      if (used[static_cast<std::size_t>(w)]) continue;
      if (topo.is_monitor(w) && w != target && !monitor_transit) continue;
      used[static_cast<std::size_t>(w)] = 1;
      path.push_back(w);
      self(self, w, target);
      path.pop_back();
      used[static_cast<std::size_t>(w)] = 0;
    }
  };
  for (std::size_t ai = 0; ai < monitors.size(); ++ai) {
    for (std::size_t bi = ai + 1; bi < monitors.size(); ++bi) {
      int s = monitors[ai], t = monitors[bi];
      path.assign(1, s);
      used.assign(used.size(), 0);
      used[static_cast<std::size_t>(s)] = 1;
      dfs(dfs, s, t);
    }
  }
  return make_path_set(topo, std::move(found));
}

namespace detail {

inline std::uint32_t failure_mask(const Topology& topo, const std::vector<int>& nodes,
                                  const std::vector<int>& nm_index, const char* who) {
  std::uint32_t mask = 0;
  for (int v : nodes) {
    if (!topo.g.has_node(v) || topo.is_monitor(v))
      throw ConfigError(std::string(who) + ": failure sets contain non-monitors only");
    mask |= 1u << nm_index[static_cast<std::size_t>(v)];
  }
  return mask;
}

// Nodes reachable from any monitor once `failed` (a non-monitor mask) is
// removed, as a bitmask over all node ids.
inline std::uint32_t monitor_reach(const Topology& topo, std::uint32_t failed,
                                   const std::vector<int>& nm_index) {
  std::uint32_t seen = 0;
  std::vector<int> stack;
  for (int m = 0; m < topo.num_nodes(); ++m) {
    if (!topo.is_monitor(m)) continue;
    seen |= 1u << m;
    stack.push_back(m);
  }
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : topo.g.neighbors(v)) {
      if (seen & (1u << w)) continue;
      int wi = nm_index[static_cast<std::size_t>(w)];
      if (wi >= 0 && (failed & (1u << wi))) continue;
      seen |= 1u << w;
      stack.push_back(w);
    }
  }
  return seen;
}

// Distinct non-monitor membership masks of the available paths; paths with
// equal masks fail under exactly the same failure sets.
inline std::vector<std::uint32_t> distinct_path_masks(const Topology& topo, const PathSet& ps,
                                                      const std::vector<int>& nm_index) {
  std::vector<std::uint32_t> masks;
  for (const auto& p : ps.paths) {
    std::uint32_t m = 0;
    for (int v : p) {
      int vi = nm_index[static_cast<std::size_t>(v)];
      if (vi >= 0) m |= 1u << vi;
    }
    masks.push_back(m);
  }
  std::sort(masks.begin(), masks.end());
  masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
  return masks;
}

}  // namespace detail

// Ground-truth engine. Enumerates every failure set up to the full
// non-monitor count, buckets them by outcome signature (which paths or walks
// fail), and answers identifiability queries from the buckets. Exponential
// in the non-monitor count; guarded by max_nodes.
class Oracle {
 public:
  Oracle(const Topology& topo, const Mechanism& mech, int max_nodes = kOracleMaxNodes)
      : topo_(topo), mech_(mech) {
    if (topo.num_nodes() > max_nodes) throw BudgetError("oracle: instance above the node cap");
    nm_ = topo.non_monitors();
    nn_ = static_cast<int>(nm_.size());
    nm_index_.assign(static_cast<std::size_t>(topo.num_nodes()), -1);
    for (int i = 0; i < nn_; ++i) nm_index_[static_cast<std::size_t>(nm_[i])] = i;

    if (mech.tag == MechanismTag::UP) {
      if (!mech.paths) throw ConfigError("oracle: UP mechanism without a path set");
      masks_ = detail::distinct_path_masks(topo, *mech.paths, nm_index_);
    } else if (mech.tag == MechanismTag::CSP) {
      owned_paths_ = enumerate_simple_paths(topo, mech.csp_monitor_transit, max_nodes);
      masks_ = detail::distinct_path_masks(topo, owned_paths_, nm_index_);
    }

    std::uint32_t count = 1u << nn_;
    group_.assign(count, 0);
    if (mech.tag == MechanismTag::CAP) {
      std::map<std::uint32_t, int> ids;
      for (std::uint32_t f = 0; f < count; ++f) {
        std::uint32_t sig = detail::monitor_reach(topo_, f, nm_index_);
        auto [it, fresh] = ids.emplace(sig, static_cast<int>(ids.size()));
        group_[f] = it->second;
      }
    } else {
      // signature: which distinct path masks intersect the failure set
      std::map<std::vector<std::uint64_t>, int> ids;
      std::vector<std::uint64_t> sig((masks_.size() + 63) / 64);
      for (std::uint32_t f = 0; f < count; ++f) {
        std::fill(sig.begin(), sig.end(), 0);
        for (std::size_t i = 0; i < masks_.size(); ++i)
          if (masks_[i] & f) sig[i >> 6] |= 1ULL << (i & 63);
        auto [it, fresh] = ids.emplace(sig, static_cast<int>(ids.size()));
        group_[f] = it->second;
      }
    }
    compute_conflicts();
  }

  int num_non_monitors() const { return nn_; }

  // Exact maximum identifiability: the largest k such that no two failure
  // sets of size <= k that differ at v share a signature.
  int max_identifiability(int v) const {
    int vi = node_index(v, "max_identifiability");
    return conflict_[static_cast<std::size_t>(vi)] - 1;
  }

  bool k_identifiable(const std::vector<int>& nodes, int k) const {
    if (k < 0 || k > nn_) throw ConfigError("oracle: k outside 0..#non-monitors");
    for (int v : nodes)
      if (max_identifiability(v) < k) return false;
    return true;
  }

  // Exact maximal k-identifiable set (singleton decomposition: a set is
  // k-identifiable exactly when each member is).
  std::vector<int> identifiable_set(int k) const {
    if (k < 0 || k > nn_) throw ConfigError("oracle: k outside 0..#non-monitors");
    std::vector<int> out;
    for (int i = 0; i < nn_; ++i)
      if (conflict_[static_cast<std::size_t>(i)] - 1 >= k) out.push_back(nm_[static_cast<std::size_t>(i)]);
    return out;
  }

  // Nodes with a witness path for every failure set of size <= k: the
  // witness-based inner approximation of the identifiable set.
  std::vector<int> witness_inner_set(int k) const {
    if (k < 0 || k > nn_) throw ConfigError("oracle: k outside 0..#non-monitors");
    std::vector<int> out;
    for (int i = 0; i < nn_; ++i) {
      int v = nm_[static_cast<std::size_t>(i)];
      bool ok = true;
      for (std::uint32_t f = 0; ok && f < (1u << nn_); ++f) {
        if (std::popcount(f) > k) continue;
        if (f & (1u << i)) continue;
        ok = witness(i, f);
      }
      if (ok) out.push_back(v);
    }
    return out;
  }

  bool witness_for(int v, const std::vector<int>& failed) const {
    int vi = node_index(v, "witness_for");
    std::uint32_t f = detail::failure_mask(topo_, failed, nm_index_, "witness_for");
    if (f & (1u << vi)) throw ConfigError("witness_for: v inside the failure set");
    return witness(vi, f);
  }

  bool pair_distinguishable(const std::vector<int>& f1, const std::vector<int>& f2) const {
    std::uint32_t a = detail::failure_mask(topo_, f1, nm_index_, "pair_distinguishable");
    std::uint32_t b = detail::failure_mask(topo_, f2, nm_index_, "pair_distinguishable");
    return group_[a] != group_[b];
  }

 private:
  int node_index(int v, const char* who) const {
    if (!topo_.g.has_node(v) || topo_.is_monitor(v))
      throw ConfigError(std::string(who) + ": not a non-monitor");
    return nm_index_[static_cast<std::size_t>(v)];
  }

  bool witness(int vi, std::uint32_t f) const {
    if (mech_.tag == MechanismTag::CAP)
      return (detail::monitor_reach(topo_, f, nm_index_) >> nm_[static_cast<std::size_t>(vi)]) & 1;
    for (std::uint32_t m : masks_)
      if ((m & (1u << vi)) && !(m & f)) return true;
    return false;
  }

  // conflict_[i] = smallest max(|F1|,|F2|) over same-signature pairs that
  // differ at node i, or nn_+1 when none exist. Max identifiability is
  // conflict - 1.
  void compute_conflicts() {
    conflict_.assign(static_cast<std::size_t>(nn_), nn_ + 1);
    std::uint32_t count = 1u << nn_;
    std::vector<std::vector<std::uint32_t>> buckets;
    for (std::uint32_t f = 0; f < count; ++f) {
      std::size_t g = static_cast<std::size_t>(group_[f]);
      if (buckets.size() <= g) buckets.resize(g + 1);
      buckets[g].push_back(f);
    }
    for (const auto& bucket : buckets) {
      for (std::size_t i = 0; i < bucket.size(); ++i) {
        int size_i = std::popcount(bucket[i]);
        for (std::size_t j = i + 1; j < bucket.size(); ++j) {
          std::uint32_t diff = bucket[i] ^ bucket[j];
          int level = std::max(size_i, std::popcount(bucket[j]));
          while (diff) {
            int b = std::countr_zero(diff);
            diff &= diff - 1;
            if (level < conflict_[static_cast<std::size_t>(b)])
              conflict_[static_cast<std::size_t>(b)] = level;
          }
        }
      }
    }
  }

  Topology topo_;
  Mechanism mech_;
  PathSet owned_paths_;
  std::vector<int> nm_;
  std::vector<int> nm_index_;
  int nn_ = 0;
  std::vector<std::uint32_t> masks_;
  std::vector<int> group_;
  std::vector<int> conflict_;
};

// ---- one-shot wrappers over the definition-level checks ----

// Does some available probe traverse v while avoiding the failure set?
// Under CAP this is monitor reachability of v in the failed graph (a
// round-trip walk through v exists exactly then).
inline bool witness_exists(const Topology& topo, int v, const std::vector<int>& failed,
                           const Mechanism& mech, int max_nodes = kOracleMaxNodes) {
  std::vector<int> nm_index(static_cast<std::size_t>(topo.num_nodes()), -1);
  auto nm = topo.non_monitors();
  for (std::size_t i = 0; i < nm.size(); ++i) nm_index[static_cast<std::size_t>(nm[i])] = static_cast<int>(i);
  if (!topo.g.has_node(v) || topo.is_monitor(v))
    throw ConfigError("witness_exists: not a non-monitor");
  std::uint32_t f = detail::failure_mask(topo, failed, nm_index, "witness_exists");
  int vi = nm_index[static_cast<std::size_t>(v)];
  if (f & (1u << vi)) throw ConfigError("witness_exists: v inside the failure set");
  if (mech.tag == MechanismTag::CAP)
    return (detail::monitor_reach(topo, f, nm_index) >> v) & 1;
  PathSet local;
  const PathSet* ps = mech.paths;
  if (mech.tag == MechanismTag::CSP) {
    local = enumerate_simple_paths(topo, mech.csp_monitor_transit, max_nodes);
    ps = &local;
  }
  if (!ps) throw ConfigError("witness_exists: UP mechanism without a path set");
  for (std::uint32_t m : detail::distinct_path_masks(topo, *ps, nm_index))
    if ((m & (1u << vi)) && !(m & f)) return true;
  return false;
}

// Do the two failure sets produce different outcomes on some probe?
inline bool distinguishable(const Topology& topo, const std::vector<int>& f1,
                            const std::vector<int>& f2, const Mechanism& mech,
                            int max_nodes = kOracleMaxNodes) {
  std::vector<int> nm_index(static_cast<std::size_t>(topo.num_nodes()), -1);
  auto nm = topo.non_monitors();
  for (std::size_t i = 0; i < nm.size(); ++i) nm_index[static_cast<std::size_t>(nm[i])] = static_cast<int>(i);
  std::uint32_t a = detail::failure_mask(topo, f1, nm_index, "distinguishable");
  std::uint32_t b = detail::failure_mask(topo, f2, nm_index, "distinguishable");
  if (mech.tag == MechanismTag::CAP) {
    return detail::monitor_reach(topo, a, nm_index) != detail::monitor_reach(topo, b, nm_index);
  }
  PathSet local;
  const PathSet* ps = mech.paths;
  if (mech.tag == MechanismTag::CSP) {
    local = enumerate_simple_paths(topo, mech.csp_monitor_transit, max_nodes);
    ps = &local;
  }
  if (!ps) throw ConfigError("distinguishable: UP mechanism without a path set");
  for (std::uint32_t m : detail::distinct_path_masks(topo, *ps, nm_index))
    if (((m & a) != 0) != ((m & b) != 0)) return true;
  return false;
}

inline bool exact_k_identifiable(const Topology& topo, const std::vector<int>& nodes, int k,
                                 const Mechanism& mech, int max_nodes = kOracleMaxNodes) {
  return Oracle(topo, mech, max_nodes).k_identifiable(nodes, k);
}

inline int exact_max_identifiability(const Topology& topo, int v, const Mechanism& mech,
                                     int max_nodes = kOracleMaxNodes) {
  return Oracle(topo, mech, max_nodes).max_identifiability(v);
}

inline std::vector<int> exact_max_identifiable_set(const Topology& topo, int k,
                                                   const Mechanism& mech,
                                                   int max_nodes = kOracleMaxNodes) {
  return Oracle(topo, mech, max_nodes).identifiable_set(k);
}

inline std::vector<int> witness_inner_set(const Topology& topo, int k, const Mechanism& mech,
                                          int max_nodes = kOracleMaxNodes) {
  return Oracle(topo, mech, max_nodes).witness_inner_set(k);
}

// ---- report exports ----

// Per-node ground-truth table, one row per (non-monitor, mechanism).
inline std::string oracle_report_csv(const Topology& topo, const std::vector<Mechanism>& mechs,
                                     int max_nodes = kOracleMaxNodes) {
  std::string out = "node_label,mechanism,exact_max_identifiability\n";
  for (const auto& mech : mechs) {
    Oracle o(topo, mech, max_nodes);
    for (int v : topo.non_monitors())
      out += topo.label(v) + "," + mechanism_name(mech.tag) + "," +
             std::to_string(o.max_identifiability(v)) + "\n";
  }
  return out;
}

// Node set as a JSON array of labels, sorted lexicographically.
inline std::string label_set_json(const Topology& topo, std::vector<int> nodes) {
  std::vector<std::string> labels;
  labels.reserve(nodes.size());
  for (int v : nodes) labels.push_back(topo.label(v));
  std::sort(labels.begin(), labels.end());
  std::string out = "[";
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (i) out += ",";
    out += "\"";
    for (char c : labels[i]) {
      if (c == '"' || c == '\\') out += '\\';
      out += c;
    }
    out += "\"";
  }
  out += "]";
  return out;
}

}  // namespace failoc
