#pragma once

#include <stdexcept>
#include <vector>

#include "failoc/graph.hpp"

namespace failoc {

// Size of a minimum internal vertex cut between two terminals, computed with
// an upper cap. `capped` means no internal cut smaller than `cap` exists; in
// that case `value == cap`. Adjacent terminals have no internal cut at all
// and always report capped.
struct CutValue {
  int value = 0;
  bool capped = false;
  int cap = 0;

  bool operator==(const CutValue&) const = default;
};

namespace detail {

// Dinic max-flow on small integer capacities. Search stops once the flow
// reaches `limit`, which keeps cut queries cheap when only values below the
// cap matter.
class FlowNetwork {
 public:
  explicit FlowNetwork(int num_vertices)
      : head_(static_cast<std::size_t>(num_vertices)) {}

  void add_arc(int from, int to, int capacity) {
    head_[static_cast<std::size_t>(from)].push_back(static_cast<int>(arcs_.size()));
    arcs_.push_back({to, capacity});
    head_[static_cast<std::size_t>(to)].push_back(static_cast<int>(arcs_.size()));
    arcs_.push_back({from, 0});
  }

  int max_flow(int source, int sink, int limit) {
    int total = 0;
    while (total < limit && build_levels(source, sink)) {
      iter_.assign(head_.size(), 0);
      int pushed;
      while (total < limit && (pushed = augment(source, sink, limit - total)) > 0) {
        total += pushed;
      }
    }
    return total;
  }

 private:
  struct Arc {
    int to;
    int cap;
  };

  bool build_levels(int source, int sink) {
    level_.assign(head_.size(), -1);
    level_[static_cast<std::size_t>(source)] = 0;
    queue_.assign(1, source);
    for (std::size_t qi = 0; qi < queue_.size(); ++qi) {
      int v = queue_[qi];
      for (int a : head_[static_cast<std::size_t>(v)]) {
        const Arc& arc = arcs_[static_cast<std::size_t>(a)];
        if (arc.cap <= 0 || level_[static_cast<std::size_t>(arc.to)] >= 0) continue;
        level_[static_cast<std::size_t>(arc.to)] = level_[static_cast<std::size_t>(v)] + 1;
        queue_.push_back(arc.to);
      }
    }
    return level_[static_cast<std::size_t>(sink)] >= 0;
  }

  int augment(int v, int sink, int want) {
    if (v == sink) return want;
    for (int& i = iter_[static_cast<std::size_t>(v)];
         i < static_cast<int>(head_[static_cast<std::size_t>(v)].size()); ++i) {
      int a = head_[static_cast<std::size_t>(v)][static_cast<std::size_t>(i)];
      Arc& arc = arcs_[static_cast<std::size_t>(a)];
      if (arc.cap <= 0) continue;
      if (level_[static_cast<std::size_t>(arc.to)] != level_[static_cast<std::size_t>(v)] + 1)
        continue;
      int got = augment(arc.to, sink, std::min(want, arc.cap));
      if (got > 0) {
        arc.cap -= got;
        arcs_[static_cast<std::size_t>(a ^ 1)].cap += got;
        return got;
      }
    }
    return 0;
  }

  std::vector<std::vector<int>> head_;
  std::vector<Arc> arcs_;
  std::vector<int> level_;
  std::vector<int> iter_;
  std::vector<int> queue_;
};

}  // namespace detail

// Minimum internal vertex cut between s and t in h, capped at `cap`.
// Standard node splitting: v becomes v_in -> v_out with unit capacity,
// terminals and edge arcs get capacity `cap` (an effective infinity since the
// search never pushes more than `cap` units).
inline CutValue vertex_connectivity(const Graph& h, int s, int t, int cap) {
  if (!h.has_node(s) || !h.has_node(t))
    throw std::invalid_argument("vertex_connectivity: terminal out of range");
  if (s == t) throw std::invalid_argument("vertex_connectivity: terminals must differ");
  if (cap < 0) throw std::invalid_argument("vertex_connectivity: negative cap");
  if (cap == 0) return {0, true, 0};
  if (h.has_edge(s, t)) return {cap, true, cap};

  detail::FlowNetwork net(2 * h.n);
  auto in = [](int v) { return 2 * v; };
  auto out = [](int v) { return 2 * v + 1; };
  for (int v = 0; v < h.n; ++v) {
    net.add_arc(in(v), out(v), (v == s || v == t) ? cap : 1);
  }
  for (auto [u, v] : h.edges) {
    net.add_arc(out(u), in(v), cap);
    net.add_arc(out(v), in(u), cap);
  }
  int flow = net.max_flow(out(s), in(t), cap);
  if (flow >= cap) return {cap, true, cap};
  return {flow, false, cap};
}

}  // namespace failoc
