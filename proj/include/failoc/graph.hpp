#pragma once

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace failoc {

// Undirected simple graph on dense node ids 0..n-1.
struct Graph {
  int n = 0;
  std::vector<std::vector<int>> adj;       // sorted neighbor lists
  std::vector<std::pair<int, int>> edges;  // stored with first < second, insertion order

  Graph() = default;
  explicit Graph(int num_nodes) : n(num_nodes), adj(static_cast<std::size_t>(num_nodes)) {
    if (num_nodes < 0) throw std::invalid_argument("Graph: negative node count");
  }

  int num_edges() const { return static_cast<int>(edges.size()); }

  bool has_node(int v) const { return v >= 0 && v < n; }

  bool has_edge(int u, int v) const {
    if (!has_node(u) || !has_node(v)) return false;
    const auto& nu = adj[static_cast<std::size_t>(u)];
    return std::binary_search(nu.begin(), nu.end(), v);
  }

  // Returns false when the edge already exists (parallel edges collapse).
  // Self-loops and out-of-range ids are rejected.
  bool add_edge(int u, int v) {
    if (!has_node(u) || !has_node(v)) throw std::invalid_argument("add_edge: endpoint out of range");
    if (u == v) throw std::invalid_argument("add_edge: self-loop");
    if (has_edge(u, v)) return false;
    auto& nu = adj[static_cast<std::size_t>(u)];
    auto& nv = adj[static_cast<std::size_t>(v)];
    nu.insert(std::upper_bound(nu.begin(), nu.end(), v), v);
    nv.insert(std::upper_bound(nv.begin(), nv.end(), u), u);
    edges.emplace_back(std::min(u, v), std::max(u, v));
    return true;
  }

  int degree(int v) const {
    if (!has_node(v)) throw std::invalid_argument("degree: node out of range");
    return static_cast<int>(adj[static_cast<std::size_t>(v)].size());
  }

  const std::vector<int>& neighbors(int v) const {
    if (!has_node(v)) throw std::invalid_argument("neighbors: node out of range");
    return adj[static_cast<std::size_t>(v)];
  }
};

// Connected components of g with the nodes in `removed` deleted. Components
// are sorted by smallest member, members ascending. Unknown ids throw.
inline std::vector<std::vector<int>> components_after_removal(const Graph& g,
                                                              const std::vector<int>& removed) {
  std::vector<char> gone(static_cast<std::size_t>(g.n), 0);
  for (int v : removed) {
    if (!g.has_node(v)) throw std::invalid_argument("components_after_removal: node out of range");
    gone[static_cast<std::size_t>(v)] = 1;
  }
  std::vector<std::vector<int>> comps;
  std::vector<char> seen(static_cast<std::size_t>(g.n), 0);
  std::vector<int> queue;
  for (int start = 0; start < g.n; ++start) {
    if (gone[static_cast<std::size_t>(start)] || seen[static_cast<std::size_t>(start)]) continue;
    queue.assign(1, start);
    seen[static_cast<std::size_t>(start)] = 1;
    std::vector<int> comp;
    while (!queue.empty()) {
      int v = queue.back();
      queue.pop_back();
      comp.push_back(v);
      for (int w : g.neighbors(v)) {
        if (gone[static_cast<std::size_t>(w)] || seen[static_cast<std::size_t>(w)]) continue;
        seen[static_cast<std::size_t>(w)] = 1;
        queue.push_back(w);
      }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  return comps;
}

inline bool is_connected(const Graph& g) {
  if (g.n == 0) return true;
  return components_after_removal(g, {}).size() == 1;
}

// A graph with monitor roles and external node labels. Labels are always
// populated; programmatic builders fall back to decimal ids.
struct Topology {
  Graph g;
  std::vector<bool> monitor;
  std::vector<std::string> labels;

  int num_nodes() const { return g.n; }
  int num_links() const { return g.num_edges(); }

  bool is_monitor(int v) const {
    if (!g.has_node(v)) throw std::invalid_argument("is_monitor: node out of range");
    return monitor[static_cast<std::size_t>(v)];
  }

  int num_monitors() const {
    return static_cast<int>(std::count(monitor.begin(), monitor.end(), true));
  }

  int num_non_monitors() const { return g.n - num_monitors(); }

  std::vector<int> monitors() const {
    std::vector<int> out;
    for (int v = 0; v < g.n; ++v)
      if (monitor[static_cast<std::size_t>(v)]) out.push_back(v);
    return out;
  }

  std::vector<int> non_monitors() const {
    std::vector<int> out;
    for (int v = 0; v < g.n; ++v)
      if (!monitor[static_cast<std::size_t>(v)]) out.push_back(v);
    return out;
  }

  int monitor_neighbor_count(int v) const {
    int c = 0;
    for (int w : g.neighbors(v))
      if (monitor[static_cast<std::size_t>(w)]) ++c;
    return c;
  }

  const std::string& label(int v) const {
    if (!g.has_node(v)) throw std::invalid_argument("label: node out of range");
    return labels[static_cast<std::size_t>(v)];
  }

  // -1 when no node carries the label.
  int id_of(const std::string& name) const {
    for (int v = 0; v < g.n; ++v)
      if (labels[static_cast<std::size_t>(v)] == name) return v;
    return -1;
  }
};

// Builds a topology from labeled edges; node ids follow first appearance in
// the edge list. Every monitor label must occur in some edge.
inline Topology topology_from_edges(const std::vector<std::pair<std::string, std::string>>& edges,
                                    const std::vector<std::string>& monitor_labels) {
  std::map<std::string, int> id;
  std::vector<std::string> labels;
  auto intern = [&](const std::string& name) {
    auto it = id.find(name);
    if (it != id.end()) return it->second;
    int v = static_cast<int>(labels.size());
    id.emplace(name, v);
    labels.push_back(name);
    return v;
  };
  std::vector<std::pair<int, int>> raw;
  raw.reserve(edges.size());
  for (const auto& [a, b] : edges) {
    if (a == b) throw std::invalid_argument("topology_from_edges: self-loop at " + a);
    int ia = intern(a);  // sequenced: first appearance fixes the id
    int ib = intern(b);
    raw.emplace_back(ia, ib);
  }
  Topology topo;
  topo.g = Graph(static_cast<int>(labels.size()));
  for (auto [u, v] : raw) topo.g.add_edge(u, v);
  topo.labels = std::move(labels);
  topo.monitor.assign(static_cast<std::size_t>(topo.g.n), false);
  for (const auto& name : monitor_labels) {
    int v = topo.id_of(name);
    if (v < 0) throw std::invalid_argument("topology_from_edges: unknown monitor label " + name);
    topo.monitor[static_cast<std::size_t>(v)] = true;
  }
  return topo;
}

struct LoadResult {
  Topology topo;
  std::vector<std::string> warnings;
};

namespace detail {

// Strips a trailing comment and surrounding whitespace.
inline std::string clean_line(const std::string& line) {
  std::string s = line;
  auto hash = s.find('#');
  if (hash != std::string::npos) s.erase(hash);
  auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
  while (!s.empty() && is_space(static_cast<unsigned char>(s.back()))) s.pop_back();
  std::size_t first = 0;
  while (first < s.size() && is_space(static_cast<unsigned char>(s[first]))) ++first;
  return s.substr(first);
}

}  // namespace detail

// Parses the whitespace-separated edge-list format: one "label label" pair
// per line, '#' starts a comment. Monitor stream holds one label per line.
// Duplicate edges are collapsed with a warning; self-loops and unknown
// monitor labels are errors. `name` tags error messages.
inline LoadResult load_topology(std::istream& edge_stream, std::istream& monitor_stream,
                                const std::string& name = "topology") {
  LoadResult result;
  std::map<std::string, int> id;
  std::vector<std::string> labels;
  auto intern = [&](const std::string& label) {
    auto it = id.find(label);
    if (it != id.end()) return it->second;
    int v = static_cast<int>(labels.size());
    id.emplace(label, v);
    labels.push_back(label);
    return v;
  };

  std::vector<std::pair<int, int>> raw;
  std::vector<int> raw_lines;
  std::string line;
  int line_no = 0;
  while (std::getline(edge_stream, line)) {
    ++line_no;
    std::string s = detail::clean_line(line);
    if (s.empty()) continue;
    std::istringstream iss(s);
    std::string a, b, extra;
    if (!(iss >> a >> b) || (iss >> extra)) {
      throw std::runtime_error(name + ": line " + std::to_string(line_no) +
                               ": expected two node labels");
    }
    if (a == b) {
      throw std::runtime_error(name + ": line " + std::to_string(line_no) + ": self-loop at " + a);
    }
    int ia = intern(a);  // sequenced: first appearance fixes the id
    int ib = intern(b);
    raw.emplace_back(ia, ib);
    raw_lines.push_back(line_no);
  }
  if (labels.empty()) throw std::runtime_error(name + ": empty edge list");

  Topology topo;
  topo.g = Graph(static_cast<int>(labels.size()));
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (!topo.g.add_edge(raw[i].first, raw[i].second)) {
      result.warnings.push_back(name + ": line " + std::to_string(raw_lines[i]) +
                                ": duplicate edge " + labels[static_cast<std::size_t>(raw[i].first)] +
                                " " + labels[static_cast<std::size_t>(raw[i].second)] + " ignored");
    }
  }
  topo.labels = std::move(labels);
  topo.monitor.assign(static_cast<std::size_t>(topo.g.n), false);

  line_no = 0;
  while (std::getline(monitor_stream, line)) {
    ++line_no;
    std::string s = detail::clean_line(line);
    if (s.empty()) continue;
    std::istringstream iss(s);
    std::string label, extra;
    iss >> label;
    if (iss >> extra) {
      throw std::runtime_error(name + ": monitors line " + std::to_string(line_no) +
                               ": expected one label");
    }
    int v = topo.id_of(label);
    if (v < 0) {
      throw std::runtime_error(name + ": monitors line " + std::to_string(line_no) +
                               ": unknown monitor label " + label);
    }
    topo.monitor[static_cast<std::size_t>(v)] = true;
  }
  result.topo = std::move(topo);
  return result;
}

inline LoadResult load_topology_files(const std::string& edge_path,
                                      const std::string& monitor_path) {
  std::ifstream edges(edge_path);
  if (!edges) throw std::runtime_error("cannot open edge file " + edge_path);
  std::ifstream monitors(monitor_path);
  if (!monitors) throw std::runtime_error("cannot open monitor file " + monitor_path);
  return load_topology(edges, monitors, edge_path);
}

inline void write_edge_list(std::ostream& os, const Topology& topo,
                            const std::vector<std::string>& header_comments = {}) {
  for (const auto& c : header_comments) os << "# " << c << "\n";
  for (auto [u, v] : topo.g.edges) os << topo.label(u) << " " << topo.label(v) << "\n";
}

inline void write_monitor_list(std::ostream& os, const Topology& topo,
                               const std::vector<std::string>& header_comments = {}) {
  for (const auto& c : header_comments) os << "# " << c << "\n";
  for (int m : topo.monitors()) os << topo.label(m) << "\n";
}

}  // namespace failoc
