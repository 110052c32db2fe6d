#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "failoc/csp.hpp"
#include "failoc/errors.hpp"
#include "failoc/oracle.hpp"
#include "failoc/records.hpp"
#include "failoc/rng.hpp"
#include "failoc/topo_gen.hpp"
#include "failoc/up.hpp"

namespace failoc {

// A fixed topology taken from disk instead of a generator.
struct FileInput {
  std::string edge_file;
  std::string monitor_file;
  std::string path_file;  // optional; empty means default shortest paths
  std::string name;       // model column value; defaults to the edge file stem
};

// Deliberate defects for demonstrating that the consistency checker catches
// real violations. PivotOffByOne inflates every CSP pivot by one.
enum class FaultInjection { None, PivotOffByOne };

inline FaultInjection parse_fault(const std::string& s) {
  if (s.empty() || s == "none") return FaultInjection::None;
  if (s == "pivot-off-by-one") return FaultInjection::PivotOffByOne;
  throw ConfigError("unknown fault injection: " + s);
}

struct ExperimentConfig {
  std::string experiment;  // sweep | tightness | oracle-check
  std::vector<GraphModel> models;
  std::vector<FileInput> files;
  int num_nodes = 20;
  std::vector<int> target_links;  // defaulted per experiment when empty
  long instances = 0;             // defaulted per experiment when 0
  std::vector<int> mu_values;     // defaulted per experiment when empty
  int k_max = 0;                  // defaulted to nodes - min(mu) - 1 when 0
  std::vector<MechanismTag> mechanisms = {MechanismTag::CAP, MechanismTag::CSP,
                                          MechanismTag::UP};
  UpMode up_mode = UpMode::Original;
  bool up_both = false;  // sweep also reports the relaxed fixed-path bounds
  bool csp_monitor_transit = true;
  std::uint64_t seed = 1;
  int oracle_budget = kOracleMaxNodes;
  int parallel = 1;
  long cover_budget = kDefaultCoverBudget;
  int max_retries = 10000;

  // oracle-check instance distribution
  int check_nodes_lo = 6;
  int check_nodes_hi = 10;
  int check_mu_lo = 2;
  int check_mu_hi = 4;
  double check_edge_prob = 0.4;
  FaultInjection inject = FaultInjection::None;
};

namespace detail {

inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

// deterministic per-(model, index) seed, independent of execution order
inline std::uint64_t instance_seed(std::uint64_t config_seed, const std::string& model,
                                   long index) {
  return mix_seed(mix_seed(config_seed, fnv1a64(model)), static_cast<std::uint64_t>(index));
}

inline std::string file_stem(const std::string& path) {
  std::size_t slash = path.find_last_of('/');
  std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
  std::size_t dot = base.find_last_of('.');
  return dot == std::string::npos || dot == 0 ? base : base.substr(0, dot);
}

// runs fn(0..count-1), spreading work over `threads` workers; the first
// exception is rethrown on the caller thread
inline void parallel_for(long count, int threads, const std::function<void(long)>& fn) {
  if (threads <= 1 || count <= 1) {
    for (long i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<long> next{0};
  std::mutex err_mu;
  std::exception_ptr first_error;
  auto worker = [&] {
    for (;;) {
      long i = next.fetch_add(1);
      if (i >= count) return;
      {
        std::lock_guard<std::mutex> lock(err_mu);
        if (first_error) return;
      }
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mu);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };
  long want = std::min<long>(threads, count);
  std::vector<std::thread> pool;
  for (long t = 0; t < want; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

inline void require(bool ok, const std::string& msg) {
  if (!ok) throw ConfigError(msg);
}

}  // namespace detail

// Fills experiment-specific defaults and validates the combination.
inline ExperimentConfig finalize_config(ExperimentConfig cfg) {
  using detail::require;
  require(cfg.experiment == "sweep" || cfg.experiment == "tightness" ||
              cfg.experiment == "oracle-check",
          "experiment must be sweep, tightness, or oracle-check");
  if (cfg.experiment == "oracle-check") {
    if (cfg.instances == 0) cfg.instances = 200;
    require(cfg.instances >= 1, "instances must be at least 1");
    require(cfg.check_nodes_lo >= 3 && cfg.check_nodes_hi >= cfg.check_nodes_lo,
            "bad check node range");
    require(cfg.check_mu_lo >= 2 && cfg.check_mu_hi >= cfg.check_mu_lo, "bad check mu range");
    require(cfg.check_mu_hi < cfg.check_nodes_lo, "check mu range leaves no non-monitors");
    if (cfg.check_nodes_hi > cfg.oracle_budget)
      throw BudgetError("oracle-check: node range exceeds the oracle budget");
    return cfg;
  }

  bool generated = !cfg.models.empty();
  require(generated != !cfg.files.empty(), "provide either models or files, not both");
  if (cfg.instances == 0) cfg.instances = cfg.experiment == "sweep" ? 200 : 100;
  require(cfg.instances >= 1, "instances must be at least 1");
  require(!cfg.mechanisms.empty(), "mechanisms must be non-empty");

  if (generated) {
    for (auto m : cfg.models)
      require(m != GraphModel::File, "use files for fixed topologies");
    if (cfg.mu_values.empty()) cfg.mu_values = cfg.experiment == "sweep"
                                                   ? std::vector<int>{2, 4, 6, 10}
                                                   : std::vector<int>{10};
    int mu_min = cfg.mu_values.front();
    for (int mu : cfg.mu_values) {
      require(mu >= 2, "mu values must be at least 2");
      mu_min = std::min(mu_min, mu);
    }
    require(mu_min < cfg.num_nodes, "mu leaves no non-monitors");
    if (cfg.target_links.empty())
      cfg.target_links = cfg.experiment == "tightness" ? std::vector<int>{51, 99}
                                                       : std::vector<int>{51};
    for (int l : cfg.target_links) require(l >= cfg.num_nodes - 1, "link target below tree size");
    if (cfg.experiment == "sweep") {
      require(cfg.target_links.size() == 1, "sweep takes a single link target");
      if (cfg.k_max == 0) cfg.k_max = std::max(1, cfg.num_nodes - mu_min - 1);
      require(cfg.k_max >= 1 && cfg.k_max <= cfg.num_nodes - mu_min,
              "k_max outside 1..nodes-min(mu)");
    }
  } else {
    if (cfg.experiment == "sweep" && cfg.k_max == 0)
      throw ConfigError("sweep over files requires an explicit k_max");
  }
  require(cfg.parallel >= 1, "parallel must be at least 1");
  require(cfg.oracle_budget >= 3, "oracle budget too small");
  return cfg;
}

namespace detail {

struct LoadedInstance {
  Topology topo;
  PathSet paths;  // probing paths for the UP mechanism
  std::string model;
  long index = 0;
  std::uint64_t seed = 0;
};

inline LoadedInstance load_file_instance(const FileInput& f, long index, std::uint64_t seed) {
  LoadedInstance li;
  auto loaded = load_topology_files(f.edge_file, f.monitor_file);
  li.topo = std::move(loaded.topo);
  li.paths = f.path_file.empty() ? shortest_monitor_paths(li.topo)
                                 : load_paths_file(f.path_file, li.topo);
  li.model = f.name.empty() ? file_stem(f.edge_file) : f.name;
  li.index = index;
  li.seed = seed;
  return li;
}

// rows for one placed instance of a sweep
inline void sweep_rows(const ExperimentConfig& cfg, const Topology& t, const PathSet& paths,
                       const std::string& model, long index, std::uint64_t seed, int mu,
                       std::vector<ResultRecord>& out) {
  int nn = t.num_non_monitors();
  int k_hi = std::min(cfg.k_max, nn - 1);
  bool oracle_ok = t.num_nodes() <= cfg.oracle_budget;
  auto rec = [&](int k, const std::string& mech, const std::string& metric, double value) {
    out.push_back({cfg.experiment, model, index, seed, mu, k, mech, metric, value});
  };
  rec(0, "-", "oracle_used", oracle_ok ? 1.0 : 0.0);

  std::vector<CspNodeMetrics> csp_metrics;
  std::vector<IdentInterval> cap_intervals;
  std::vector<CoverMetrics> cover;
  for (auto mech : cfg.mechanisms) {
    if (mech == MechanismTag::CSP) csp_metrics = csp_node_metrics_all(t);
    if (mech == MechanismTag::CAP) cap_intervals = cap_node_bounds_all(t);
    if (mech == MechanismTag::UP) cover = cover_metrics_all(t, paths, cfg.cover_budget);
  }

  for (auto mech : cfg.mechanisms) {
    std::optional<Oracle> oracle;
    if (oracle_ok) {
      Mechanism m = mech == MechanismTag::CAP  ? Mechanism::cap()
                    : mech == MechanismTag::CSP ? Mechanism::csp(cfg.csp_monitor_transit)
                                                : Mechanism::up(paths);
      oracle.emplace(t, m, cfg.oracle_budget);
    }
    const char* name = mechanism_name(mech);
    for (int k = 1; k <= k_hi; ++k) {
      IdentSetBounds b = mech == MechanismTag::CSP ? csp_set_bounds(t, k, csp_metrics)
                         : mech == MechanismTag::CAP
                             ? cap_set_bounds(t, k, cap_intervals)
                             : s_up_bounds(t, cover, k, cfg.up_mode);
      rec(k, name, "inner_size", static_cast<double>(b.inner.size()));
      rec(k, name, "outer_size", static_cast<double>(b.outer.size()));
      if (mech == MechanismTag::UP && cfg.up_both) {
        IdentSetBounds rb = s_up_bounds(t, cover, k, UpMode::Relaxed);
        rec(k, name, "relaxed_inner_size", static_cast<double>(rb.inner.size()));
        rec(k, name, "relaxed_outer_size", static_cast<double>(rb.outer.size()));
      }
      if (oracle)
        rec(k, name, "exact_size", static_cast<double>(oracle->identifiable_set(k).size()));
    }
  }
}

// rows for one placed instance of a tightness run
inline void tightness_rows(const ExperimentConfig& cfg, const Topology& t, const PathSet& paths,
                           const std::string& model, long index, std::uint64_t seed, int mu,
                           std::vector<ResultRecord>& out) {
  int nn = t.num_non_monitors();
  if (nn < 1) throw ConfigError("tightness: no non-monitors");
  auto cover = cover_metrics_all(t, paths, cfg.cover_budget);
  int orig_lo = nn, orig_hi = nn, rel_lo = nn, rel_hi = nn;
  long coincide = 0;
  for (const auto& cm : cover) {
    auto o = up_node_bounds(cm, nn, UpMode::Original);
    auto r = up_node_bounds(cm, nn, UpMode::Relaxed);
    orig_lo = std::min(orig_lo, o.lower);
    orig_hi = std::min(orig_hi, o.upper);
    rel_lo = std::min(rel_lo, r.lower);
    rel_hi = std::min(rel_hi, r.upper);
    if (r.upper == o.upper) ++coincide;
  }
  auto rec = [&](const std::string& metric, double value) {
    out.push_back({cfg.experiment, model, index, seed, mu, 0, "up", metric, value});
  };
  rec("original_lower", orig_lo);
  rec("original_upper", orig_hi);
  rec("relaxed_lower", rel_lo);
  rec("relaxed_upper", rel_hi);
  rec("coincidence_rate", static_cast<double>(coincide) / static_cast<double>(nn));
}

}  // namespace detail

// Monte Carlo sweep/tightness runner. Returns unsorted records; the CSV
// writer applies the canonical order.
inline std::vector<ResultRecord> run_experiment(const ExperimentConfig& raw) {
  ExperimentConfig cfg = finalize_config(raw);
  detail::require(cfg.experiment == "sweep" || cfg.experiment == "tightness",
                  "run_experiment handles sweep and tightness only");
  bool sweep = cfg.experiment == "sweep";

  struct Task {
    std::optional<GenSpec> spec;   // generated instance
    std::optional<FileInput> file; // fixed instance
    std::string model;
    long index = 0;
    std::uint64_t seed = 0;
  };
  std::vector<Task> tasks;
  if (!cfg.models.empty()) {
    for (auto model : cfg.models) {
      for (int target : cfg.target_links) {
        std::string label = model_name(model);
        if (cfg.target_links.size() > 1) label += "-l" + std::to_string(target);
        for (long i = 0; i < cfg.instances; ++i) {
          Task t;
          t.model = label;
          t.index = i;
          t.seed = detail::instance_seed(cfg.seed, label, i);
          GenSpec gs;
          gs.model = model;
          gs.num_nodes = cfg.num_nodes;
          gs.target_links = target;
          gs.seed = t.seed;
          gs.max_retries = cfg.max_retries;
          t.spec = gs;
          tasks.push_back(std::move(t));
        }
      }
    }
  } else {
    for (std::size_t i = 0; i < cfg.files.size(); ++i) {
      Task t;
      t.file = cfg.files[i];
      t.index = static_cast<long>(i);
      t.model = "";  // resolved at load time
      t.seed = cfg.seed;
      tasks.push_back(std::move(t));
    }
  }

  std::vector<std::vector<ResultRecord>> slots(tasks.size());
  detail::parallel_for(static_cast<long>(tasks.size()), cfg.parallel, [&](long ti) {
    const Task& task = tasks[static_cast<std::size_t>(ti)];
    auto& out = slots[static_cast<std::size_t>(ti)];
    if (task.file) {
      auto li = detail::load_file_instance(*task.file, task.index, task.seed);
      int mu = li.topo.num_monitors();
      if (sweep)
        detail::sweep_rows(cfg, li.topo, li.paths, li.model, li.index, li.seed, mu, out);
      else
        detail::tightness_rows(cfg, li.topo, li.paths, li.model, li.index, li.seed, mu, out);
      return;
    }
    GenResult gr = generate(*task.spec);
    for (int mu : cfg.mu_values) {
      Topology t = place_monitors(gr.topo, mu,
                                  mix_seed(task.seed, 0xA000u + static_cast<std::uint64_t>(mu)));
      PathSet paths = shortest_monitor_paths(t);
      if (sweep)
        detail::sweep_rows(cfg, t, paths, task.model, task.index, task.seed, mu, out);
      else
        detail::tightness_rows(cfg, t, paths, task.model, task.index, task.seed, mu, out);
    }
  });

  std::vector<ResultRecord> records;
  for (auto& s : slots)
    for (auto& r : s) records.push_back(std::move(r));

  // per-(model, mu) aggregates for tightness: averages of the instance rows
  if (!sweep) {
    struct Agg {
      double sum[5] = {0, 0, 0, 0, 0};
      long n = 0;
    };
    static const char* kMetrics[5] = {"original_lower", "original_upper", "relaxed_lower",
                                      "relaxed_upper", "coincidence_rate"};
    static const char* kAvgMetrics[5] = {"original_avg_lower", "original_avg_upper",
                                         "relaxed_avg_lower", "relaxed_avg_upper",
                                         "coincidence_rate"};
    std::map<std::pair<std::string, int>, Agg> groups;
    for (const auto& r : records) {
      for (int m = 0; m < 5; ++m)
        if (r.metric == kMetrics[m]) {
          auto& a = groups[{r.model, r.mu}];
          a.sum[m] += r.value;
          if (m == 0) ++a.n;
        }
    }
    for (const auto& [key, a] : groups)
      for (int m = 0; m < 5; ++m)
        records.push_back({cfg.experiment, key.first, -1, cfg.seed, key.second, 0, "up",
                           kAvgMetrics[m], a.sum[m] / static_cast<double>(a.n)});
  }
  return records;
}

// ---- per-node analysis report ----

// Joined per-node metrics for one topology as CSV with a comment header.
inline std::string run_analyze(const Topology& t, const PathSet& paths,
                               long cover_budget = kDefaultCoverBudget) {
  if (t.num_monitors() < 2) throw ConfigError("analyze: needs at least two monitors");
  int nn = t.num_non_monitors();
  if (nn < 1) throw ConfigError("analyze: no non-monitors");

  auto csp_metrics = csp_node_metrics_all(t);
  auto hub = csp_hub(t);
  auto cap_intervals = cap_node_bounds_all(t);
  auto cover = cover_metrics_all(t, paths, cover_budget);

  std::ostringstream os;
  os << "# nodes=" << t.num_nodes() << " links=" << t.num_links()
     << " monitors=" << t.num_monitors() << " non_monitors=" << nn << "\n";
  os << "# pivot = min(merged-monitor cut - 1, min single-monitor-removed cut); "
        "derived quantity, clamped at 0\n";
  os << "label,monitor_neighbors,merged_cut,merged_capped,removed_cut_min,pivot,"
        "csp_lower,csp_upper,csp_applicability,"
        "cap_lower,cap_upper,cap_applicability,"
        "up_paths,up_msc,up_msc_exact,up_gsc,up_d_max,up_uncoverable,"
        "up_lower,up_upper,up_applicability\n";
  for (std::size_t i = 0; i < csp_metrics.size(); ++i) {
    const auto& nmx = csp_metrics[i];
    int removed_min = nmx.num_non_monitors;
    for (const auto& [m, c] : nmx.removed_cut) removed_min = std::min(removed_min, c.value);
    auto csp_iv = detail::csp_bounds_from(nmx, hub == nmx.node);
    const auto& cap_iv = cap_intervals[i];
    const auto& cm = cover[i];
    auto up_iv = up_node_bounds(cm, nn, UpMode::Original);
    os << t.label(nmx.node) << ',' << nmx.monitor_neighbors << ',' << nmx.merged_cut.value << ','
       << (nmx.merged_cut.capped ? 1 : 0) << ',' << removed_min << ',' << nmx.pivot << ','
       << csp_iv.lower << ',' << csp_iv.upper << ',' << applicability_name(csp_iv.applicability)
       << ',' << cap_iv.lower << ',' << cap_iv.upper << ','
       << applicability_name(cap_iv.applicability) << ',' << cm.num_paths << ',' << cm.msc << ','
       << (cm.msc_exact ? 1 : 0) << ',' << cm.gsc << ',' << cm.d_max << ','
       << (cm.uncoverable ? 1 : 0) << ',' << up_iv.lower << ',' << up_iv.upper << ','
       << applicability_name(up_iv.applicability) << "\n";
  }
  return os.str();
}

// ---- oracle consistency check ----

struct CheckReport {
  bool ok = true;
  long instances_checked = 0;
  long cap_capped_nodes = 0;
  long cap_capped_exact = 0;
  std::string counterexample;  // empty when ok
};

namespace detail {

inline void dump_instance(std::ostream& os, const Topology& t, const std::string& model,
                          long index, std::uint64_t seed, int mu) {
  os << "instance: model=" << model << " index=" << index << " seed=" << seed << " mu=" << mu
     << "\n";
  os << "edges:\n";
  write_edge_list(os, t);
  os << "monitors:\n";
  write_monitor_list(os, t);
}

}  // namespace detail

inline CheckReport run_oracle_check(const ExperimentConfig& raw) {
  ExperimentConfig cfg = finalize_config(raw);
  detail::require(cfg.experiment == "oracle-check", "run_oracle_check needs oracle-check config");
  CheckReport report;

  for (long i = 0; i < cfg.instances && report.ok; ++i) {
    std::uint64_t iseed = detail::instance_seed(cfg.seed, "check", i);
    Rng rng(iseed);
    Topology t;
    int mu = 0;
    for (;;) {
      int n = rng.next_int(cfg.check_nodes_lo, cfg.check_nodes_hi);
      Graph g(n);
      for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
          if (rng.bernoulli(cfg.check_edge_prob)) g.add_edge(u, v);
      if (!is_connected(g)) continue;
      mu = rng.next_int(cfg.check_mu_lo, cfg.check_mu_hi);
      if (mu >= n) continue;
      t = place_monitors(detail::role_free(g), mu, rng.next_u64());
      if (t.num_non_monitors() >= 2) break;
    }
    ++report.instances_checked;
    int nn = t.num_non_monitors();
    auto nm = t.non_monitors();

    auto fail = [&](const std::string& what, const std::string& details) {
      std::ostringstream os;
      os << "check failed: " << what << "\n";
      detail::dump_instance(os, t, "er-like", i, iseed, mu);
      os << details << "\n";
      report.ok = false;
      report.counterexample = os.str();
    };

    PathSet paths = shortest_monitor_paths(t);
    Oracle cap_o(t, Mechanism::cap(), cfg.oracle_budget);
    Oracle csp_o(t, Mechanism::csp(cfg.csp_monitor_transit), cfg.oracle_budget);
    Oracle up_o(t, Mechanism::up(paths), cfg.oracle_budget);

    auto csp_metrics = csp_node_metrics_all(t);
    if (cfg.inject == FaultInjection::PivotOffByOne)
      for (auto& m : csp_metrics) m.pivot = std::min(m.pivot + 1, nn);
    auto hub = csp_hub(t);
    auto cap_intervals = cap_node_bounds_all(t);
    auto cover = cover_metrics_all(t, paths, cfg.cover_budget);

    for (std::size_t idx = 0; idx < nm.size() && report.ok; ++idx) {
      int v = nm[idx];
      int w_cap = cap_o.max_identifiability(v);
      int w_csp = csp_o.max_identifiability(v);
      int w_up = up_o.max_identifiability(v);
      std::ostringstream d;
      d << "node=" << t.label(v) << " exact: cap=" << w_cap << " csp=" << w_csp
        << " up=" << w_up;

      auto csp_iv = detail::csp_bounds_from(csp_metrics[idx], hub == v);
      if (w_csp < csp_iv.lower || w_csp > csp_iv.upper) {
        d << " csp_interval=[" << csp_iv.lower << "," << csp_iv.upper << "]"
          << " pivot=" << csp_metrics[idx].pivot;
        fail("cut interval misses the exact value", d.str());
        break;
      }
      const auto& cap_iv = cap_intervals[idx];
      if (w_cap < cap_iv.lower || w_cap > cap_iv.upper) {
        d << " cap_interval=[" << cap_iv.lower << "," << cap_iv.upper << "]";
        fail("walk interval misses the exact value", d.str());
        break;
      }
      if (cap_iv.applicability == Applicability::Exact) {
        ++report.cap_capped_nodes;
        if (w_cap == cap_iv.lower) ++report.cap_capped_exact;
      }
      auto up_iv = up_node_bounds(cover[idx], nn, UpMode::Original);
      if (w_up < up_iv.lower || w_up > up_iv.upper) {
        d << " up_interval=[" << up_iv.lower << "," << up_iv.upper << "]"
          << " msc=" << cover[idx].msc;
        fail("cover interval misses the exact value", d.str());
        break;
      }
      const auto& cm = cover[idx];
      if (cm.num_paths > 0 && !cm.uncoverable) {
        double bound = harmonic(cm.d_max) * cm.msc + 1e-9;
        if (!(cm.msc <= cm.gsc && cm.gsc <= bound)) {
          d << " msc=" << cm.msc << " gsc=" << cm.gsc << " d_max=" << cm.d_max;
          fail("greedy cover outside its guarantee", d.str());
          break;
        }
      }
      if (!(w_up <= w_csp && w_csp <= w_cap)) {
        fail("mechanism ordering violated", d.str());
        break;
      }
    }
    if (!report.ok) break;

    auto cases = csp_top_cases(t, nm);
    if (cases.full_identifiable != csp_o.k_identifiable(nm, nn)) {
      fail("two-monitor-neighbor test disagrees with the oracle at the top level",
           std::string("claim=") + (cases.full_identifiable ? "yes" : "no"));
      break;
    }
    if (cases.near_full_identifiable != csp_o.k_identifiable(nm, nn - 1)) {
      fail("hub test disagrees with the oracle one level down",
           std::string("claim=") + (cases.near_full_identifiable ? "yes" : "no"));
      break;
    }
    if (cases.near_full_set != csp_o.identifiable_set(nn - 1)) {
      fail("exact set one level down disagrees with the oracle", "");
      break;
    }

    auto subset = [](const std::vector<int>& small, const std::vector<int>& big) {
      return std::includes(big.begin(), big.end(), small.begin(), small.end());
    };
    for (int k = 1; k <= nn - 1 && report.ok; ++k) {
      struct Entry {
        const char* name;
        IdentSetBounds bounds;
        Oracle* oracle;
      };
      std::vector<Entry> entries = {
          {"csp", csp_set_bounds(t, k, csp_metrics), &csp_o},
          {"cap", cap_set_bounds(t, k, cap_intervals), &cap_o},
          {"up", s_up_bounds(t, cover, k, cfg.up_mode), &up_o},
      };
      for (auto& e : entries) {
        auto exact = e.oracle->identifiable_set(k);
        auto inner_w = e.oracle->witness_inner_set(k);
        if (!subset(e.bounds.inner, exact) || !subset(exact, e.bounds.outer) ||
            !subset(inner_w, exact)) {
          std::ostringstream d;
          d << "mechanism=" << e.name << " k=" << k;
          fail("set approximation containment violated", d.str());
          break;
        }
      }
    }
  }
  return report;
}

}  // namespace failoc
