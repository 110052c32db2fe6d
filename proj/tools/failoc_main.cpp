#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "failoc/experiment.hpp"
#include "failoc/graph.hpp"
#include "failoc/oracle.hpp"
#include "failoc/records.hpp"
#include "failoc/topo_gen.hpp"
#include "failoc/up.hpp"

namespace {

using nlohmann::json;

// exit codes: 0 ok, 1 config error, 2 runtime error, 3 check failure
constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;
constexpr int kExitCheckFailed = 3;

std::vector<int> int_list(const json& j, const char* key) {
  if (j.is_number_integer()) return {j.get<int>()};
  if (j.is_array()) {
    std::vector<int> out;
    for (const auto& e : j) {
      if (!e.is_number_integer()) throw failoc::ConfigError(std::string(key) + ": expected integers");
      out.push_back(e.get<int>());
    }
    return out;
  }
  throw failoc::ConfigError(std::string(key) + ": expected an integer or integer list");
}

void set_up_mode(failoc::ExperimentConfig& cfg, const std::string& s) {
  cfg.up_both = s == "both";
  if (s == "original" || s == "both")
    cfg.up_mode = failoc::UpMode::Original;
  else if (s == "relaxed")
    cfg.up_mode = failoc::UpMode::Relaxed;
  else
    throw failoc::ConfigError("up_mode must be original, relaxed, or both");
}

void apply_json_config(failoc::ExperimentConfig& cfg, const std::string& path,
                       std::string* out_path = nullptr) {
  std::ifstream is(path);
  if (!is) throw failoc::ConfigError("cannot open config file " + path);
  json j;
  try {
    j = json::parse(is, nullptr, true, true);  // allow comments
  } catch (const json::parse_error& e) {
    throw failoc::ConfigError(std::string("config parse: ") + e.what());
  }
  if (!j.is_object()) throw failoc::ConfigError("config must be a JSON object");
  if (j.contains("experiment") && j["experiment"].get<std::string>() != cfg.experiment)
    throw failoc::ConfigError("config experiment field disagrees with the subcommand");
  if (j.contains("models"))
    for (const auto& m : j["models"])
      cfg.models.push_back(failoc::parse_model(m.get<std::string>()));
  if (j.contains("files")) {
    for (const auto& f : j["files"]) {
      failoc::FileInput fi;
      fi.edge_file = f.at("edges").get<std::string>();
      fi.monitor_file = f.at("monitors").get<std::string>();
      if (f.contains("paths")) fi.path_file = f["paths"].get<std::string>();
      if (f.contains("name")) fi.name = f["name"].get<std::string>();
      cfg.files.push_back(std::move(fi));
    }
  }
  if (j.contains("nodes")) cfg.num_nodes = j["nodes"].get<int>();
  if (j.contains("links")) cfg.target_links = int_list(j["links"], "links");
  if (j.contains("instances")) cfg.instances = j["instances"].get<long>();
  if (j.contains("mu")) cfg.mu_values = int_list(j["mu"], "mu");
  if (j.contains("k_max")) cfg.k_max = j["k_max"].get<int>();
  if (j.contains("mechanisms")) {
    cfg.mechanisms.clear();
    for (const auto& m : j["mechanisms"])
      cfg.mechanisms.push_back(failoc::parse_mechanism(m.get<std::string>()));
  }
  if (j.contains("up_mode")) set_up_mode(cfg, j["up_mode"].get<std::string>());
  if (j.contains("csp_monitor_transit"))
    cfg.csp_monitor_transit = j["csp_monitor_transit"].get<bool>();
  if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("oracle_budget")) cfg.oracle_budget = j["oracle_budget"].get<int>();
  if (j.contains("parallel")) cfg.parallel = j["parallel"].get<int>();
  if (j.contains("cover_budget")) cfg.cover_budget = j["cover_budget"].get<long>();
  if (j.contains("max_retries")) cfg.max_retries = j["max_retries"].get<int>();
  if (j.contains("check")) {
    const auto& c = j["check"];
    if (c.contains("nodes_lo")) cfg.check_nodes_lo = c["nodes_lo"].get<int>();
    if (c.contains("nodes_hi")) cfg.check_nodes_hi = c["nodes_hi"].get<int>();
    if (c.contains("mu_lo")) cfg.check_mu_lo = c["mu_lo"].get<int>();
    if (c.contains("mu_hi")) cfg.check_mu_hi = c["mu_hi"].get<int>();
    if (c.contains("edge_prob")) cfg.check_edge_prob = c["edge_prob"].get<double>();
  }
  if (j.contains("inject_fault"))
    cfg.inject = failoc::parse_fault(j["inject_fault"].get<std::string>());
  if (j.contains("out") && out_path) *out_path = j["out"].get<std::string>();
}

int default_parallel() {
  if (const char* env = std::getenv("FAILOC_PARALLEL")) {
    int v = std::atoi(env);
    if (v >= 1) return v;
  }
  return 1;
}

void write_text(const std::string& out_path, const std::string& text) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream os(out_path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open output file " + out_path);
  os << text;
}

// flags shared by the sweep and tightness subcommands
struct RunFlags {
  std::string config_path;
  std::vector<std::string> models;
  std::string edges, monitors, paths, name;
  int nodes = 0;
  std::vector<int> links;
  long instances = 0;
  std::vector<int> mu;
  int k_max = 0;
  std::vector<std::string> mechanisms;
  std::string up_mode;
  std::uint64_t seed = 0;
  std::string out;
  int parallel = 0;
  int oracle_budget = 0;
};

void add_run_flags(CLI::App* cmd, RunFlags& f) {
  cmd->add_option("--config", f.config_path, "JSON config file; flags override its fields");
  cmd->add_option("--model", f.models, "generator models (er, rg, ba, rpl)")->delimiter(',');
  cmd->add_option("--edges", f.edges, "edge list file (fixed-topology run)");
  cmd->add_option("--monitors", f.monitors, "monitor list file (fixed-topology run)");
  cmd->add_option("--paths", f.paths, "probing path file (fixed-topology run)");
  cmd->add_option("--name", f.name, "model column value for a fixed-topology run");
  cmd->add_option("--nodes", f.nodes, "nodes per generated instance");
  cmd->add_option("--links", f.links, "expected link count target(s)")->delimiter(',');
  cmd->add_option("--instances", f.instances, "instances per model");
  cmd->add_option("--mu-list", f.mu, "monitor counts")->delimiter(',');
  cmd->add_option("--kmax", f.k_max, "largest failure budget to sweep");
  cmd->add_option("--mechanisms", f.mechanisms, "mechanisms (cap, csp, up)")->delimiter(',');
  cmd->add_option("--up-mode", f.up_mode, "fixed-path bound mode: original, relaxed, or both");
  cmd->add_option("--seed", f.seed, "master seed");
  cmd->add_option("--out", f.out, "output CSV path (default stdout)");
  cmd->add_option("--parallel", f.parallel, "worker threads (env FAILOC_PARALLEL)");
  cmd->add_option("--oracle-budget", f.oracle_budget,
                  "largest node count the exhaustive oracle may touch");
}

failoc::ExperimentConfig build_config(const std::string& experiment, RunFlags& f,
                                      const CLI::App* cmd) {
  failoc::ExperimentConfig cfg;
  cfg.experiment = experiment;
  cfg.parallel = default_parallel();
  if (!f.config_path.empty())
    apply_json_config(cfg, f.config_path, cmd->count("--out") ? nullptr : &f.out);
  if (cmd->count("--model"))
    for (const auto& m : f.models) cfg.models.push_back(failoc::parse_model(m));
  if (cmd->count("--edges") || cmd->count("--monitors")) {
    if (f.edges.empty() || f.monitors.empty())
      throw failoc::ConfigError("fixed-topology runs need both --edges and --monitors");
    failoc::FileInput fi;
    fi.edge_file = f.edges;
    fi.monitor_file = f.monitors;
    fi.path_file = f.paths;
    fi.name = f.name;
    cfg.files.push_back(std::move(fi));
  }
  if (cmd->count("--nodes")) cfg.num_nodes = f.nodes;
  if (cmd->count("--links")) cfg.target_links = f.links;
  if (cmd->count("--instances")) cfg.instances = f.instances;
  if (cmd->count("--mu-list")) cfg.mu_values = f.mu;
  if (cmd->count("--kmax")) cfg.k_max = f.k_max;
  if (cmd->count("--mechanisms")) {
    cfg.mechanisms.clear();
    for (const auto& m : f.mechanisms) cfg.mechanisms.push_back(failoc::parse_mechanism(m));
  }
  if (cmd->count("--up-mode")) set_up_mode(cfg, f.up_mode);
  if (cmd->count("--seed")) cfg.seed = f.seed;
  if (cmd->count("--parallel")) cfg.parallel = f.parallel;
  if (cmd->count("--oracle-budget")) cfg.oracle_budget = f.oracle_budget;
  return cfg;
}

int cmd_run_records(const std::string& experiment, RunFlags& f, const CLI::App* cmd) {
  auto cfg = build_config(experiment, f, cmd);
  auto records = failoc::run_experiment(cfg);
  std::ostringstream os;
  failoc::write_records_csv(os, std::move(records));
  write_text(f.out, os.str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"failure localization capability analyzer for monitor-probed networks"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "generate a topology and write it to files");
  std::string gen_model = "er", gen_out;
  int gen_nodes = 20, gen_monitors = 0, gen_links = 0, gen_retries = 10000;
  double gen_param = 0.0;
  std::uint64_t gen_seed = 1;
  gen->add_option("--model", gen_model, "er, rg, ba, or rpl")->required();
  gen->add_option("--nodes", gen_nodes, "node count")->required();
  gen->add_option("--links", gen_links, "calibrate the model parameter to this expected link count");
  gen->add_option("--param", gen_param, "explicit model parameter (skips calibration)");
  gen->add_option("--monitors", gen_monitors, "also choose this many monitors");
  gen->add_option("--seed", gen_seed, "seed");
  gen->add_option("--max-retries", gen_retries, "connectivity rejection limit");
  gen->add_option("--out", gen_out, "output file prefix")->required();

  // analyze
  auto* analyze = app.add_subcommand("analyze", "per-node identifiability report for one topology");
  std::string an_edges, an_monitors, an_paths, an_out;
  long an_cover_budget = failoc::kDefaultCoverBudget;
  analyze->add_option("edges", an_edges, "edge list file")->required();
  analyze->add_option("monitors", an_monitors, "monitor list file")->required();
  analyze->add_option("paths", an_paths, "probing path file (default: shortest paths)");
  analyze->add_option("--out", an_out, "output path (default stdout)");
  analyze->add_option("--cover-budget", an_cover_budget, "exact cover search budget");

  // sweep / tightness
  auto* sweep = app.add_subcommand("sweep", "identifiable-set sizes across failure budgets");
  RunFlags sweep_flags;
  add_run_flags(sweep, sweep_flags);
  auto* tightness = app.add_subcommand("tightness", "original vs relaxed fixed-path bounds");
  RunFlags tight_flags;
  add_run_flags(tightness, tight_flags);

  // oracle-check
  auto* check = app.add_subcommand("oracle-check",
                                   "compare analytical bounds with the exhaustive oracle");
  std::string chk_config, chk_fault;
  long chk_instances = 0;
  std::uint64_t chk_seed = 0;
  int chk_nodes_lo = 0, chk_nodes_hi = 0, chk_mu_lo = 0, chk_mu_hi = 0, chk_budget = 0;
  double chk_edge_prob = 0.0;
  check->add_option("--config", chk_config, "JSON config file");
  check->add_option("--instances", chk_instances, "instances to draw");
  check->add_option("--seed", chk_seed, "master seed");
  check->add_option("--nodes-lo", chk_nodes_lo, "smallest instance size");
  check->add_option("--nodes-hi", chk_nodes_hi, "largest instance size");
  check->add_option("--mu-lo", chk_mu_lo, "smallest monitor count");
  check->add_option("--mu-hi", chk_mu_hi, "largest monitor count");
  check->add_option("--edge-prob", chk_edge_prob, "edge probability of drawn instances");
  check->add_option("--oracle-budget", chk_budget, "largest node count the oracle may touch");
  check->add_option("--inject-fault", chk_fault,
                    "demonstrate failure detection (pivot-off-by-one)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (gen->parsed()) {
      failoc::GenSpec spec;
      spec.model = failoc::parse_model(gen_model);
      spec.num_nodes = gen_nodes;
      spec.param = gen_param;
      if (gen->count("--links")) spec.target_links = gen_links;
      if (!spec.target_links && gen_param <= 0.0)
        throw failoc::ConfigError("gen: provide --links or --param");
      spec.seed = gen_seed;
      spec.max_retries = gen_retries;
      auto gr = failoc::generate(spec);
      failoc::Topology t = gr.topo;
      if (gen_monitors > 0) t = failoc::place_monitors(t, gen_monitors, gen_seed);

      std::ofstream edges(gen_out + ".edges", std::ios::binary);
      if (!edges) throw std::runtime_error("cannot write " + gen_out + ".edges");
      failoc::write_edge_list(edges, t, {"model=" + gen_model + " nodes=" +
                                         std::to_string(gen_nodes) +
                                         " seed=" + std::to_string(gen_seed)});
      if (gen_monitors > 0) {
        std::ofstream mons(gen_out + ".monitors", std::ios::binary);
        if (!mons) throw std::runtime_error("cannot write " + gen_out + ".monitors");
        failoc::write_monitor_list(mons, t);
      }
      json meta;
      meta["model"] = gen_model;
      meta["nodes"] = t.num_nodes();
      meta["links"] = t.num_links();
      meta["seed"] = gen_seed;
      meta["param"] = gr.param;
      meta["calibrated"] = gr.calibrated;
      if (spec.target_links) meta["target_links"] = *spec.target_links;
      meta["attempts"] = gr.attempts;
      meta["clamped"] = gr.clamped;
      meta["monitors"] = gen_monitors;
      if (!gr.positions.empty()) {
        json pos = json::array();
        for (auto [x, y] : gr.positions) pos.push_back({x, y});
        meta["positions"] = std::move(pos);
      }
      std::ofstream mf(gen_out + ".meta.json", std::ios::binary);
      if (!mf) throw std::runtime_error("cannot write " + gen_out + ".meta.json");
      mf << meta.dump(2) << "\n";
      std::cout << "wrote " << gen_out << ".edges (" << t.num_links() << " links)";
      if (gen_monitors > 0) std::cout << ", " << gen_out << ".monitors";
      std::cout << ", " << gen_out << ".meta.json\n";
      return kExitOk;
    }

    if (analyze->parsed()) {
      auto loaded = failoc::load_topology_files(an_edges, an_monitors);
      for (const auto& w : loaded.warnings) std::cerr << "warning: " << w << "\n";
      failoc::PathSet paths = an_paths.empty()
                                  ? failoc::shortest_monitor_paths(loaded.topo)
                                  : failoc::load_paths_file(an_paths, loaded.topo);
      write_text(an_out, failoc::run_analyze(loaded.topo, paths, an_cover_budget));
      return kExitOk;
    }

    if (sweep->parsed()) return cmd_run_records("sweep", sweep_flags, sweep);
    if (tightness->parsed()) return cmd_run_records("tightness", tight_flags, tightness);

    if (check->parsed()) {
      failoc::ExperimentConfig cfg;
      cfg.experiment = "oracle-check";
      if (!chk_config.empty()) apply_json_config(cfg, chk_config);
      if (check->count("--instances")) cfg.instances = chk_instances;
      if (check->count("--seed")) cfg.seed = chk_seed;
      if (check->count("--nodes-lo")) cfg.check_nodes_lo = chk_nodes_lo;
      if (check->count("--nodes-hi")) cfg.check_nodes_hi = chk_nodes_hi;
      if (check->count("--mu-lo")) cfg.check_mu_lo = chk_mu_lo;
      if (check->count("--mu-hi")) cfg.check_mu_hi = chk_mu_hi;
      if (check->count("--edge-prob")) cfg.check_edge_prob = chk_edge_prob;
      if (check->count("--oracle-budget")) cfg.oracle_budget = chk_budget;
      if (check->count("--inject-fault")) cfg.inject = failoc::parse_fault(chk_fault);
      auto report = failoc::run_oracle_check(cfg);
      std::cout << "instances checked: " << report.instances_checked << "\n";
      if (report.cap_capped_nodes > 0)
        std::cout << "walk-mechanism capped nodes matching the cap exactly: "
                  << report.cap_capped_exact << "/" << report.cap_capped_nodes << "\n";
      if (report.ok) {
        std::cout << "all checks passed\n";
        return kExitOk;
      }
      std::cout << report.counterexample;
      return kExitCheckFailed;
    }
  } catch (const failoc::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const failoc::BudgetError& e) {
    std::cerr << "budget error: " << e.what() << "\n";
    return kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}
