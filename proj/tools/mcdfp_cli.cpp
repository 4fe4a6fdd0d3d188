// mcdfp: run simulation batches, parameter sweeps and game oracles.
//
//   mcdfp run    --preset scenario1 --variant mcdfp --alpha 0.1 --seed 7 --reps 50 --out DIR
//   mcdfp sweep  --preset scenario1 --cells 0.5,1,0.1,0.4 --reps 20 --out DIR
//   mcdfp oracle --preset scenario1 [--json]
//
// Exit codes: 0 ok, 2 bad input, 3 I/O failure.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "mcdfp/config.hpp"
#include "mcdfp/engine.hpp"
#include "mcdfp/game.hpp"
#include "mcdfp/metrics_io.hpp"

namespace fs = std::filesystem;
using namespace mcdfp;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct ScenarioFlags {
  std::string config_path;
  std::string preset_name;
  std::string variant;
  std::optional<double> alpha;
  std::optional<std::uint64_t> seed;
  std::optional<int> reps;
  std::optional<int> horizon;

  void add_to(CLI::App& cmd, bool with_run_flags) {
    auto* cfg = cmd.add_option("--config", config_path, "Scenario config file (YAML or .json)");
    auto* pre = cmd.add_option("--preset", preset_name, "Built-in scenario")
                    ->check(CLI::IsMember(io::preset_names()));
    cfg->excludes(pre);
    if (!with_run_flags) return;
    cmd.add_option("--variant", variant, "Algorithm variant")
        ->check(CLI::IsMember({"mcdfp", "cdfp", "dfp"}));
    cmd.add_option("--alpha", alpha, "Robot speed (step fraction)");
    cmd.add_option("--seed", seed, "Root seed; MCDFP_SEED overrides");
    cmd.add_option("--reps", reps, "Number of replications");
    cmd.add_option("--horizon", horizon, "Final time T_f");
  }

  engine::ScenarioConfig resolve() const {
    engine::ScenarioConfig cfg = config_path.empty()
                                     ? io::preset(preset_name.empty() ? "scenario1" : preset_name)
                                     : io::load_config(config_path);
    if (!variant.empty()) cfg.variant = engine::parse_variant(variant);
    if (alpha) cfg.mobility.alpha = *alpha;
    if (seed) cfg.seed = *seed;
    if (const char* env = std::getenv("MCDFP_SEED")) {
      try {
        std::size_t used = 0;
        cfg.seed = std::stoull(env, &used);
        if (used != std::string(env).size()) throw std::invalid_argument("trailing characters");
      } catch (const std::exception&) {
        throw UsageError(std::string("MCDFP_SEED is not an unsigned integer: ") + env);
      }
    }
    if (reps) cfg.replications = *reps;
    if (horizon) cfg.horizon = *horizon;
    cfg.validate();
    return cfg;
  }
};

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io::IoError("cannot open '" + path.string() + "' for writing");
  out << content;
  if (!out) throw io::IoError("failed writing '" + path.string() + "'");
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw io::IoError("cannot create directory '" + dir.string() + "'");
}

void write_run_outputs(const fs::path& dir, const engine::BatchResult& batch,
                       const engine::ScenarioConfig& cfg) {
  ensure_dir(dir);
  std::ostringstream metrics, traj;
  io::write_metrics_csv(metrics, batch.runs, cfg.variant);
  io::write_trajectories_csv(traj, batch.runs);
  write_file(dir / "metrics.csv", metrics.str());
  write_file(dir / "trajectories.csv", traj.str());
  write_file(dir / "summary.json", io::summary_json(batch.summary, cfg));
}

std::vector<engine::SweepCell> parse_cells(const std::vector<std::string>& specs) {
  std::vector<engine::SweepCell> cells;
  for (const auto& spec : specs) {
    std::stringstream groups(spec);
    std::string group;
    while (std::getline(groups, group, ';')) {
      if (group.empty()) continue;
      std::vector<double> v;
      std::stringstream parts(group);
      std::string part;
      while (std::getline(parts, part, ',')) {
        try {
          std::size_t used = 0;
          v.push_back(std::stod(part, &used));
          if (used != part.size()) throw std::invalid_argument(part);
        } catch (const std::exception&) {
          throw UsageError("bad cell value '" + part + "'");
        }
      }
      if (v.size() != 4) throw UsageError("a cell is rho1,rho2,eta1,eta2; got '" + group + "'");
      cells.push_back({v[0], v[1], v[2], v[3]});
    }
  }
  return cells;
}

std::string format_profile(const ActionProfile& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + std::to_string(p[i].target);
  return s + ")";
}

nlohmann::json profile_json(const ActionProfile& p) {
  auto out = nlohmann::json::array();
  for (const Action& a : p) out.push_back(a.target);
  return out;
}

int cmd_run(const ScenarioFlags& flags, const std::string& out, unsigned threads) {
  const engine::ScenarioConfig cfg = flags.resolve();
  const engine::BatchResult batch = engine::run_batch(cfg, threads);
  write_run_outputs(out, batch, cfg);
  const auto& s = batch.summary;
  std::cout << engine::to_string(cfg.variant) << ": coverage " << s.coverage_rate << ", converged "
            << s.converged_runs << "/" << s.replications << ", total attempts " << s.total_attempts
            << "\n";
  return 0;
}

int cmd_sweep(const ScenarioFlags& flags, const std::vector<std::string>& cell_specs,
              bool cells_given, const std::string& out, unsigned threads) {
  engine::ScenarioConfig base = flags.resolve();
  if (!flags.variant.empty()) base.variant = engine::parse_variant(flags.variant);
  const auto cells = cells_given ? parse_cells(cell_specs) : engine::default_sweep_cells();
  if (cells.empty()) throw UsageError("sweep needs at least one cell");

  const auto results = engine::parameter_sweep(base, cells, threads);
  ensure_dir(out);
  auto index = nlohmann::json::array();
  for (std::size_t c = 0; c < results.size(); ++c) {
    const auto& r = results[c];
    engine::ScenarioConfig cfg = base;
    cfg.learn.rho1 = r.cell.rho1;
    cfg.learn.rho2 = r.cell.rho2;
    cfg.comm.eta1 = r.cell.eta1;
    cfg.comm.eta2 = r.cell.eta2;
    const std::string name = "cell" + std::to_string(c);
    write_run_outputs(fs::path(out) / name, r.batch, cfg);
    nlohmann::json meta = {{"cell", name},
                           {"rho1", r.cell.rho1},
                           {"rho2", r.cell.rho2},
                           {"eta1", r.cell.eta1},
                           {"eta2", r.cell.eta2},
                           {"convergence_rate", r.batch.summary.convergence_rate},
                           {"coverage_rate", r.batch.summary.coverage_rate},
                           {"total_attempts", r.batch.summary.total_attempts}};
    write_file(fs::path(out) / name / "cell.json", meta.dump(2) + "\n");
    index.push_back(meta);
    std::cout << name << " (" << r.cell.rho1 << ", " << r.cell.rho2 << ", " << r.cell.eta1 << ", "
              << r.cell.eta2 << "): NE convergence " << r.batch.summary.convergence_rate << "\n";
  }
  write_file(fs::path(out) / "sweep.json", index.dump(2) + "\n");
  return 0;
}

int cmd_oracle(const ScenarioFlags& flags, bool as_json) {
  const engine::ScenarioConfig cfg = flags.resolve();
  const CostMatrix costs = CostMatrix::from_positions(cfg.robot_starts, cfg.targets);
  const auto equilibria = game::enumerate_pure_ne(costs);
  const auto optimum = game::optimal_assignment(costs);

  if (as_json) {
    auto ne = nlohmann::json::array();
    for (const auto& p : equilibria) {
      ne.push_back({{"profile", profile_json(p)}, {"cost", game::assignment_cost(p, costs)}});
    }
    nlohmann::json doc = {{"num_robots", costs.size()},
                          {"num_pure_ne", equilibria.size()},
                          {"pure_ne", ne},
                          {"optimal_assignment", profile_json(optimum.profile)},
                          {"optimal_cost", optimum.cost}};
    std::cout << doc.dump(2) << "\n";
    return 0;
  }
  std::cout << "pure NE: " << equilibria.size() << "\n";
  std::cout << std::left << std::setw(6) << "#" << std::setw(4 + 2 * costs.size()) << "profile"
            << "cost\n";
  for (std::size_t k = 0; k < equilibria.size(); ++k) {
    std::cout << std::setw(6) << k << std::setw(4 + 2 * costs.size())
              << format_profile(equilibria[k]) << game::assignment_cost(equilibria[k], costs)
              << "\n";
  }
  std::cout << "optimal assignment: " << format_profile(optimum.profile) << " cost "
            << optimum.cost << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decentralized fictitious play for multi-robot target assignment"};
  app.require_subcommand(1);
  unsigned threads = 0;
  app.add_option("--threads", threads, "Worker threads for replications (0 = hardware)");

  ScenarioFlags run_flags, sweep_flags, oracle_flags;
  std::string run_out, sweep_out;
  std::vector<std::string> cells;
  bool as_json = false;

  auto* run = app.add_subcommand("run", "Simulate a replication batch");
  run_flags.add_to(*run, true);
  run->add_option("--out", run_out, "Output directory")->required();
  run->add_option("--threads", threads, "Worker threads for replications (0 = hardware)");

  auto* sweep = app.add_subcommand("sweep", "Grid over (rho1, rho2, eta1, eta2)");
  sweep_flags.add_to(*sweep, true);
  sweep_flags.reps = 20;
  auto* cells_opt = sweep->add_option("--cells", cells, "Cells 'rho1,rho2,eta1,eta2' (repeat or ';'-join)");
  sweep->add_option("--out", sweep_out, "Output directory")->required();
  sweep->add_option("--threads", threads, "Worker threads for replications (0 = hardware)");

  auto* oracle = app.add_subcommand("oracle", "Enumerate pure NE and the optimal assignment");
  oracle_flags.add_to(*oracle, false);
  oracle->add_flag("--json", as_json, "Machine-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*run) return cmd_run(run_flags, run_out, threads);
    if (*sweep) return cmd_sweep(sweep_flags, cells, cells_opt->count() > 0, sweep_out, threads);
    if (*oracle) return cmd_oracle(oracle_flags, as_json);
  } catch (const io::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const CapacityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
