#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mcdfp/agent.hpp"
#include "mcdfp/channel.hpp"
#include "mcdfp/mobility.hpp"
#include "mcdfp/rng.hpp"
#include "mcdfp/types.hpp"

namespace mcdfp::engine {

enum class Variant {
  mcdfp,  // voluntary communication + communication-aware mobility
  cdfp,   // voluntary communication, move straight to the selected target
  dfp,    // fixed-rate communication every step, move straight to the target
};

std::string to_string(Variant v);
Variant parse_variant(const std::string& name);

struct ScenarioConfig {
  std::vector<Vec2> robot_starts;
  mobility::TargetMap targets;
  agent::LearnParams learn;
  channel::CommParams comm;
  mobility::MobilityParams mobility;
  int horizon = 100;
  Variant variant = Variant::mcdfp;
  std::uint64_t seed = 0;
  int replications = 50;

  std::size_t num_robots() const { return robot_starts.size(); }
  void validate() const;
};

struct MetricsFrame {
  int t = 0;
  double ne_distance = 0.0;  // NaN when the run never converged
  double est_error = 0.0;
  int attempts = 0;
  int successes = 0;
  double attempts_per_link = 0.0;
  double success_ratio = 0.0;  // 0 when nothing was attempted
  bool converged = false;
  ActionProfile actions;
  std::vector<Vec2> positions;  // after this step's move
};

struct RunResult {
  std::uint64_t seed = 0;
  std::vector<Vec2> start_positions;
  std::vector<MetricsFrame> frames;
  std::optional<int> converged_at;
  std::optional<ActionProfile> ne_profile;
  bool covered = false;
  long total_attempts = 0;
  double final_cost = 0.0;
  double optimal_cost = 0.0;
};

// One replication's evolving state. Each step runs, in order: action
// selection, own frequency update, communication weights and routing rates,
// the exchange round, mobility weights, and the move.
class Simulation {
 public:
  Simulation(const ScenarioConfig& config, std::uint64_t run_seed);

  MetricsFrame step();

  int time() const { return t_; }
  const std::vector<agent::AgentState>& states() const { return states_; }
  std::vector<agent::AgentState>& mutable_states() { return states_; }
  const CostMatrix& costs() const { return costs_; }
  // Links of the most recent step, sorted by (sender, receiver).
  const std::vector<channel::LinkOutcome>& last_links() const { return last_links_; }
  // Mobility weights of the most recent step, v[i][j].
  const std::vector<std::vector<double>>& last_mobility_weights() const { return last_v_; }

 private:
  ScenarioConfig config_;
  std::uint64_t run_seed_;
  CostMatrix costs_;
  std::vector<agent::AgentState> states_;
  std::vector<Rng> rngs_;
  std::vector<channel::LinkOutcome> last_links_;
  std::vector<std::vector<double>> last_v_;
  int t_ = 0;
};

// Sum over ordered pairs of ||f_i - f^j_i||.
double estimation_error(const std::vector<agent::AgentState>& states);

std::uint64_t replication_seed(std::uint64_t seed, int index);

RunResult run_replication(const ScenarioConfig& config, int index);

struct BatchSummary {
  int replications = 0;
  int covered_runs = 0;
  int converged_runs = 0;
  double coverage_rate = 0.0;
  double convergence_rate = 0.0;
  std::optional<double> mean_converged_at;  // over converged runs
  long total_attempts = 0;
  double mean_total_attempts = 0.0;
  double optimal_cost = 0.0;
  std::optional<double> mean_final_cost;  // over converged runs
  std::optional<double> mean_cost_gap;    // final - optimal, converged runs
  // Per-timestep means; ne_distance averages converged runs only.
  std::vector<double> mean_ne_distance;
  std::vector<double> mean_est_error;
  std::vector<double> mean_attempts_per_link;
  std::vector<double> mean_success_ratio;
};

struct BatchResult {
  std::vector<RunResult> runs;
  BatchSummary summary;
};

BatchSummary summarize(const std::vector<RunResult>& runs, int horizon);

// threads == 0 uses the hardware concurrency.
BatchResult run_batch(const ScenarioConfig& config, unsigned threads = 0);

// total_attempts(candidate) / total_attempts(reference).
double attempts_ratio(const BatchSummary& candidate, const BatchSummary& reference);

struct SweepCell {
  double rho1 = 0.0;
  double rho2 = 0.0;
  double eta1 = 0.0;
  double eta2 = 0.0;
};

std::vector<SweepCell> default_sweep_cells();

struct SweepResult {
  SweepCell cell;
  BatchResult batch;
};

std::vector<SweepResult> parameter_sweep(const ScenarioConfig& base,
                                         const std::vector<SweepCell>& cells,
                                         unsigned threads = 0);

}  // namespace mcdfp::engine
