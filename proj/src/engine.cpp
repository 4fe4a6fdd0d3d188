#include "mcdfp/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <thread>

#include "mcdfp/game.hpp"

namespace mcdfp::engine {

std::string to_string(Variant v) {
  switch (v) {
    case Variant::mcdfp: return "mcdfp";
    case Variant::cdfp: return "cdfp";
    case Variant::dfp: return "dfp";
  }
  return "unknown";
}

Variant parse_variant(const std::string& name) {
  if (name == "mcdfp") return Variant::mcdfp;
  if (name == "cdfp") return Variant::cdfp;
  if (name == "dfp") return Variant::dfp;
  throw UsageError("unknown variant '" + name + "' (expected mcdfp, cdfp or dfp)");
}

void ScenarioConfig::validate() const {
  if (robot_starts.empty()) throw UsageError("scenario needs at least one robot");
  if (robot_starts.size() != targets.size()) throw UsageError("robot and target counts differ");
  if (horizon < 1) throw UsageError("horizon must be at least 1");
  if (replications < 1) throw UsageError("replications must be at least 1");
  learn.validate();
  comm.validate();
  mobility.validate();
  for (const Vec2& p : robot_starts) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw UsageError("robot start is not finite");
  }
  // Rejects coincident start/target pairs (zero cost).
  (void)CostMatrix::from_positions(robot_starts, targets);
}

Simulation::Simulation(const ScenarioConfig& config, std::uint64_t run_seed)
    : config_(config),
      run_seed_(run_seed),
      costs_(CostMatrix::from_positions(config.robot_starts, config.targets)) {
  config_.validate();
  const std::size_t n = config_.num_robots();
  states_.reserve(n);
  rngs_.reserve(n);
  for (RobotId i = 0; i < n; ++i) {
    states_.push_back(agent::AgentState::initial(i, n, config_.robot_starts[i]));
    rngs_.emplace_back(derive_seed(run_seed_, {static_cast<std::uint64_t>(Stream::agent), i}));
  }
}

MetricsFrame Simulation::step() {
  const std::size_t n = states_.size();
  ++t_;

  for (RobotId i = 0; i < n; ++i) {
    agent::select_action(states_[i], costs_, config_.learn, rngs_[i]);
    agent::update_own_frequency(states_[i], config_.learn);
  }

  const auto protocol =
      config_.variant == Variant::dfp ? channel::Protocol::fixed : channel::Protocol::voluntary;
  channel::FadingSampler sampler(run_seed_, static_cast<std::uint64_t>(t_));
  last_links_ = channel::run_comm_round(states_, config_.comm, config_.learn, sampler, protocol);

  last_v_.assign(n, std::vector<double>(n, 0.0));
  if (config_.variant == Variant::mcdfp) {
    for (RobotId i = 0; i < n; ++i) {
      for (RobotId j = 0; j < n; ++j) {
        if (i != j) last_v_[i][j] = channel::comm_weight(states_[i], j, config_.comm);
      }
    }
  }

  std::vector<Vec2> next(n);
  for (RobotId i = 0; i < n; ++i) {
    const auto& s = states_[i];
    std::vector<mobility::Pull> pulls;
    for (const auto& [j, est] : s.est_freq) {
      if (last_v_[i][j] > 0.0) {
        pulls.push_back({mobility::estimate_final_position(est, config_.targets), last_v_[i][j]});
      }
    }
    const Vec2 heading = mobility::select_direction(config_.targets[s.action->target], pulls);
    next[i] = mobility::step_position(s.position, heading, config_.mobility);
  }
  for (RobotId i = 0; i < n; ++i) states_[i].position = next[i];

  MetricsFrame frame;
  frame.t = t_;
  for (const auto& link : last_links_) {
    frame.attempts += link.attempted ? 1 : 0;
    frame.successes += link.success ? 1 : 0;
  }
  const std::size_t links = n * (n - 1);
  frame.attempts_per_link = links ? static_cast<double>(frame.attempts) / links : 0.0;
  frame.success_ratio =
      frame.attempts ? static_cast<double>(frame.successes) / frame.attempts : 0.0;
  frame.est_error = estimation_error(states_);
  frame.ne_distance = std::numeric_limits<double>::quiet_NaN();
  for (const auto& s : states_) {
    frame.actions.push_back(*s.action);
    frame.positions.push_back(s.position);
  }
  return frame;
}

double estimation_error(const std::vector<agent::AgentState>& states) {
  double total = 0.0;
  for (const auto& owner : states) {
    for (const auto& other : states) {
      if (other.id != owner.id) total += distance(owner.own_freq, other.est_freq.at(owner.id));
    }
  }
  return total;
}

std::uint64_t replication_seed(std::uint64_t seed, int index) {
  return seed ^ static_cast<std::uint64_t>(index);
}

RunResult run_replication(const ScenarioConfig& config, int index) {
  RunResult result;
  result.seed = replication_seed(config.seed, index);
  result.start_positions = config.robot_starts;
  Simulation sim(config, result.seed);

  std::vector<std::vector<Frequency>> own_history;
  own_history.reserve(config.horizon);
  for (int t = 1; t <= config.horizon; ++t) {
    result.frames.push_back(sim.step());
    std::vector<Frequency> own;
    for (const auto& s : sim.states()) own.push_back(s.own_freq);
    own_history.push_back(std::move(own));
    result.total_attempts += result.frames.back().attempts;
  }

  const ActionProfile& final_actions = result.frames.back().actions;
  if (game::is_pure_ne(final_actions, sim.costs())) {
    std::size_t first = result.frames.size() - 1;
    while (first > 0 && result.frames[first - 1].actions == final_actions) --first;
    result.converged_at = result.frames[first].t;
    result.ne_profile = final_actions;
    for (std::size_t f = 0; f < result.frames.size(); ++f) {
      MetricsFrame& frame = result.frames[f];
      frame.converged = f >= first;
      frame.ne_distance = 0.0;
      for (std::size_t i = 0; i < final_actions.size(); ++i) {
        frame.ne_distance += distance(own_history[f][i], final_actions[i]);
      }
    }
  }

  result.covered = mobility::coverage_achieved(result.frames.back().positions, final_actions,
                                               config.targets, config.mobility.coverage_tol);
  result.final_cost = game::assignment_cost(final_actions, sim.costs());
  result.optimal_cost = game::optimal_assignment(sim.costs()).cost;
  return result;
}

namespace {

std::optional<double> mean_of(const std::vector<double>& xs) {
  if (xs.empty()) return std::nullopt;
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

}  // namespace

BatchSummary summarize(const std::vector<RunResult>& runs, int horizon) {
  if (runs.empty()) throw UsageError("nothing to summarize");
  BatchSummary s;
  s.replications = static_cast<int>(runs.size());
  const auto steps = static_cast<std::size_t>(horizon);
  s.mean_ne_distance.assign(steps, 0.0);
  s.mean_est_error.assign(steps, 0.0);
  s.mean_attempts_per_link.assign(steps, 0.0);
  s.mean_success_ratio.assign(steps, 0.0);

  std::vector<double> conv_times, final_costs, gaps;
  for (const RunResult& r : runs) {
    if (r.frames.size() != steps) throw UsageError("run length does not match the horizon");
    s.covered_runs += r.covered ? 1 : 0;
    s.total_attempts += r.total_attempts;
    s.optimal_cost = r.optimal_cost;
    if (r.converged_at) {
      ++s.converged_runs;
      conv_times.push_back(*r.converged_at);
      final_costs.push_back(r.final_cost);
      gaps.push_back(r.final_cost - r.optimal_cost);
    }
    for (std::size_t t = 0; t < steps; ++t) {
      const MetricsFrame& f = r.frames[t];
      s.mean_est_error[t] += f.est_error;
      s.mean_attempts_per_link[t] += f.attempts_per_link;
      s.mean_success_ratio[t] += f.success_ratio;
      if (r.converged_at) s.mean_ne_distance[t] += f.ne_distance;
    }
  }
  const double reps = static_cast<double>(s.replications);
  for (std::size_t t = 0; t < steps; ++t) {
    s.mean_est_error[t] /= reps;
    s.mean_attempts_per_link[t] /= reps;
    s.mean_success_ratio[t] /= reps;
    s.mean_ne_distance[t] = s.converged_runs
                                ? s.mean_ne_distance[t] / s.converged_runs
                                : std::numeric_limits<double>::quiet_NaN();
  }
  s.coverage_rate = s.covered_runs / reps;
  s.convergence_rate = s.converged_runs / reps;
  s.mean_converged_at = mean_of(conv_times);
  s.mean_total_attempts = static_cast<double>(s.total_attempts) / reps;
  s.mean_final_cost = mean_of(final_costs);
  s.mean_cost_gap = mean_of(gaps);
  return s;
}

BatchResult run_batch(const ScenarioConfig& config, unsigned threads) {
  config.validate();
  const auto reps = static_cast<std::size_t>(config.replications);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, reps));

  BatchResult batch;
  batch.runs.resize(reps);
  if (threads <= 1) {
    for (std::size_t r = 0; r < reps; ++r) batch.runs[r] = run_replication(config, static_cast<int>(r));
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t r = next++; r < reps; r = next++) {
            batch.runs[r] = run_replication(config, static_cast<int>(r));
          }
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    pool.clear();
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }
  batch.summary = summarize(batch.runs, config.horizon);
  return batch;
}

double attempts_ratio(const BatchSummary& candidate, const BatchSummary& reference) {
  if (reference.total_attempts == 0) return std::numeric_limits<double>::infinity();
  return static_cast<double>(candidate.total_attempts) /
         static_cast<double>(reference.total_attempts);
}

std::vector<SweepCell> default_sweep_cells() {
  return {{0.5, 1.0, 0.1, 0.4}, {0.1, 0.2, 0.1, 0.4}, {0.5, 1.0, 0.2, 1.5}, {0.1, 0.2, 0.2, 1.5}};
}

std::vector<SweepResult> parameter_sweep(const ScenarioConfig& base,
                                         const std::vector<SweepCell>& cells, unsigned threads) {
  if (cells.empty()) throw UsageError("parameter sweep needs at least one cell");
  std::vector<SweepResult> out;
  for (const SweepCell& cell : cells) {
    ScenarioConfig cfg = base;
    cfg.learn.rho1 = cell.rho1;
    cfg.learn.rho2 = cell.rho2;
    cfg.comm.eta1 = cell.eta1;
    cfg.comm.eta2 = cell.eta2;
    out.push_back({cell, run_batch(cfg, threads)});
  }
  return out;
}

}  // namespace mcdfp::engine
