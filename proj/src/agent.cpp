#include "mcdfp/agent.hpp"

#include <algorithm>

#include "mcdfp/game.hpp"

namespace mcdfp::agent {

void LearnParams::validate() const {
  if (!(rho1 > 0.0 && rho1 < 1.0)) throw UsageError("rho1 must lie in (0, 1)");
  if (!(rho2 > 0.0 && rho2 <= 1.0)) throw UsageError("rho2 must lie in (0, 1]");
  if (!(inertia > 0.0 && inertia < 1.0)) throw UsageError("inertia must lie in (0, 1)");
}

AgentState AgentState::initial(RobotId id, std::size_t num_robots, Vec2 position) {
  if (id >= num_robots) throw UsageError("robot id out of range");
  AgentState s;
  s.id = id;
  s.position = position;
  s.own_freq = Frequency::uniform(num_robots);
  for (RobotId j = 0; j < num_robots; ++j) {
    if (j == id) continue;
    s.est_freq.emplace(j, s.own_freq);
    s.shadow_freq.emplace(j, s.own_freq);
  }
  return s;
}

void update_own_frequency(AgentState& state, const LearnParams& params) {
  if (!state.action) throw UsageError("no action selected for this step");
  state.own_freq = state.own_freq.mixed_toward(*state.action, params.rho1);
}

Action select_action(AgentState& state, const CostMatrix& costs, const LearnParams& params,
                     Rng& rng) {
  if (state.action && rng.bernoulli(params.inertia)) return *state.action;

  const std::vector<Action> best = game::best_response_set(state.id, state.est_freq, costs);
  Action chosen;
  if (state.action && std::find(best.begin(), best.end(), *state.action) != best.end()) {
    chosen = *state.action;
  } else if (best.size() == 1) {
    chosen = best.front();
  } else {
    chosen = best[rng.index(best.size())];
  }
  state.action = chosen;
  return chosen;
}

void receive_frequency(AgentState& state, RobotId sender, const Frequency& payload,
                       const LearnParams& params) {
  auto it = state.est_freq.find(sender);
  if (it == state.est_freq.end()) throw UsageError("unknown sender id");
  it->second = it->second.mixed_toward(payload, params.rho2);
}

void record_ack(AgentState& state, RobotId receiver, const LearnParams& params) {
  auto it = state.shadow_freq.find(receiver);
  if (it == state.shadow_freq.end()) throw UsageError("unknown receiver id");
  it->second = it->second.mixed_toward(state.own_freq, params.rho2);
}

}  // namespace mcdfp::agent
