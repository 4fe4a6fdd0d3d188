#pragma once

#include <optional>

#include "mcdfp/rng.hpp"
#include "mcdfp/types.hpp"

namespace mcdfp::agent {

struct LearnParams {
  double rho1 = 0.4;     // fading memory of the empirical frequency, (0, 1)
  double rho2 = 1.0;     // estimate learning rate, (0, 1]
  double inertia = 0.05; // probability of repeating the previous action, (0, 1)

  void validate() const;
};

struct AgentState {
  RobotId id = 0;
  Vec2 position;
  std::optional<Action> action;  // empty before the first decision epoch
  Frequency own_freq;
  PeerFrequencies est_freq;     // this robot's estimate of each peer's frequency
  PeerFrequencies shadow_freq;  // mirror of each peer's estimate of this robot

  // Uniform own frequency and uniform priors about/for every peer.
  static AgentState initial(RobotId id, std::size_t num_robots, Vec2 position);

  std::size_t num_targets() const { return own_freq.size(); }
};

// own_freq <- (1 - rho1) own_freq + rho1 e_action.
void update_own_frequency(AgentState& state, const LearnParams& params);

// Best response with inertia. Without a previous action the robot best
// responds to its estimates with no inertia draw. Ties keep the previous
// action when it is a minimizer, otherwise one minimizer is drawn uniformly.
// Stores and returns the selection.
Action select_action(AgentState& state, const CostMatrix& costs, const LearnParams& params,
                     Rng& rng);

// est_freq[sender] <- (1 - rho2) est_freq[sender] + rho2 payload.
void receive_frequency(AgentState& state, RobotId sender, const Frequency& payload,
                       const LearnParams& params);

// Called on a successful send to `receiver`: apply the receiver's update rule
// to the local mirror of its estimate, using own_freq as the payload.
void record_ack(AgentState& state, RobotId receiver, const LearnParams& params);

}  // namespace mcdfp::agent
