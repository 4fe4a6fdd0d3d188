#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "mcdfp/agent.hpp"
#include "mcdfp/types.hpp"

// Fading wireless layer: learning-aware weights, routing rates, Bernoulli
// link draws and the synchronous exchange round with ACKs.
namespace mcdfp::channel {

struct CommParams {
  double eta1 = 0.1;      // novelty threshold on ||f_i - a_i||
  double eta2 = 0.4;      // threshold on the receiver's estimation error
  double delta1 = 0.1;    // floor on the overlap metric; caps weights at 1/delta1
  double fading_r = 0.65; // path-loss exponent in exp(-r d^2)

  void validate() const;
};

struct LinkOutcome {
  RobotId sender = 0;
  RobotId receiver = 0;
  bool attempted = false;
  double rate = 0.0;          // routing rate beta
  double success_prob = 0.0;  // beta * exp(-r d^2)
  bool success = false;
};

enum class Protocol {
  voluntary,  // weights gate and size the routing rates
  fixed,      // every link attempted at rate 1/(N-1)
};

// Zero when the sender's frequency has settled on its action and the
// receiver's mirrored estimate is close, else 1 / max(delta1, ||f_i - f^i_j||).
double comm_weight(const Frequency& own_freq, Action action, const Frequency& est_freq_ij,
                   const Frequency& shadow_freq_ij, const CommParams& params);
double comm_weight(const agent::AgentState& state, RobotId peer, const CommParams& params);

// Maximizer of sum_j w_j log(beta_j) subject to sum beta <= 1: proportional
// allocation beta_j = w_j / sum w. All-zero weights give all-zero rates.
std::map<RobotId, double> allocate_rates(const std::map<RobotId, double>& weights);

double link_success_prob(double rate, Vec2 pos_i, Vec2 pos_j, const CommParams& params);

// Source of c_ij draws for attempted links.
class LinkSampler {
 public:
  virtual ~LinkSampler() = default;
  virtual bool sample(RobotId sender, RobotId receiver, double success_prob) = 0;
};

// Counter-based draws keyed by (seed, timestep, sender, receiver), so the
// result of a link never depends on the order links are processed in.
class FadingSampler final : public LinkSampler {
 public:
  FadingSampler(std::uint64_t seed, std::uint64_t timestep) : seed_(seed), timestep_(timestep) {}
  bool sample(RobotId sender, RobotId receiver, double success_prob) override;

 private:
  std::uint64_t seed_;
  std::uint64_t timestep_;
};

// Every attempted link succeeds.
class ForcedSuccessSampler final : public LinkSampler {
 public:
  bool sample(RobotId, RobotId, double) override { return true; }
};

using LinkOrder = std::vector<std::pair<RobotId, RobotId>>;

// One simultaneous exchange round. Rates are computed from the pre-round
// state, payloads are the senders' pre-round frequencies, and each success
// updates the receiver's estimate and the sender's ACK mirror. Outcomes are
// returned sorted by (sender, receiver).
std::vector<LinkOutcome> run_comm_round(std::vector<agent::AgentState>& states,
                                        const CommParams& params,
                                        const agent::LearnParams& learn, LinkSampler& sampler,
                                        Protocol protocol);

// Same, applying the links in the given order (must list every ordered pair once).
std::vector<LinkOutcome> run_comm_round(std::vector<agent::AgentState>& states,
                                        const CommParams& params,
                                        const agent::LearnParams& learn, LinkSampler& sampler,
                                        Protocol protocol, const LinkOrder& order);

}  // namespace mcdfp::channel
