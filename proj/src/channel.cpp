#include "mcdfp/channel.hpp"

#include <algorithm>
#include <cmath>

#include "mcdfp/rng.hpp"

namespace mcdfp::channel {

void CommParams::validate() const {
  if (!(eta1 >= 0.0)) throw UsageError("eta1 must be nonnegative");
  if (!(eta2 >= 0.0)) throw UsageError("eta2 must be nonnegative");
  if (!(delta1 > 0.0)) throw UsageError("delta1 must be positive");
  if (!(fading_r > 0.0)) throw UsageError("fading_r must be positive");
}

double comm_weight(const Frequency& own_freq, Action action, const Frequency& est_freq_ij,
                   const Frequency& shadow_freq_ij, const CommParams& params) {
  const double novelty = distance(own_freq, action);
  const double receiver_error = distance(own_freq, shadow_freq_ij);
  if (novelty <= params.eta1 && receiver_error <= params.eta2) return 0.0;
  const double overlap = std::max(params.delta1, distance(own_freq, est_freq_ij));
  return 1.0 / overlap;
}

double comm_weight(const agent::AgentState& state, RobotId peer, const CommParams& params) {
  if (!state.action) throw UsageError("comm_weight needs a selected action");
  const auto est = state.est_freq.find(peer);
  const auto shadow = state.shadow_freq.find(peer);
  if (est == state.est_freq.end() || shadow == state.shadow_freq.end()) {
    throw UsageError("unknown peer id");
  }
  return comm_weight(state.own_freq, *state.action, est->second, shadow->second, params);
}

std::map<RobotId, double> allocate_rates(const std::map<RobotId, double>& weights) {
  double total = 0.0;
  for (const auto& [j, w] : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw UsageError("weights must be finite and nonnegative");
    total += w;
  }
  std::map<RobotId, double> rates;
  for (const auto& [j, w] : weights) rates[j] = total > 0.0 ? w / total : 0.0;
  return rates;
}

double link_success_prob(double rate, Vec2 pos_i, Vec2 pos_j, const CommParams& params) {
  if (!(rate >= 0.0 && rate <= 1.0)) throw UsageError("rate must lie in [0, 1]");
  return rate * std::exp(-params.fading_r * squared_distance(pos_i, pos_j));
}

bool FadingSampler::sample(RobotId sender, RobotId receiver, double success_prob) {
  const std::uint64_t bits = derive_seed(
      seed_, {static_cast<std::uint64_t>(Stream::link), timestep_, sender, receiver});
  return unit_interval(mix64(bits)) < success_prob;
}

namespace {

LinkOrder canonical_order(std::size_t n) {
  LinkOrder order;
  order.reserve(n * (n - 1));
  for (RobotId i = 0; i < n; ++i) {
    for (RobotId j = 0; j < n; ++j) {
      if (i != j) order.emplace_back(i, j);
    }
  }
  return order;
}

}  // namespace

std::vector<LinkOutcome> run_comm_round(std::vector<agent::AgentState>& states,
                                        const CommParams& params,
                                        const agent::LearnParams& learn, LinkSampler& sampler,
                                        Protocol protocol) {
  return run_comm_round(states, params, learn, sampler, protocol, canonical_order(states.size()));
}

std::vector<LinkOutcome> run_comm_round(std::vector<agent::AgentState>& states,
                                        const CommParams& params,
                                        const agent::LearnParams& learn, LinkSampler& sampler,
                                        Protocol protocol, const LinkOrder& order) {
  const std::size_t n = states.size();
  if (order.size() != n * (n - 1)) throw UsageError("link order must list every ordered pair");
  if (n < 2) return {};

  // Rates from the pre-round state; outcome[i * n + j] holds link i -> j.
  std::vector<LinkOutcome> outcome(n * n);
  for (RobotId i = 0; i < n; ++i) {
    std::map<RobotId, double> rates;
    if (protocol == Protocol::fixed) {
      for (RobotId j = 0; j < n; ++j) {
        if (j != i) rates[j] = 1.0 / static_cast<double>(n - 1);
      }
    } else {
      std::map<RobotId, double> weights;
      for (RobotId j = 0; j < n; ++j) {
        if (j != i) weights[j] = comm_weight(states[i], j, params);
      }
      rates = allocate_rates(weights);
    }
    for (const auto& [j, rate] : rates) {
      LinkOutcome& link = outcome[i * n + j];
      link.sender = i;
      link.receiver = j;
      link.rate = rate;
      link.attempted = protocol == Protocol::fixed || rate > 0.0;
      link.success_prob =
          link.attempted ? link_success_prob(rate, states[i].position, states[j].position, params)
                         : 0.0;
    }
  }

  std::vector<Frequency> payload;
  payload.reserve(n);
  for (const auto& s : states) payload.push_back(s.own_freq);

  std::vector<bool> seen(n * n, false);
  for (const auto& [i, j] : order) {
    if (i >= n || j >= n || i == j || seen[i * n + j]) {
      throw UsageError("link order must list every ordered pair once");
    }
    seen[i * n + j] = true;
    LinkOutcome& link = outcome[i * n + j];
    if (!link.attempted) continue;
    link.success = sampler.sample(i, j, link.success_prob);
    if (link.success) {
      agent::receive_frequency(states[j], i, payload[i], learn);
      agent::record_ack(states[i], j, learn);
    }
  }

  std::vector<LinkOutcome> out;
  out.reserve(n * (n - 1));
  for (RobotId i = 0; i < n; ++i) {
    for (RobotId j = 0; j < n; ++j) {
      if (i != j) out.push_back(outcome[i * n + j]);
    }
  }
  return out;
}

}  // namespace mcdfp::channel
