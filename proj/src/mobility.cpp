#include "mcdfp/mobility.hpp"

#include <cmath>

#include "mcdfp/game.hpp"

namespace mcdfp::mobility {

void MobilityParams::validate() const {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw UsageError("alpha must lie in (0, 1]");
  if (!(dt > 0.0)) throw UsageError("dt must be positive");
  if (!(coverage_tol > 0.0)) throw UsageError("coverage_tol must be positive");
}

Vec2 estimate_final_position(const Frequency& est_freq, const TargetMap& targets) {
  if (est_freq.size() != targets.size()) throw UsageError("frequency and target counts differ");
  Vec2 out;
  for (std::size_t k = 0; k < targets.size(); ++k) out = out + est_freq[k] * targets[k];
  return out;
}

Vec2 select_direction(Vec2 own_target, std::span<const Pull> pulls) {
  Vec2 sum = own_target;
  double total = 1.0;
  for (const Pull& p : pulls) {
    if (!(p.weight >= 0.0)) throw UsageError("mobility weights must be nonnegative");
    sum = sum + p.weight * p.point;
    total += p.weight;
  }
  return (1.0 / total) * sum;
}

double direction_objective(Vec2 x, Vec2 own_target, std::span<const Pull> pulls) {
  double value = squared_distance(x, own_target);
  for (const Pull& p : pulls) value += p.weight * squared_distance(x, p.point);
  return value;
}

Vec2 direction_gradient(Vec2 x, Vec2 own_target, std::span<const Pull> pulls) {
  Vec2 g = 2.0 * (x - own_target);
  for (const Pull& p : pulls) g = g + (2.0 * p.weight) * (x - p.point);
  return g;
}

Vec2 velocity(Vec2 position, Vec2 heading, const MobilityParams& params) {
  if (params.mode == StepMode::clamp) {
    const Vec2 gap = heading - position;
    const double len = gap.norm();
    if (len <= params.alpha) return (1.0 / params.dt) * gap;
    return (params.alpha / (len * params.dt)) * gap;
  }
  return (params.alpha / params.dt) * (heading - position);
}

Vec2 step_position(Vec2 position, Vec2 heading, const MobilityParams& params) {
  if (params.mode == StepMode::clamp) return position + params.dt * velocity(position, heading, params);
  // dt cancels in the integration; skip it to keep the update exact.
  return position + params.alpha * (heading - position);
}

bool coverage_achieved(std::span<const Vec2> final_positions, const ActionProfile& final_actions,
                       const TargetMap& targets, double tol) {
  if (final_positions.size() != final_actions.size()) return false;
  if (!game::is_perfect_matching(final_actions, targets.size())) return false;
  for (std::size_t i = 0; i < final_positions.size(); ++i) {
    if (distance(final_positions[i], targets[final_actions[i].target]) > tol) return false;
  }
  return true;
}

}  // namespace mcdfp::mobility
