#pragma once

#include <span>
#include <vector>

#include "mcdfp/types.hpp"

namespace mcdfp::mobility {

using TargetMap = std::vector<Vec2>;

enum class StepMode {
  fraction,  // move alpha of the remaining vector to the heading point
  clamp,     // move straight toward it, at most alpha meters per step
};

struct MobilityParams {
  double alpha = 0.1;
  double dt = 1.0;
  double coverage_tol = 0.1;
  StepMode mode = StepMode::fraction;

  void validate() const;
};

// Frequency-weighted centroid of the target locations.
Vec2 estimate_final_position(const Frequency& est_freq, const TargetMap& targets);

struct Pull {
  Vec2 point;
  double weight = 0.0;
};

// Minimizer of ||x - own_target||^2 + sum_j v_j ||x - p_j||^2, i.e. the
// weighted average of the own target (weight 1) and the pull points.
Vec2 select_direction(Vec2 own_target, std::span<const Pull> pulls);

// Value and gradient of the objective above, for checking minimizers.
double direction_objective(Vec2 x, Vec2 own_target, std::span<const Pull> pulls);
Vec2 direction_gradient(Vec2 x, Vec2 own_target, std::span<const Pull> pulls);

Vec2 velocity(Vec2 position, Vec2 heading, const MobilityParams& params);
Vec2 step_position(Vec2 position, Vec2 heading, const MobilityParams& params);

// Perfect matching and every robot within tol of its selected target.
bool coverage_achieved(std::span<const Vec2> final_positions, const ActionProfile& final_actions,
                       const TargetMap& targets, double tol);

}  // namespace mcdfp::mobility
