#pragma once

#include <cstddef>
#include <vector>

#include "mcdfp/types.hpp"

// The target assignment game: a robot pays d[i][k] for target k only when
// some other robot also selects k.
namespace mcdfp::game {

inline constexpr double kTieTolerance = 1e-12;
inline constexpr std::size_t kMaxEnumerationSize = 8;

double utility(RobotId i, const ActionProfile& profile, const CostMatrix& costs);

// Expected utility of `candidate` against independent estimates of every
// other robot. Uses the product form d * (1 - prod_j (1 - f_j[k])).
double expected_utility(RobotId i, Action candidate, const PeerFrequencies& estimates,
                        const CostMatrix& costs);

// All minimizers of expected_utility, ascending by target.
std::vector<Action> best_response_set(RobotId i, const PeerFrequencies& estimates,
                                      const CostMatrix& costs);

// 1 iff robot i shares its target with another robot.
int potential_term(RobotId i, const ActionProfile& profile);
// Number of robots involved in a collision.
int potential(const ActionProfile& profile);

bool is_perfect_matching(const ActionProfile& profile, std::size_t num_targets);

// Brute-force unilateral deviation check.
bool is_pure_ne(const ActionProfile& profile, const CostMatrix& costs);

// Every pure NE in lexicographic order. Throws CapacityError for N > 8.
std::vector<ActionProfile> enumerate_pure_ne(const CostMatrix& costs);

double assignment_cost(const ActionProfile& profile, const CostMatrix& costs);

struct Assignment {
  ActionProfile profile;
  double cost = 0.0;
};

// Minimum-cost perfect matching (Hungarian algorithm, O(N^3)).
Assignment optimal_assignment(const CostMatrix& costs);

}  // namespace mcdfp::game
