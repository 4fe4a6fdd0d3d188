#include "mcdfp/game.hpp"

#include <algorithm>
#include <limits>

namespace mcdfp::game {
namespace {

void check_profile(const ActionProfile& profile, std::size_t n) {
  if (profile.size() != n) throw UsageError("profile length must equal the number of robots");
  for (const Action& a : profile) {
    if (a.target >= n) throw UsageError("action index out of range");
  }
}

bool covered_by_others(RobotId i, std::size_t target, const ActionProfile& profile) {
  for (std::size_t j = 0; j < profile.size(); ++j) {
    if (j != i && profile[j].target == target) return true;
  }
  return false;
}

}  // namespace

double utility(RobotId i, const ActionProfile& profile, const CostMatrix& costs) {
  check_profile(profile, costs.size());
  if (i >= costs.size()) throw UsageError("robot index out of range");
  const std::size_t k = profile[i].target;
  return covered_by_others(i, k, profile) ? costs(i, k) : 0.0;
}

double expected_utility(RobotId i, Action candidate, const PeerFrequencies& estimates,
                        const CostMatrix& costs) {
  const std::size_t n = costs.size();
  if (i >= n || candidate.target >= n) throw UsageError("index out of range");
  if (estimates.size() != n - 1 || estimates.contains(i)) {
    throw UsageError("estimates must cover exactly the other N-1 robots");
  }
  double none_selects = 1.0;
  for (const auto& [j, f] : estimates) {
    if (j >= n || f.size() != n) throw UsageError("estimate does not match the game size");
    none_selects *= 1.0 - f[candidate.target];
  }
  return costs(i, candidate.target) * (1.0 - none_selects);
}

std::vector<Action> best_response_set(RobotId i, const PeerFrequencies& estimates,
                                      const CostMatrix& costs) {
  const std::size_t n = costs.size();
  std::vector<double> values(n);
  for (std::size_t k = 0; k < n; ++k) values[k] = expected_utility(i, Action{k}, estimates, costs);
  const double best = *std::min_element(values.begin(), values.end());
  std::vector<Action> out;
  for (std::size_t k = 0; k < n; ++k) {
    if (values[k] - best <= kTieTolerance) out.push_back(Action{k});
  }
  return out;
}

int potential_term(RobotId i, const ActionProfile& profile) {
  if (i >= profile.size()) throw UsageError("robot index out of range");
  return covered_by_others(i, profile[i].target, profile) ? 1 : 0;
}

int potential(const ActionProfile& profile) {
  int total = 0;
  for (std::size_t i = 0; i < profile.size(); ++i) total += potential_term(i, profile);
  return total;
}

bool is_perfect_matching(const ActionProfile& profile, std::size_t num_targets) {
  if (profile.size() != num_targets) return false;
  std::vector<bool> seen(num_targets, false);
  for (const Action& a : profile) {
    if (a.target >= num_targets || seen[a.target]) return false;
    seen[a.target] = true;
  }
  return true;
}

bool is_pure_ne(const ActionProfile& profile, const CostMatrix& costs) {
  check_profile(profile, costs.size());
  ActionProfile deviated = profile;
  for (std::size_t i = 0; i < profile.size(); ++i) {
    const double current = utility(i, profile, costs);
    for (std::size_t k = 0; k < costs.size(); ++k) {
      if (k == profile[i].target) continue;
      deviated[i] = Action{k};
      const bool profitable = utility(i, deviated, costs) < current;
      deviated[i] = profile[i];
      if (profitable) return false;
    }
  }
  return true;
}

std::vector<ActionProfile> enumerate_pure_ne(const CostMatrix& costs) {
  const std::size_t n = costs.size();
  if (n > kMaxEnumerationSize) {
    throw CapacityError("pure NE enumeration is limited to N <= 8");
  }
  std::vector<ActionProfile> out;
  ActionProfile profile(n, Action{0});
  // Odometer over [0, n)^n; the last robot is the fastest digit, which
  // yields lexicographic order.
  while (true) {
    if (is_pure_ne(profile, costs)) out.push_back(profile);
    std::size_t pos = n;
    while (pos > 0 && ++profile[pos - 1].target == n) {
      profile[pos - 1].target = 0;
      --pos;
    }
    if (pos == 0) return out;
  }
}

double assignment_cost(const ActionProfile& profile, const CostMatrix& costs) {
  check_profile(profile, costs.size());
  double total = 0.0;
  for (std::size_t i = 0; i < profile.size(); ++i) total += costs(i, profile[i].target);
  return total;
}

Assignment optimal_assignment(const CostMatrix& costs) {
  const std::size_t n = costs.size();
  constexpr double kInf = std::numeric_limits<double>::infinity();
  // Potentials over rows (u) and columns (v); match[col] = row, 1-based with
  // column 0 as the virtual root.
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<std::size_t> match(n + 1, 0), way(n + 1, 0);
  for (std::size_t row = 1; row <= n; ++row) {
    match[0] = row;
    std::size_t col0 = 0;
    std::vector<double> minv(n + 1, kInf);
    std::vector<bool> used(n + 1, false);
    do {
      used[col0] = true;
      const std::size_t r = match[col0];
      double delta = kInf;
      std::size_t col1 = 0;
      for (std::size_t c = 1; c <= n; ++c) {
        if (used[c]) continue;
        const double reduced = costs(r - 1, c - 1) - u[r] - v[c];
        if (reduced < minv[c]) {
          minv[c] = reduced;
          way[c] = col0;
        }
        if (minv[c] < delta) {
          delta = minv[c];
          col1 = c;
        }
      }
      for (std::size_t c = 0; c <= n; ++c) {
        if (used[c]) {
          u[match[c]] += delta;
          v[c] -= delta;
        } else {
          minv[c] -= delta;
        }
      }
      col0 = col1;
    } while (match[col0] != 0);
    do {
      const std::size_t col1 = way[col0];
      match[col0] = match[col1];
      col0 = col1;
    } while (col0 != 0);
  }
  Assignment result;
  result.profile.assign(n, Action{0});
  for (std::size_t c = 1; c <= n; ++c) result.profile[match[c] - 1] = Action{c - 1};
  result.cost = assignment_cost(result.profile, costs);
  return result;
}

}  // namespace mcdfp::game
