#pragma once

#include <cmath>
#include <compare>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace mcdfp {

using RobotId = std::size_t;

// Caller passed an argument outside the operation's domain.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Request exceeds a hard size limit (e.g. brute-force enumeration).
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
  friend bool operator==(Vec2, Vec2) = default;

  double squared_norm() const { return x * x + y * y; }
  double norm() const { return std::hypot(x, y); }
};

inline double squared_distance(Vec2 a, Vec2 b) { return (a - b).squared_norm(); }
inline double distance(Vec2 a, Vec2 b) { return (a - b).norm(); }

// A robot's target selection: the canonical basis vector e_target.
struct Action {
  std::size_t target = 0;
  friend auto operator<=>(const Action&, const Action&) = default;
};

using ActionProfile = std::vector<Action>;

// A point of the probability simplex over N targets.
class Frequency {
 public:
  static constexpr double kSimplexTol = 1e-9;

  Frequency() = default;
  // Throws UsageError if `p` is not on the simplex.
  explicit Frequency(std::vector<double> p);

  static Frequency uniform(std::size_t n);
  static Frequency basis(std::size_t n, std::size_t k);

  std::size_t size() const { return p_.size(); }
  double operator[](std::size_t k) const { return p_[k]; }
  const std::vector<double>& values() const { return p_; }

  // (1 - weight) * this + weight * other. Stays on the simplex for weight in [0, 1].
  Frequency mixed_toward(const Frequency& other, double weight) const;
  Frequency mixed_toward(Action a, double weight) const;

  friend bool operator==(const Frequency&, const Frequency&) = default;

 private:
  struct Unchecked {};
  Frequency(std::vector<double> p, Unchecked) : p_(std::move(p)) {}

  std::vector<double> p_;
};

bool on_simplex(const std::vector<double>& p, double tol = Frequency::kSimplexTol);

// Euclidean distance between two frequency vectors.
double distance(const Frequency& a, const Frequency& b);
// ||f - e_a||.
double distance(const Frequency& f, Action a);

// Estimates held about other robots, keyed by robot id (owner excluded).
using PeerFrequencies = std::map<RobotId, Frequency>;

// d[i][k] > 0: robot i's cost to cover target k.
class CostMatrix {
 public:
  CostMatrix() = default;
  // Row-major n*n values; throws UsageError unless square and strictly positive.
  CostMatrix(std::size_t n, std::vector<double> values);
  explicit CostMatrix(const std::vector<std::vector<double>>& rows);

  // Squared Euclidean distances from robot starts to targets.
  static CostMatrix from_positions(const std::vector<Vec2>& robots,
                                   const std::vector<Vec2>& targets);

  std::size_t size() const { return n_; }
  double operator()(std::size_t robot, std::size_t target) const {
    return d_[robot * n_ + target];
  }
  // Bounds-checked access.
  double at(std::size_t robot, std::size_t target) const;

 private:
  std::size_t n_ = 0;
  std::vector<double> d_;
};

std::string to_string(const ActionProfile& profile);

}  // namespace mcdfp
