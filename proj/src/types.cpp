#include "mcdfp/types.hpp"

#include <numeric>
#include <sstream>

namespace mcdfp {

bool on_simplex(const std::vector<double>& p, double tol) {
  if (p.empty()) return false;
  double sum = 0.0;
  for (double v : p) {
    if (!(v >= -tol && v <= 1.0 + tol)) return false;
    sum += v;
  }
  return std::abs(sum - 1.0) <= tol;
}

Frequency::Frequency(std::vector<double> p) : p_(std::move(p)) {
  if (!on_simplex(p_)) throw UsageError("frequency is not a point of the simplex");
}

Frequency Frequency::uniform(std::size_t n) {
  if (n == 0) throw UsageError("frequency needs at least one target");
  return Frequency(std::vector<double>(n, 1.0 / static_cast<double>(n)), Unchecked{});
}

Frequency Frequency::basis(std::size_t n, std::size_t k) {
  if (k >= n) throw UsageError("basis index out of range");
  std::vector<double> p(n, 0.0);
  p[k] = 1.0;
  return Frequency(std::move(p), Unchecked{});
}

Frequency Frequency::mixed_toward(const Frequency& other, double weight) const {
  if (other.size() != size()) throw UsageError("frequency dimensions differ");
  std::vector<double> out(size());
  for (std::size_t k = 0; k < size(); ++k) {
    out[k] = (1.0 - weight) * p_[k] + weight * other.p_[k];
  }
  return Frequency(std::move(out), Unchecked{});
}

Frequency Frequency::mixed_toward(Action a, double weight) const {
  if (a.target >= size()) throw UsageError("action index out of range");
  std::vector<double> out(size());
  for (std::size_t k = 0; k < size(); ++k) {
    out[k] = (1.0 - weight) * p_[k] + (k == a.target ? weight : 0.0);
  }
  return Frequency(std::move(out), Unchecked{});
}

double distance(const Frequency& a, const Frequency& b) {
  if (a.size() != b.size()) throw UsageError("frequency dimensions differ");
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double d = a[k] - b[k];
    s += d * d;
  }
  return std::sqrt(s);
}

double distance(const Frequency& f, Action a) {
  if (a.target >= f.size()) throw UsageError("action index out of range");
  double s = 0.0;
  for (std::size_t k = 0; k < f.size(); ++k) {
    const double d = f[k] - (k == a.target ? 1.0 : 0.0);
    s += d * d;
  }
  return std::sqrt(s);
}

CostMatrix::CostMatrix(std::size_t n, std::vector<double> values)
    : n_(n), d_(std::move(values)) {
  if (n_ == 0 || d_.size() != n_ * n_) throw UsageError("cost matrix must be square and non-empty");
  for (double v : d_) {
    if (!(v > 0.0) || !std::isfinite(v)) throw UsageError("costs must be finite and strictly positive");
  }
}

CostMatrix::CostMatrix(const std::vector<std::vector<double>>& rows) {
  const std::size_t n = rows.size();
  std::vector<double> flat;
  flat.reserve(n * n);
  for (const auto& row : rows) {
    if (row.size() != n) throw UsageError("cost matrix must be square");
    flat.insert(flat.end(), row.begin(), row.end());
  }
  *this = CostMatrix(n, std::move(flat));
}

CostMatrix CostMatrix::from_positions(const std::vector<Vec2>& robots,
                                      const std::vector<Vec2>& targets) {
  if (robots.size() != targets.size()) throw UsageError("robot and target counts differ");
  const std::size_t n = robots.size();
  std::vector<double> d(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) d[i * n + k] = squared_distance(robots[i], targets[k]);
  }
  return CostMatrix(n, std::move(d));
}

double CostMatrix::at(std::size_t robot, std::size_t target) const {
  if (robot >= n_ || target >= n_) throw UsageError("cost index out of range");
  return (*this)(robot, target);
}

std::string to_string(const ActionProfile& profile) {
  std::ostringstream os;
  for (std::size_t i = 0; i < profile.size(); ++i) {
    if (i) os << ';';
    os << profile[i].target;
  }
  return os.str();
}

}  // namespace mcdfp
