#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "mcdfp/engine.hpp"

namespace mcdfp::io {

// Output could not be written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::string_view kMetricsHeader =
    "replication,t,variant,ne_distance,est_error,attempts,successes,attempts_per_link,"
    "success_ratio,converged,actions,positions";
inline constexpr std::string_view kTrajectoriesHeader = "replication,t,robot,x,y,target";

// Shortest round-trip form, at most 17 significant digits, '.' decimal
// point regardless of locale; "nan" for non-finite values.
std::string format_real(double v);

void write_metrics_csv(std::ostream& out, const std::vector<engine::RunResult>& runs,
                       engine::Variant variant);

// Includes a t = 0 row per robot with the start position; target is empty there.
void write_trajectories_csv(std::ostream& out, const std::vector<engine::RunResult>& runs);

struct MetricsRow {
  int replication = 0;
  int t = 0;
  std::string variant;
  double ne_distance = 0.0;
  double est_error = 0.0;
  int attempts = 0;
  int successes = 0;
  double attempts_per_link = 0.0;
  double success_ratio = 0.0;
  bool converged = false;
  std::vector<std::size_t> actions;
  std::vector<Vec2> positions;
};

// Parses a metrics.csv; throws IoError on a header mismatch or bad row.
std::vector<MetricsRow> read_metrics_csv(std::istream& in);

// summary.json content for one batch.
std::string summary_json(const engine::BatchSummary& summary, const engine::ScenarioConfig& config);

}  // namespace mcdfp::io
