#include "mcdfp/metrics_io.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace mcdfp::io {
namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(std::move(cur));
  return out;
}

double parse_real(const std::string& s) {
  if (s == "nan") return std::nan("");
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw IoError("bad real field '" + s + "'");
  return v;
}

int parse_int(const std::string& s) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw IoError("bad integer field '" + s + "'");
  return v;
}

nlohmann::json optional_number(const std::optional<double>& v) {
  if (!v || !std::isfinite(*v)) return nullptr;
  return *v;
}

nlohmann::json series(const std::vector<double>& xs) {
  auto out = nlohmann::json::array();
  for (double x : xs) {
    if (std::isfinite(x)) {
      out.push_back(x);
    } else {
      out.push_back(nullptr);
    }
  }
  return out;
}

}  // namespace

std::string format_real(double v) {
  if (!std::isfinite(v)) return "nan";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

void write_metrics_csv(std::ostream& out, const std::vector<engine::RunResult>& runs,
                       engine::Variant variant) {
  const std::string name = engine::to_string(variant);
  out << kMetricsHeader << '\n';
  for (std::size_t r = 0; r < runs.size(); ++r) {
    for (const engine::MetricsFrame& f : runs[r].frames) {
      out << r << ',' << f.t << ',' << name << ',' << format_real(f.ne_distance) << ','
          << format_real(f.est_error) << ',' << f.attempts << ',' << f.successes << ','
          << format_real(f.attempts_per_link) << ',' << format_real(f.success_ratio) << ','
          << (f.converged ? 1 : 0) << ',' << to_string(f.actions) << ',';
      for (std::size_t i = 0; i < f.positions.size(); ++i) {
        if (i) out << ';';
        out << format_real(f.positions[i].x) << ':' << format_real(f.positions[i].y);
      }
      out << '\n';
    }
  }
  if (!out) throw IoError("failed writing metrics CSV");
}

void write_trajectories_csv(std::ostream& out, const std::vector<engine::RunResult>& runs) {
  out << kTrajectoriesHeader << '\n';
  for (std::size_t r = 0; r < runs.size(); ++r) {
    const auto& run = runs[r];
    for (std::size_t i = 0; i < run.start_positions.size(); ++i) {
      out << r << ",0," << i << ',' << format_real(run.start_positions[i].x) << ','
          << format_real(run.start_positions[i].y) << ",\n";
    }
    for (const engine::MetricsFrame& f : run.frames) {
      for (std::size_t i = 0; i < f.positions.size(); ++i) {
        out << r << ',' << f.t << ',' << i << ',' << format_real(f.positions[i].x) << ','
            << format_real(f.positions[i].y) << ',' << f.actions[i].target << '\n';
      }
    }
  }
  if (!out) throw IoError("failed writing trajectories CSV");
}

std::vector<MetricsRow> read_metrics_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kMetricsHeader) throw IoError("metrics CSV header mismatch");
  std::vector<MetricsRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cols = split(line, ',');
    if (cols.size() != 12) throw IoError("metrics CSV row has wrong column count");
    MetricsRow row;
    row.replication = parse_int(cols[0]);
    row.t = parse_int(cols[1]);
    row.variant = cols[2];
    row.ne_distance = parse_real(cols[3]);
    row.est_error = parse_real(cols[4]);
    row.attempts = parse_int(cols[5]);
    row.successes = parse_int(cols[6]);
    row.attempts_per_link = parse_real(cols[7]);
    row.success_ratio = parse_real(cols[8]);
    row.converged = parse_int(cols[9]) != 0;
    for (const auto& a : split(cols[10], ';')) row.actions.push_back(static_cast<std::size_t>(parse_int(a)));
    for (const auto& p : split(cols[11], ';')) {
      const auto xy = split(p, ':');
      if (xy.size() != 2) throw IoError("bad position field '" + p + "'");
      row.positions.push_back({parse_real(xy[0]), parse_real(xy[1])});
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string summary_json(const engine::BatchSummary& s, const engine::ScenarioConfig& config) {
  nlohmann::json doc = {
      {"variant", engine::to_string(config.variant)},
      {"seed", config.seed},
      {"replications", s.replications},
      {"horizon", config.horizon},
      {"alpha", config.mobility.alpha},
      {"coverage_rate", s.coverage_rate},
      {"covered_runs", s.covered_runs},
      {"convergence_rate", s.convergence_rate},
      {"converged_runs", s.converged_runs},
      {"mean_convergence_time", optional_number(s.mean_converged_at)},
      {"total_attempts", s.total_attempts},
      {"mean_total_attempts", s.mean_total_attempts},
      // Centralized optimum vs the cost of the NE each run settled on; not a
      // learning metric, reported for comparison only.
      {"optimal_assignment_cost", s.optimal_cost},
      {"mean_final_cost", optional_number(s.mean_final_cost)},
      {"mean_cost_gap", optional_number(s.mean_cost_gap)},
      {"ne_distance_averaging", "converged runs only"},
      {"per_step",
       {{"ne_distance", series(s.mean_ne_distance)},
        {"est_error", series(s.mean_est_error)},
        {"attempts_per_link", series(s.mean_attempts_per_link)},
        {"success_ratio", series(s.mean_success_ratio)}}},
  };
  return doc.dump(2) + "\n";
}

}  // namespace mcdfp::io
