#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <tuple>
#include <vector>

#include "mcdfp/channel.hpp"
#include "mcdfp/config.hpp"
#include "mcdfp/engine.hpp"
#include "mcdfp/game.hpp"
#include "mcdfp/metrics_io.hpp"
#include "mcdfp/mobility.hpp"

namespace py = pybind11;
using namespace mcdfp;

namespace {

using Point = std::pair<double, double>;

Vec2 to_vec(const Point& p) { return {p.first, p.second}; }
Point to_point(Vec2 v) { return {v.x, v.y}; }

std::vector<std::size_t> raw_profile(const ActionProfile& p) {
  std::vector<std::size_t> out;
  for (const Action& a : p) out.push_back(a.target);
  return out;
}

ActionProfile to_profile(const std::vector<std::size_t>& raw) {
  ActionProfile p;
  for (std::size_t k : raw) p.push_back(Action{k});
  return p;
}

py::dict frame_dict(const engine::MetricsFrame& f) {
  py::dict d;
  d["t"] = f.t;
  d["ne_distance"] = f.ne_distance;
  d["est_error"] = f.est_error;
  d["attempts"] = f.attempts;
  d["successes"] = f.successes;
  d["attempts_per_link"] = f.attempts_per_link;
  d["success_ratio"] = f.success_ratio;
  d["converged"] = f.converged;
  d["actions"] = raw_profile(f.actions);
  std::vector<Point> pos;
  for (Vec2 v : f.positions) pos.push_back(to_point(v));
  d["positions"] = pos;
  return d;
}

py::dict run_dict(const engine::RunResult& r) {
  py::dict d;
  d["seed"] = r.seed;
  d["converged_at"] = r.converged_at ? py::cast(*r.converged_at) : py::none();
  d["ne_profile"] = r.ne_profile ? py::cast(raw_profile(*r.ne_profile)) : py::none();
  d["covered"] = r.covered;
  d["total_attempts"] = r.total_attempts;
  d["final_cost"] = r.final_cost;
  d["optimal_cost"] = r.optimal_cost;
  py::list frames;
  for (const auto& f : r.frames) frames.append(frame_dict(f));
  d["frames"] = frames;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Native core of the mcdfp simulator";

  py::register_exception<CapacityError>(m, "CapacityError", PyExc_ValueError);
  py::register_exception<UsageError>(m, "UsageError", PyExc_ValueError);

  m.def("enumerate_pure_ne",
        [](const std::vector<std::vector<double>>& costs) {
          std::vector<std::vector<std::size_t>> out;
          for (const auto& p : game::enumerate_pure_ne(CostMatrix(costs))) out.push_back(raw_profile(p));
          return out;
        },
        py::arg("costs"));
  m.def("is_pure_ne",
        [](const std::vector<std::size_t>& profile, const std::vector<std::vector<double>>& costs) {
          return game::is_pure_ne(to_profile(profile), CostMatrix(costs));
        },
        py::arg("profile"), py::arg("costs"));
  m.def("optimal_assignment",
        [](const std::vector<std::vector<double>>& costs) {
          const auto a = game::optimal_assignment(CostMatrix(costs));
          return std::make_tuple(raw_profile(a.profile), a.cost);
        },
        py::arg("costs"));
  m.def("expected_utility",
        [](RobotId i, std::size_t target, const std::map<RobotId, std::vector<double>>& estimates,
           const std::vector<std::vector<double>>& costs) {
          PeerFrequencies est;
          for (const auto& [j, f] : estimates) est.emplace(j, Frequency(f));
          return game::expected_utility(i, Action{target}, est, CostMatrix(costs));
        },
        py::arg("i"), py::arg("target"), py::arg("estimates"), py::arg("costs"));
  m.def("cost_matrix",
        [](const std::vector<Point>& robots, const std::vector<Point>& targets) {
          std::vector<Vec2> r, t;
          for (const auto& p : robots) r.push_back(to_vec(p));
          for (const auto& p : targets) t.push_back(to_vec(p));
          const auto d = CostMatrix::from_positions(r, t);
          std::vector<std::vector<double>> out(d.size(), std::vector<double>(d.size()));
          for (std::size_t i = 0; i < d.size(); ++i) {
            for (std::size_t k = 0; k < d.size(); ++k) out[i][k] = d(i, k);
          }
          return out;
        },
        py::arg("robots"), py::arg("targets"));

  m.def("allocate_rates", &channel::allocate_rates, py::arg("weights"));
  m.def("link_success_prob",
        [](double rate, const Point& a, const Point& b, double fading_r) {
          channel::CommParams p;
          p.fading_r = fading_r;
          return channel::link_success_prob(rate, to_vec(a), to_vec(b), p);
        },
        py::arg("rate"), py::arg("pos_i"), py::arg("pos_j"), py::arg("fading_r") = 0.65);
  m.def("select_direction",
        [](const Point& own, const std::vector<std::pair<Point, double>>& pulls) {
          std::vector<mobility::Pull> ps;
          for (const auto& [pt, w] : pulls) ps.push_back({to_vec(pt), w});
          return to_point(mobility::select_direction(to_vec(own), ps));
        },
        py::arg("own_target"), py::arg("pulls"));

  m.def("preset_json", [](const std::string& name) { return io::config_to_json(io::preset(name)); },
        py::arg("name"));
  m.def("normalize_config",
        [](const std::string& text, bool json) { return io::config_to_json(io::config_from_text(text, json)); },
        py::arg("text"), py::arg("json") = true);

  m.def("run_replication",
        [](const std::string& config_json, int index) {
          const auto cfg = io::config_from_text(config_json, true);
          engine::RunResult r;
          {
            py::gil_scoped_release release;
            r = engine::run_replication(cfg, index);
          }
          return run_dict(r);
        },
        py::arg("config_json"), py::arg("index") = 0);
  m.def("run_batch",
        [](const std::string& config_json, unsigned threads) {
          const auto cfg = io::config_from_text(config_json, true);
          engine::BatchResult b;
          {
            py::gil_scoped_release release;
            b = engine::run_batch(cfg, threads);
          }
          py::list runs;
          for (const auto& r : b.runs) runs.append(run_dict(r));
          py::dict d;
          d["summary_json"] = io::summary_json(b.summary, cfg);
          d["runs"] = runs;
          return d;
        },
        py::arg("config_json"), py::arg("threads") = 0);
}
