// Acceptance suite. Prints one PASS/FAIL line per criterion and exits nonzero
// if any selected criterion fails.
//
//   acceptance                 run everything
//   acceptance --only NAME     run one criterion
//   acceptance --list

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "../support/oracles.hpp"
#include "mcdfp/channel.hpp"
#include "mcdfp/config.hpp"
#include "mcdfp/engine.hpp"
#include "mcdfp/game.hpp"
#include "mcdfp/mobility.hpp"

using namespace mcdfp;
using engine::Variant;
namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kSeed = 7;
constexpr int kReps = 50;

struct Verdict {
  bool pass;
  std::string detail;
};

std::string fmt(double v, int prec = 3) {
  std::ostringstream s;
  s.precision(prec);
  s << std::fixed << v;
  return s.str();
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

engine::ScenarioConfig scenario(const std::string& name, Variant v, double alpha) {
  auto cfg = io::preset(name);
  cfg.variant = v;
  cfg.mobility.alpha = alpha;
  cfg.seed = kSeed;
  cfg.replications = kReps;
  cfg.horizon = 100;
  return cfg;
}

// Scenario 1 batches at alpha 0.1 are shared by several criteria.
const engine::BatchResult& scenario1(Variant v) {
  static std::map<Variant, engine::BatchResult> cache;
  auto it = cache.find(v);
  if (it == cache.end()) it = cache.emplace(v, engine::run_batch(scenario("scenario1", v, 0.1))).first;
  return it->second;
}

Verdict coverage_scenario1() {
  const auto t0 = std::chrono::steady_clock::now();
  const double mc = scenario1(Variant::mcdfp).summary.coverage_rate;
  const double c = scenario1(Variant::cdfp).summary.coverage_rate;
  const double d = scenario1(Variant::dfp).summary.coverage_rate;
  const double elapsed = seconds_since(t0);
  const double tol = 0.08;
  const bool ordered = mc >= c - tol && c >= d - tol;
  const bool cells = std::abs(mc - 1.00) <= tol && std::abs(c - 0.96) <= tol && std::abs(d - 0.86) <= tol;
  const bool pass = mc >= 0.92 && ordered && cells && elapsed < 30.0;
  return {pass, "mcdfp " + fmt(mc, 2) + ", cdfp " + fmt(c, 2) + ", dfp " + fmt(d, 2) +
                    " (need mcdfp >= 0.92, order within 0.08, cells within 0.08 of 1.00/0.96/0.86); " +
                    fmt(elapsed, 1) + " s of 30"};
}

Verdict coverage_scenario2() {
  const double mc = engine::run_batch(scenario("scenario2", Variant::mcdfp, 0.025)).summary.coverage_rate;
  const double d = engine::run_batch(scenario("scenario2", Variant::dfp, 0.025)).summary.coverage_rate;
  const bool pass = mc >= 0.55 && mc <= 0.90 && d >= 0.25 && d <= 0.60 && mc - d >= 0.15;
  return {pass, "alpha 0.025: mcdfp " + fmt(mc, 2) + " (need [0.55, 0.90]), dfp " + fmt(d, 2) +
                    " (need [0.25, 0.60]), gap " + fmt(mc - d, 2) + " (need >= 0.15)"};
}

Verdict comm_reduction() {
  const double ratio =
      engine::attempts_ratio(scenario1(Variant::mcdfp).summary, scenario1(Variant::dfp).summary);
  return {ratio <= 0.45, "mcdfp/dfp total attempts " + fmt(ratio) + " (need <= 0.45)"};
}

Verdict convergence_time() {
  const auto& s = scenario1(Variant::mcdfp).summary;
  const double mean = s.mean_converged_at.value_or(INFINITY);
  return {mean <= 60.0 && s.convergence_rate >= 0.95,
          "mean converged_at " + fmt(mean, 1) + " (need <= 60), converged " +
              fmt(s.convergence_rate, 2) + " (need >= 0.95)"};
}

Verdict attempt_cutoff() {
  bool pass = true;
  std::string detail;
  for (Variant v : {Variant::mcdfp, Variant::cdfp}) {
    const auto& series = scenario1(v).summary.mean_attempts_per_link;
    double worst = 0.0;
    for (std::size_t t = 24; t < series.size(); ++t) worst = std::max(worst, series[t]);
    pass = pass && worst < 0.5;
    detail += engine::to_string(v) + " max over t >= 25: " + fmt(worst) + "; ";
  }
  return {pass, detail + "need < 0.5"};
}

// Independent utility: pay your cost only when someone shares your target.
bool brute_is_ne(const std::vector<std::size_t>& p, const std::vector<std::vector<double>>& d) {
  const std::size_t n = p.size();
  auto cost = [&](const std::vector<std::size_t>& q, std::size_t i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i && q[j] == q[i]) return d[i][q[i]];
    }
    return 0.0;
  };
  for (std::size_t i = 0; i < n; ++i) {
    auto q = p;
    const double base = cost(q, i);
    for (std::size_t k = 0; k < n; ++k) {
      q[i] = k;
      if (cost(q, i) < base) return false;
    }
  }
  return true;
}

Verdict oracle_equivalence() {
  std::mt19937_64 gen(kSeed);
  std::uniform_real_distribution<double> cost(0.05, 10.0);
  const auto t0 = std::chrono::steady_clock::now();
  int mismatches = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + trial % 3;
    std::vector<std::vector<double>> d(n, std::vector<double>(n));
    for (auto& row : d) {
      for (auto& v : row) v = cost(gen);
    }
    std::set<std::vector<std::size_t>> listed;
    for (const auto& p : game::enumerate_pure_ne(CostMatrix(d))) {
      std::vector<std::size_t> raw;
      for (const Action& a : p) raw.push_back(a.target);
      listed.insert(raw);
    }
    std::set<std::vector<std::size_t>> perms, brute;
    std::vector<std::size_t> p(n, 0);
    while (true) {
      if (testing::is_permutation_profile(p)) perms.insert(p);
      if (brute_is_ne(p, d)) brute.insert(p);
      std::size_t pos = n;
      while (pos > 0 && ++p[pos - 1] == n) p[--pos] = 0;
      if (pos == 0) break;
    }
    if (listed != perms || listed != brute) ++mismatches;
  }
  const double elapsed = seconds_since(t0);
  return {mismatches == 0 && elapsed < 1.0,
          std::to_string(mismatches) + " mismatching games of 100; " + fmt(elapsed) + " s (need < 1)"};
}

Verdict potential_argmin() {
  std::mt19937_64 gen(kSeed + 1);
  std::uniform_real_distribution<double> cost(0.05, 10.0);
  int mismatches = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + gen() % 5;
    std::vector<std::vector<double>> d(n, std::vector<double>(n));
    for (auto& row : d) {
      for (auto& v : row) v = cost(gen);
    }
    const CostMatrix costs(d);
    const std::size_t i = gen() % n;
    ActionProfile p(n);
    for (auto& a : p) a.target = gen() % n;
    std::vector<double> u(n), phi(n);
    for (std::size_t k = 0; k < n; ++k) {
      p[i] = Action{k};
      u[k] = game::utility(i, p, costs);
      phi[k] = game::potential_term(i, p);
    }
    const double umin = *std::min_element(u.begin(), u.end());
    const double pmin = *std::min_element(phi.begin(), phi.end());
    for (std::size_t k = 0; k < n; ++k) {
      if ((u[k] == umin) != (phi[k] == pmin)) {
        ++mismatches;
        break;
      }
    }
  }
  return {mismatches == 0, std::to_string(mismatches) + " of 200 instances with differing argmin sets"};
}

// Robot j repeats e_k with every link forced to succeed. Robot i's estimate
// of j is read at step T after j's decision and before that step's
// exchange (it then reflects epochs 1..T-1), and again after the exchange.
Verdict estimate_tracking() {
  const std::size_t n = 5, j = 2, k = 4;
  const int horizon = 30;
  const double xi = 1e-3;
  const agent::LearnParams learn{0.4, 1.0, 0.05};
  const channel::CommParams comm;
  std::vector<agent::AgentState> states;
  for (RobotId r = 0; r < n; ++r) states.push_back(agent::AgentState::initial(r, n, {0, 0}));
  const double d0 = distance(Frequency::uniform(n), Action{k});

  channel::ForcedSuccessSampler sampler;
  double worst_pre = 0.0, worst_post = 0.0, dev_pre = 0.0, dev_post = 0.0;
  for (int t = 1; t <= horizon; ++t) {
    for (auto& s : states) {
      s.action = Action{s.id == j ? k : (s.id + 1) % n};
      agent::update_own_frequency(s, learn);
    }
    if (t == horizon) {
      for (const auto& s : states) {
        if (s.id == j) continue;
        const double err = distance(s.est_freq.at(j), Action{k});
        worst_pre = std::max(worst_pre, err);
        dev_pre = std::max(dev_pre, std::abs(err - std::pow(1.0 - learn.rho1, horizon - 1) * d0));
      }
    }
    channel::run_comm_round(states, comm, learn, sampler, channel::Protocol::fixed);
  }
  for (const auto& s : states) {
    if (s.id == j) continue;
    const double err = distance(s.est_freq.at(j), Action{k});
    worst_post = std::max(worst_post, err);
    dev_post = std::max(dev_post, std::abs(err - std::pow(1.0 - learn.rho1, horizon) * d0));
  }
  const bool pass = worst_pre <= xi && worst_post <= xi && dev_pre <= 1e-9 && dev_post <= 1e-9;
  std::ostringstream s;
  s.precision(3);
  s << std::scientific << "T=30 error before exchange " << worst_pre << " (|diff| vs 0.6^29*d0 "
    << dev_pre << "), after " << worst_post << " (|diff| vs 0.6^30*d0 " << dev_post
    << "); need <= 1e-3 and diff <= 1e-9";
  return {pass, s.str()};
}

Verdict routing_closed_form() {
  std::mt19937_64 gen(kSeed + 2);
  std::uniform_real_distribution<double> w(0.0, 10.0);
  double worst_obj = 0.0, worst_sum = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t m = 2 + gen() % 5;
    std::vector<double> ws(m);
    std::map<RobotId, double> weights;
    for (std::size_t j = 0; j < m; ++j) {
      ws[j] = (gen() % 5 == 0) ? 0.0 : w(gen);
      weights[j] = ws[j];
    }
    if (std::all_of(ws.begin(), ws.end(), [](double x) { return x == 0.0; })) ws[0] = weights[0] = 1.0;
    const auto rates = channel::allocate_rates(weights);
    std::vector<double> beta(m);
    double sum = 0.0;
    for (std::size_t j = 0; j < m; ++j) sum += (beta[j] = rates.at(j));
    const auto numeric = testing::mirror_ascent_routing(ws);
    const double gap = testing::routing_objective(ws, numeric) - testing::routing_objective(ws, beta);
    worst_obj = std::max(worst_obj, std::abs(gap));
    worst_sum = std::max(worst_sum, std::abs(sum - 1.0));
  }
  std::ostringstream s;
  s.precision(3);
  s << std::scientific << "max objective gap " << worst_obj << " (need <= 1e-3), max |sum beta - 1| "
    << worst_sum << " (need <= 1e-12)";
  return {worst_obj <= 1e-3 && worst_sum <= 1e-12, s.str()};
}

Verdict mobility_closed_form() {
  std::mt19937_64 gen(kSeed + 3);
  std::uniform_real_distribution<double> coord(-3.0, 3.0), weight(0.0, 10.0), cand(-4.0, 4.0);
  double worst_grad = 0.0;
  int beaten = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const Vec2 own{coord(gen), coord(gen)};
    std::vector<mobility::Pull> pulls(gen() % 5);
    for (auto& p : pulls) p = {{coord(gen), coord(gen)}, weight(gen)};
    const Vec2 x = mobility::select_direction(own, pulls);
    worst_grad = std::max(worst_grad, mobility::direction_gradient(x, own, pulls).norm());
    const double best = mobility::direction_objective(x, own, pulls);
    for (int c = 0; c < 10000; ++c) {
      if (mobility::direction_objective({cand(gen), cand(gen)}, own, pulls) < best) ++beaten;
    }
  }
  std::ostringstream s;
  s.precision(3);
  s << std::scientific << "max gradient norm " << worst_grad << " (need < 1e-9); " << beaten
    << " random candidates beat the minimizer (need 0)";
  return {worst_grad < 1e-9 && beaten == 0, s.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Verdict determinism() {
  const fs::path dir = fs::temp_directory_path() / "mcdfp_acceptance_det";
  fs::remove_all(dir);
  const std::string base = std::string(MCDFP_CLI_PATH) +
                           " run --preset scenario1 --variant mcdfp --alpha 0.1 --seed 7 --reps 50 --out ";
  int rc = 0;
  for (const char* sub : {"a", "b"}) {
    const std::string cmd = base + (dir / sub).string() + " >/dev/null 2>&1";
    rc |= std::system(cmd.c_str());
  }
  const std::string a = slurp(dir / "a" / "metrics.csv");
  const std::string b = slurp(dir / "b" / "metrics.csv");
  fs::remove_all(dir);
  const bool pass = rc == 0 && !a.empty() && a == b;
  return {pass, "exit status " + std::to_string(rc) + ", " + std::to_string(a.size()) +
                    " bytes, identical: " + (a == b ? "yes" : "no")};
}

const std::vector<std::pair<std::string, std::function<Verdict()>>>& criteria() {
  static const std::vector<std::pair<std::string, std::function<Verdict()>>> all{
      {"coverage_scenario1", coverage_scenario1},
      {"coverage_scenario2", coverage_scenario2},
      {"comm_reduction", comm_reduction},
      {"convergence_time", convergence_time},
      {"attempt_cutoff", attempt_cutoff},
      {"oracle_equivalence", oracle_equivalence},
      {"potential_argmin", potential_argmin},
      {"estimate_tracking", estimate_tracking},
      {"routing_closed_form", routing_closed_form},
      {"mobility_closed_form", mobility_closed_form},
      {"determinism", determinism},
  };
  return all;
}

}  // namespace

int main(int argc, char** argv) {
  std::string only;
  for (int a = 1; a < argc; ++a) {
    const std::string arg = argv[a];
    if (arg == "--list") {
      for (const auto& [name, _] : criteria()) std::cout << name << "\n";
      return 0;
    }
    if (arg == "--only" && a + 1 < argc) {
      only = argv[++a];
    } else {
      std::cerr << "usage: acceptance [--only NAME | --list]\n";
      return 2;
    }
  }

  int failed = 0, ran = 0;
  for (const auto& [name, fn] : criteria()) {
    if (!only.empty() && name != only) continue;
    ++ran;
    Verdict v{false, ""};
    try {
      v = fn();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    std::cout << (v.pass ? "PASS " : "FAIL ") << name << ": " << v.detail << std::endl;
    failed += v.pass ? 0 : 1;
  }
  if (ran == 0) {
    std::cerr << "unknown criterion '" << only << "'\n";
    return 2;
  }
  std::cout << (ran - failed) << "/" << ran << " criteria passed\n";
  return failed ? 1 : 0;
}
