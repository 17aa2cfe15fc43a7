// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Pass criterion numbers as arguments to run a subset.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ttd/env/quantizer.hpp"
#include "ttd/harness/car_oracle.hpp"
#include "ttd/harness/equivalence.hpp"
#include "ttd/harness/experiment.hpp"
#include "ttd/learners/tabular_function.hpp"
#include "ttd/td/experience_buffer.hpp"
#include "ttd/td/incremental.hpp"
#include "ttd/td/returns.hpp"
#include "ttd/td/traces.hpp"

using namespace ttd;
using namespace ttd::harness;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

// ---- 1: truncation lengths ----------------------------------------------

Outcome truncation_lengths() {
  const double gl[] = {0.99, 0.975, 0.95, 0.9, 0.8, 0.6};
  const std::size_t expected[] = {231, 92, 46, 23, 12, 6};
  Outcome o{true, "m ="};
  for (int i = 0; i < 6; ++i) {
    const std::size_t m = choose_m(gl[i]);
    o.pass = o.pass && m == expected[i];
    o.detail += fmt(" %zu", m);
  }
  return o;
}

// ---- 2: incremental vs iterative -----------------------------------------

double stream_deviation(double gamma, double gl, std::size_t m, std::size_t period,
                        std::uint64_t seed) {
  TdConfig c;
  c.gamma = gamma;
  c.lambda = gl / gamma;
  c.m = m;
  c.engine = Engine::incremental;
  c.resync_period = period;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> sym(-1.0, 1.0);
  ExperienceBuffer buffer(m);
  IncrementalReturn engine(c);
  double worst = 0.0;
  for (int step = 0; step < 100000; ++step) {
    const auto evicted = buffer.push({0, 0, sym(rng), sym(rng), std::nullopt});
    if (const auto z = engine.advance(buffer, evicted)) {
      worst = std::max(worst, rel(*z, ttd_return_iterative(buffer, c)));
    }
  }
  return worst;
}

Outcome incremental_equivalence() {
  Outcome o{true, ""};
  double safe_worst = 0.0;
  for (double gl : {0.3, 0.855, 0.99}) {
    const double gamma = gl < 0.95 ? 0.95 : 0.999;
    double worst = 0.0;
    for (std::size_t m : {std::size_t{2}, std::size_t{25}, std::size_t{200}}) {
      worst = std::max(worst, stream_deviation(gamma, gl, m, 1000, 1));
      const std::size_t safe = std::min<std::size_t>(1000, stable_resync_period(gl));
      safe_worst = std::max(safe_worst, stream_deviation(gamma, gl, m, safe, 1));
    }
    o.pass = o.pass && worst <= 1e-9;
    o.detail += fmt("gl=%.3g: %.2e  ", gl, worst);
  }
  o.detail += fmt("(tolerance 1e-9, resync 1000; with gl-scaled resync max %.2e)", safe_worst);
  return o;
}

// ---- 3, 4: frozen trajectories --------------------------------------------

struct Trajectory {
  std::size_t states = 0;
  std::vector<StateId> xs;
  std::vector<double> rs;
  std::vector<double> utility;
  double gamma = 0.0;
  double lambda = 0.0;

  double next_u(std::size_t t) const { return t + 1 < xs.size() ? utility[xs[t + 1]] : 0.0; }
};

std::vector<Trajectory> trajectories() {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> unit(0.0, 1.0), sym(-1.0, 1.0);
  std::uniform_int_distribution<std::size_t> len(1, 50), n(1, 10);
  std::vector<Trajectory> out(100);
  for (auto& tr : out) {
    tr.states = n(rng);
    tr.utility.resize(tr.states);
    for (double& u : tr.utility) u = sym(rng);
    std::uniform_int_distribution<StateId> pick(0, static_cast<StateId>(tr.states - 1));
    const std::size_t l = len(rng);
    for (std::size_t t = 0; t < l; ++t) {
      tr.xs.push_back(pick(rng));
      tr.rs.push_back(sym(rng));
    }
    tr.gamma = unit(rng);
    tr.lambda = 0.999 * unit(rng);
  }
  return out;
}

Outcome batch_attribution(const std::vector<Trajectory>& all) {
  double worst = 0.0;
  for (const auto& tr : all) {
    TdConfig c;
    c.gamma = tr.gamma;
    c.lambda = tr.lambda;
    TraceTable e(tr.states);
    auto totals = TabularFunction::over_states(tr.states);
    for (std::size_t t = 0; t < tr.xs.size(); ++t) {
      trace_update(e, tr.xs[t], c);
      traces_learning_step(totals, e, td0_error(tr.rs[t], tr.next_u(t), tr.utility[tr.xs[t]], c.gamma),
                           1.0);
    }
    std::vector<double> attributed(tr.states, 0.0);
    for (std::size_t t = 0; t < tr.xs.size(); ++t) {
      double delta = 0.0;
      for (std::size_t j = t; j < tr.xs.size(); ++j) {
        delta += std::pow(c.gamma_lambda(), double(j - t)) *
                 (tr.rs[j] + c.gamma * tr.next_u(j) - tr.utility[tr.xs[j]]);
      }
      attributed[tr.xs[t]] += delta;
    }
    for (StateId x = 0; x < tr.states; ++x) worst = std::max(worst, std::abs(totals(x) - attributed[x]));
  }
  return {worst <= 1e-9, fmt("max |traces - attribution| %.2e over 100 trajectories (tolerance 1e-9)", worst)};
}

Outcome truncation_bound(const std::vector<Trajectory>& all) {
  double worst_excess = -1.0;
  double worst_ratio = 0.0;  // over cases where the bound is not vanishing
  for (const auto& tr : all) {
    const double gl = tr.gamma * tr.lambda;
    double rmax = 0.0, umax = 0.0;
    for (double r : tr.rs) rmax = std::max(rmax, std::abs(r));
    for (double u : tr.utility) umax = std::max(umax, std::abs(u));
    const std::size_t len = tr.xs.size();
    for (std::size_t m : {1, 5, 25}) {
      const double bound = std::pow(gl, double(m)) * (rmax / (1.0 - gl) + umax * (1.0 + tr.gamma));
      for (std::size_t t = 0; t < len; ++t) {
        double full = 0.0;
        for (std::size_t j = t; j < len; ++j) {
          full += std::pow(gl, double(j - t)) *
                  (tr.rs[j] + tr.gamma * (1.0 - tr.lambda) * tr.next_u(j));
        }
        const std::size_t end = std::min(len, t + m);
        ExperienceBuffer buffer(end - t);
        for (std::size_t j = t; j < end; ++j) buffer.push({0, 0, tr.rs[j], tr.next_u(j), std::nullopt});
        TdConfig c;
        c.gamma = tr.gamma;
        c.lambda = tr.lambda;
        c.m = end - t;
        const double gap = std::abs(full - ttd_return_iterative(buffer, c));
        worst_excess = std::max(worst_excess, gap - bound);
        if (bound > 1e-6) worst_ratio = std::max(worst_ratio, gap / bound);
      }
    }
  }
  return {worst_excess <= 1e-12,
          fmt("m in {1, 5, 25}: max excess over bound %.2e (tolerance 1e-12), largest gap / bound %.3f",
              std::max(0.0, worst_excess), worst_ratio)};
}

// ---- 5: weight of the truncated tail -----------------------------------

Outcome tail_weights() {
  const double p25 = std::pow(0.95 * 0.9, 25);
  const double p5 = std::pow(0.95 * 0.9, 5);
  return {p25 > 0.015 && p25 < 0.025 && p5 > 0.45 && p5 < 0.465,
          fmt("(0.855)^25 = %.4f, (0.855)^5 = %.4f", p25, p5)};
}

// ---- 6: shortest parking sequence -----------------------------------------

Outcome parking_oracle() {
  const auto r = shortest_parking_path(CarState{}, CarGeometry{}, CarDynamics{}, 30, 1e-6);
  const std::size_t lb = parking_steps_lower_bound(CarState{});
  if (!r.depth) return {false, fmt("no success within 30 steps (lower bound %zu)", lb)};
  std::string path;
  for (CarAction a : r.path) path += "SLR"[static_cast<int>(a)];
  return {*r.depth == 21, fmt("shortest sequence %zu steps (expected 21), geometric lower bound %zu, "
                              "%zu poses expanded, path %s",
                              *r.depth, lb, r.expanded, path.c_str())};
}

// ---- 7: quantizer counts --------------------------------------------------

std::size_t enumerate_regions(const Quantizer& q) {
  std::vector<std::vector<double>> probes(q.dimensions());
  for (std::size_t d = 0; d < q.dimensions(); ++d) {
    const auto& t = q.thresholds(d);
    probes[d].push_back(t.front() - 1.0);
    for (std::size_t i = 0; i + 1 < t.size(); ++i) probes[d].push_back((t[i] + t[i + 1]) / 2.0);
    probes[d].push_back(t.back() + 1.0);
  }
  std::set<StateId> ids;
  std::vector<std::size_t> idx(q.dimensions(), 0);
  for (;;) {
    std::vector<double> v(q.dimensions());
    for (std::size_t d = 0; d < v.size(); ++d) v[d] = probes[d][idx[d]];
    ids.insert(q(v));
    std::size_t d = 0;
    while (d < idx.size() && ++idx[d] == probes[d].size()) idx[d++] = 0;
    if (d == idx.size()) break;
  }
  return ids.size();
}

Outcome quantizer_counts() {
  const std::size_t car = enumerate_regions(car_quantizer());
  const std::size_t pole = enumerate_regions(cartpole_quantizer());
  return {car == 1260 && pole == 162, fmt("car %zu regions, cart-pole %zu boxes", car, pole)};
}

// ---- 8, 9: car parking studies ---------------------------------------------

double mean_first_success(const ExperimentResult& r) {
  // Runs that never park count as one episode past the end.
  double total = 0.0;
  for (const auto& run : r.runs) {
    total += double(run.first_success_episode().value_or(r.spec.episodes + 1));
  }
  return total / double(r.runs.size());
}

std::size_t runs_without_success(const ExperimentResult& r) {
  return std::count_if(r.runs.begin(), r.runs.end(),
                       [](const RunMetrics& run) { return !run.first_success_episode(); });
}

Outcome study_one() {
  const auto high = run_experiment(preset("study1-lambda0.9"));
  const auto low = run_experiment(preset("study1-lambda0"));
  const std::size_t n = high.mean_curve.size();
  std::size_t dominated = 0;
  double high_final = 0.0, low_final = 0.0;
  for (std::size_t i = n - 50; i < n; ++i) {
    const double h = high.mean_curve[i].mean_window_reward_per_step;
    const double l = low.mean_curve[i].mean_window_reward_per_step;
    dominated += h >= l;
    high_final += h / 50.0;
    low_final += l / 50.0;
  }
  const double fs_high = mean_first_success(high);
  const double fs_low = mean_first_success(low);
  return {dominated == 50 && fs_high < fs_low,
          fmt("final 50 episodes: lambda 0.9 >= lambda 0 at %zu/50 (mean %.4f vs %.4f); "
              "mean first success %.2f vs %.2f; runs never parking %zu vs %zu",
              dominated, high_final, low_final, fs_high, fs_low, runs_without_success(high),
              runs_without_success(low))};
}

Outcome study_two() {
  const auto m25 = run_experiment(preset("study1-lambda0.9"));
  const auto m5 = run_experiment(preset("study2-m5"));
  const double a = m25.mean_curve.back().mean_window_reward_per_step;
  const double b = m5.mean_curve.back().mean_window_reward_per_step;
  return {a >= b, fmt("final-window mean reward per step: m=25 %.4f, m=5 %.4f", a, b)};
}

// ---- 10: cart-pole --------------------------------------------------------

Outcome cart_pole() {
  const auto r = run_experiment(preset("cartpole"));
  std::size_t balanced = 0;
  double final_mean = 0.0;
  std::string longest;
  for (const auto& run : r.runs) {
    balanced += run.longest_episode() >= 10000;
    final_mean += double(run.episodes.back().duration) / double(r.runs.size());
    longest += fmt(" %zu", run.longest_episode());
  }
  return {balanced >= 7, fmt("%zu/10 runs balanced >= 10000 steps; mean final balancing %.0f steps; "
                             "longest per run:%s",
                             balanced, final_mean, longest.c_str())};
}

// ---- 11: property suite ---------------------------------------------------

Outcome property_suite() {
  const auto report = equivalence_report(1000, 1);
  std::string failed;
  double worst_incremental = 0.0;
  for (const auto& c : report.checks) {
    if (!c.passed) failed += " " + c.name;
    if (c.name == "incremental_vs_iterative") worst_incremental = c.max_deviation;
  }
  return {report.passed(),
          fmt("%zu checks x 1000 trials%s%s (incremental max %.2e)", report.checks.size(),
              failed.empty() ? ", all passed" : ", failed:", failed.c_str(), worst_incremental)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Trajectory> frozen = trajectories();
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"choose_m truncation lengths", truncation_lengths},
      {"incremental return equals iterative return", incremental_equivalence},
      {"traces batch totals equal lambda-error attribution", [&] { return batch_attribution(frozen); }},
      {"truncation error bound", [&] { return truncation_bound(frozen); }},
      {"(gamma*lambda)^m weight values", tail_weights},
      {"car parking shortest sequence is 21 steps", parking_oracle},
      {"quantizer region counts", quantizer_counts},
      {"car parking: lambda 0.9 beats lambda 0", study_one},
      {"car parking: m 25 at least as good as m 5", study_two},
      {"cart-pole: 7/10 runs balance 10000 steps", cart_pole},
      {"property suite and check report", property_suite},
  };

  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!only.empty() && !only.count(id)) continue;
    const auto start = std::chrono::steady_clock::now();
    const Outcome o = criteria[i].second();
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += !o.pass;
    std::printf("%s C%-2d %s | %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", id, criteria[i].first,
                o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
