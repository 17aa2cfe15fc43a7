#include "ttd/harness/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <limits>
#include <map>
#include <memory>
#include <thread>

#include "ttd/errors.hpp"
#include "ttd/learners/session.hpp"

namespace ttd::harness {

void ExperimentSpec::validate() const {
  learner.validate();
  if (episodes == 0) throw ConfigError("episodes must be positive");
  if (seeds.empty()) throw ConfigError("at least one run (seed) is required");
  if (metric_window == 0) throw ConfigError("metric window must be positive");
  if (step_cap_total && *step_cap_total == 0) throw ConfigError("step cap must be positive");
}

std::vector<std::uint64_t> derive_seeds(std::uint64_t base_seed, std::size_t runs) {
  std::vector<std::uint64_t> seeds(runs);
  for (std::size_t i = 0; i < runs; ++i) seeds[i] = base_seed + i;
  return seeds;
}

std::optional<std::size_t> RunMetrics::first_success_episode() const {
  for (std::size_t i = 0; i < episodes.size(); ++i) {
    if (!episodes[i].padded && episodes[i].outcome == Terminal::success) return i + 1;
  }
  return std::nullopt;
}

std::size_t RunMetrics::longest_episode() const {
  std::size_t longest = interrupted ? interrupted->duration : 0;
  for (const auto& e : episodes) {
    if (!e.padded) longest = std::max(longest, e.duration);
  }
  return longest;
}

std::vector<double> window_mean_duration(const RunMetrics& run, std::size_t window) {
  std::vector<double> out(run.episodes.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < run.episodes.size(); ++i) {
    sum += static_cast<double>(run.episodes[i].duration);
    if (i >= window) sum -= static_cast<double>(run.episodes[i - window].duration);
    out[i] = sum / static_cast<double>(std::min(i + 1, window));
  }
  return out;
}

std::vector<double> window_reward_per_step(const RunMetrics& run, std::size_t window) {
  std::vector<double> out(run.episodes.size());
  for (std::size_t i = 0; i < run.episodes.size(); ++i) {
    const std::size_t first = i + 1 >= window ? i + 1 - window : 0;
    double reward = 0.0;
    double steps = 0.0;
    for (std::size_t j = first; j <= i; ++j) {
      reward += run.episodes[j].total_reward;
      steps += static_cast<double>(run.episodes[j].duration);
    }
    out[i] = steps > 0.0 ? reward / steps : 0.0;
  }
  return out;
}

std::vector<AggregateRow> aggregate(const std::vector<RunMetrics>& runs, std::size_t window) {
  if (runs.empty()) return {};
  const std::size_t n = runs.front().episodes.size();
  for (const auto& r : runs) {
    if (r.episodes.size() != n) {
      throw ConfigError("cannot aggregate runs with different episode counts");
    }
  }
  std::vector<AggregateRow> rows(n);
  for (std::size_t i = 0; i < n; ++i) rows[i].episode = i + 1;
  const double count = static_cast<double>(runs.size());
  for (const auto& r : runs) {
    const auto wd = window_mean_duration(r, window);
    const auto wr = window_reward_per_step(r, window);
    for (std::size_t i = 0; i < n; ++i) {
      const auto& e = r.episodes[i];
      rows[i].mean_duration += static_cast<double>(e.duration) / count;
      rows[i].mean_total_reward += e.total_reward / count;
      rows[i].mean_avg_reward_per_step += e.avg_reward_per_step / count;
      rows[i].mean_window_duration += wd[i] / count;
      rows[i].mean_window_reward_per_step += wr[i] / count;
    }
  }
  return rows;
}

RunMetrics pad_fictitious_episodes(RunMetrics run, std::size_t target_episodes) {
  if (!run.interrupted) throw NothingToPad("run completed normally; nothing to pad");
  std::size_t duration = run.interrupted->duration;
  // Only a real, complete predecessor counts.
  if (!run.episodes.empty() && !run.episodes.back().padded &&
      duration < run.episodes.back().duration) {
    duration = run.episodes.back().duration;
  }
  while (run.episodes.size() < target_episodes) {
    EpisodeMetrics e;
    e.duration = duration;
    e.padded = true;
    run.episodes.push_back(e);
  }
  return run;
}

RunMetrics run_single(const ExperimentSpec& spec, std::uint64_t seed) {
  auto task = make_task(spec.environment, spec.car_episode_cap);
  LearnerSession session(spec.learner, task->num_states(), task->num_actions(), seed);

  RunMetrics run;
  run.seed = seed;
  run.episodes.reserve(spec.episodes);
  const std::size_t budget = spec.step_cap_total.value_or(std::numeric_limits<std::size_t>::max());

  for (std::size_t episode = 0; episode < spec.episodes; ++episode) {
    StateId x = task->reset();
    EpisodeMetrics metrics;
    bool cut = false;
    for (;;) {
      if (run.total_steps >= budget) {
        cut = true;
        break;
      }
      const ActionId a = session.select_action(x);
      const Transition t = task->step(a);
      ++metrics.duration;
      ++run.total_steps;
      metrics.total_reward += t.reward;
      if (t.terminal != Terminal::none) {
        session.finish_episode(t.reward);
        metrics.outcome = t.terminal;
        break;
      }
      session.observe(t.reward, t.next_state);
      x = t.next_state;
    }
    if (metrics.duration > 0) {
      metrics.avg_reward_per_step = metrics.total_reward / static_cast<double>(metrics.duration);
    }
    if (cut) {
      session.abandon_episode();
      run.interrupted = metrics;
      break;
    }
    run.episodes.push_back(metrics);
  }
  if (run.truncated()) run = pad_fictitious_episodes(std::move(run), spec.episodes);
  return run;
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
  spec.validate();
  ExperimentResult result;
  result.spec = spec;
  result.runs.resize(spec.runs());

  std::size_t workers = spec.threads != 0 ? spec.threads : std::thread::hardware_concurrency();
  workers = std::clamp<std::size_t>(workers, 1, spec.runs());

  std::vector<std::exception_ptr> errors(spec.runs());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < spec.runs(); i = next++) {
      try {
        result.runs[i] = run_single(spec, spec.seeds[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  result.mean_curve = aggregate(result.runs, spec.metric_window);
  return result;
}

namespace {

ExperimentSpec car_study(double lambda, std::size_t m, double rate) {
  ExperimentSpec spec;
  spec.environment = EnvironmentKind::car_parking;
  spec.learner.algorithm = Algorithm::ahc;
  spec.learner.alpha = rate;
  spec.learner.beta = rate;
  spec.learner.temperature = 0.02;
  spec.learner.td.gamma = 0.95;
  spec.learner.td.lambda = lambda;
  spec.learner.td.m = m;
  spec.episodes = 250;
  spec.seeds = derive_seeds(1, 25);
  return spec;
}

const std::map<std::string, ExperimentSpec>& presets() {
  static const std::map<std::string, ExperimentSpec> table = [] {
    std::map<std::string, ExperimentSpec> t;
    t["study1-lambda0"] = car_study(0.0, 25, 0.7);
    t["study1-lambda0.3"] = car_study(0.3, 25, 0.5);
    t["study1-lambda0.5"] = car_study(0.5, 25, 0.5);
    t["study1-lambda0.7"] = car_study(0.7, 25, 0.5);
    t["study1-lambda0.8"] = car_study(0.8, 25, 0.5);
    t["study1-lambda0.9"] = car_study(0.9, 25, 0.25);
    t["study1-lambda1"] = car_study(1.0, 25, 0.25);
    t["study2-m5"] = car_study(0.9, 5, 0.25);
    t["study2-m10"] = car_study(0.9, 10, 0.25);
    t["study2-m15"] = car_study(0.9, 15, 0.25);
    t["study2-m20"] = car_study(0.9, 20, 0.25);

    ExperimentSpec cp;
    cp.environment = EnvironmentKind::cart_pole;
    cp.learner.algorithm = Algorithm::ahc;
    cp.learner.alpha = 0.1;
    cp.learner.beta = 0.05;
    cp.learner.temperature = 0.0001;
    cp.learner.td.gamma = 0.95;
    cp.learner.td.lambda = 0.9;
    cp.learner.td.m = 25;
    cp.episodes = 100;
    cp.seeds = derive_seeds(1, 10);
    cp.step_cap_total = 500000;
    t["cartpole"] = cp;
    return t;
  }();
  return table;
}

}  // namespace

ExperimentSpec preset(const std::string& name) {
  const auto& table = presets();
  const auto it = table.find(name);
  if (it == table.end()) throw ConfigError("unknown preset '" + name + "'");
  return it->second;
}

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (const auto& [name, spec] : presets()) names.push_back(name);
  return names;
}

}  // namespace ttd::harness
