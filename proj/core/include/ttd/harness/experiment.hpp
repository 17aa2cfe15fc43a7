#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ttd/env/outcome.hpp"
#include "ttd/env/tasks.hpp"
#include "ttd/learners/learners.hpp"

namespace ttd::harness {

struct ExperimentSpec {
  EnvironmentKind environment = EnvironmentKind::car_parking;
  LearnerConfig learner;
  std::size_t episodes = 250;
  std::vector<std::uint64_t> seeds;
  /// Whole-run step budget; a run that hits it mid-episode is padded.
  std::optional<std::size_t> step_cap_total;
  std::size_t metric_window = 5;
  std::size_t car_episode_cap = 1000;
  /// Worker threads for independent runs; 0 picks the hardware concurrency.
  std::size_t threads = 0;

  std::size_t runs() const { return seeds.size(); }

  /// Throws ConfigError on any inconsistency.
  void validate() const;
};

/// seed_i = base_seed + i.
std::vector<std::uint64_t> derive_seeds(std::uint64_t base_seed, std::size_t runs);

struct EpisodeMetrics {
  std::size_t duration = 0;
  double total_reward = 0.0;
  double avg_reward_per_step = 0.0;
  Terminal outcome = Terminal::none;
  bool padded = false;
};

struct RunMetrics {
  std::uint64_t seed = 0;
  std::vector<EpisodeMetrics> episodes;
  /// Episode cut off by step_cap_total, if any. Not part of `episodes`.
  std::optional<EpisodeMetrics> interrupted;
  std::size_t total_steps = 0;

  bool truncated() const { return interrupted.has_value(); }
  /// 1-based index of the first episode that ended in success.
  std::optional<std::size_t> first_success_episode() const;
  /// Longest episode that was actually simulated (complete or interrupted).
  std::size_t longest_episode() const;
};

/// Per-episode window means: durations averaged over the last `window`
/// episodes, and reward per step pooled over the same window.
std::vector<double> window_mean_duration(const RunMetrics& run, std::size_t window);
std::vector<double> window_reward_per_step(const RunMetrics& run, std::size_t window);

struct AggregateRow {
  std::size_t episode = 0;  // 1-based
  double mean_duration = 0.0;
  double mean_total_reward = 0.0;
  double mean_avg_reward_per_step = 0.0;
  double mean_window_duration = 0.0;
  double mean_window_reward_per_step = 0.0;
};

/// Cross-run arithmetic means per episode index. All runs must have the same
/// number of episodes.
std::vector<AggregateRow> aggregate(const std::vector<RunMetrics>& runs, std::size_t window);

struct ExperimentResult {
  ExperimentSpec spec;
  std::vector<RunMetrics> runs;  // in seed order
  std::vector<AggregateRow> mean_curve;
};

/// One seed: a fresh session and task, `episodes` episodes of select/observe
/// steps each closed by the reset operation. Truncated runs are padded.
RunMetrics run_single(const ExperimentSpec& spec, std::uint64_t seed);

/// All seeds (possibly concurrently); results are merged in seed order.
ExperimentResult run_experiment(const ExperimentSpec& spec);

/// Fills a truncated run up to `target_episodes` with fictitious episodes.
/// They take the duration of the interrupted episode, or that of the
/// preceding complete episode when the interrupted one was shorter.
/// Throws NothingToPad if the run was not truncated.
RunMetrics pad_fictitious_episodes(RunMetrics run, std::size_t target_episodes);

/// Named parameter presets (car parking studies, cart-pole replication).
ExperimentSpec preset(const std::string& name);
std::vector<std::string> preset_names();

}  // namespace ttd::harness
