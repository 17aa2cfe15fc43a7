#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>

#include "ttd/learners/learners.hpp"
#include "ttd/learners/tabular_function.hpp"
#include "ttd/td/experience_buffer.hpp"
#include "ttd/td/incremental.hpp"

namespace ttd {

/// Emitted once per learning update: the record being learned from and the
/// return it was learned towards.
struct UpdateEvent {
  ExperienceRecord record;
  double z = 0.0;
  bool during_reset = false;
};

/// A TTD(lambda, m) learner bound to one tabular task. Owns the value tables,
/// the experience buffer, the return engine and its random source; a session
/// is used from a single thread.
///
/// Per time step the caller runs select_action() and then reports the outcome
/// with observe() (non-terminal) or finish_episode() (terminal).
class LearnerSession {
 public:
  LearnerSession(const LearnerConfig& config, std::size_t num_states,
                 std::size_t num_actions, std::uint64_t seed);

  /// Boltzmann selection over the merits of `state`.
  ActionId select_action(StateId state);

  /// Selects and records a specific action instead of sampling one.
  void force_action(StateId state, ActionId action);

  /// Non-terminal transition to `next_state` with `reward`.
  void observe(double reward, StateId next_state);

  /// Terminal transition: stores the final record with zero successor utility
  /// and flushes every pending record (the reset operation).
  void finish_episode(double final_reward);

  /// Drops pending experience without learning from it, e.g. when a run is
  /// cut off by a global step budget.
  void abandon_episode();

  /// Merits used for action selection: f(x, .), Q(x, .) or A(x, .).
  std::span<const double> merits(StateId state) const;

  /// Utility stored for a successor state: V(x) or max_a Q(x, a).
  double bootstrap(StateId state) const;

  const LearnerConfig& config() const { return config_; }
  Engine effective_engine() const { return engine_; }

  /// V for AHC and advantage updating; unused by Q-learning.
  const TabularFunction& evaluation() const { return evaluation_; }
  /// f for AHC, Q for Q-learning, A for advantage updating.
  const TabularFunction& action_values() const { return action_values_; }
  TabularFunction& evaluation() { return evaluation_; }
  TabularFunction& action_values() { return action_values_; }

  const ExperienceBuffer& buffer() const { return buffer_; }
  std::size_t updates_dispatched() const { return updates_; }
  std::mt19937_64& rng() { return rng_; }

  void set_update_observer(std::function<void(const UpdateEvent&)> observer) {
    observer_ = std::move(observer);
  }

 private:
  void learn(const ExperienceRecord& record, double z, bool during_reset);

  LearnerConfig config_;
  Engine engine_;
  TabularFunction evaluation_;
  TabularFunction action_values_;
  ExperienceBuffer buffer_;
  std::optional<IncrementalReturn> incremental_;
  std::mt19937_64 rng_;
  std::optional<ExperienceRecord> pending_;
  std::size_t updates_ = 0;
  std::function<void(const UpdateEvent&)> observer_;
};

/// Selects the action for `observation` (first half of one TTD step).
inline ActionId learner_step(LearnerSession& session, StateId observation) {
  return session.select_action(observation);
}

/// End-of-episode flush; equivalent to session.finish_episode(final_reward).
inline void reset_operation(LearnerSession& session, double final_reward) {
  session.finish_episode(final_reward);
}

}  // namespace ttd
