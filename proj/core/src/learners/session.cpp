#include "ttd/learners/session.hpp"

#include <vector>

#include "ttd/errors.hpp"
#include "ttd/learners/boltzmann.hpp"
#include "ttd/td/returns.hpp"

namespace ttd {

LearnerSession::LearnerSession(const LearnerConfig& config, std::size_t num_states,
                               std::size_t num_actions, std::uint64_t seed)
    : config_(config),
      engine_(config.td.engine),
      evaluation_(TabularFunction::over_states(num_states)),
      action_values_(TabularFunction::over_state_actions(num_states, num_actions)),
      buffer_(config.td.m),
      rng_(seed) {
  // A degenerate gamma*lambda cannot drive the incremental recurrences; the
  // iterative engine computes the same returns.
  if (engine_ == Engine::incremental &&
      config_.td.gamma_lambda() <= config_.td.degenerate_epsilon) {
    engine_ = Engine::iterative;
  }
  TdConfig checked = config_.td;
  checked.engine = engine_;
  LearnerConfig validated = config_;
  validated.td = checked;
  validated.validate();
  if (engine_ == Engine::incremental) incremental_.emplace(checked);
}

std::span<const double> LearnerSession::merits(StateId state) const {
  return action_values_.row(state);
}

double LearnerSession::bootstrap(StateId state) const {
  if (config_.algorithm == Algorithm::q_learning) return action_values_.max_value(state);
  return evaluation_(state);
}

ActionId LearnerSession::select_action(StateId state) {
  const PolicySample sample = boltzmann_select(merits(state), config_.temperature, rng_);
  force_action(state, sample.action);
  return sample.action;
}

void LearnerSession::force_action(StateId state, ActionId action) {
  if (config_.adaptive_lambda && !buffer_.empty()) {
    const auto row = merits(state);
    if (row[action] < action_values_.max_value(state)) {
      // The return through the preceding step must not follow this
      // exploratory action.
      buffer_.newest().lambda_override = 0.0;
    }
  }
  pending_ = ExperienceRecord{state, action, 0.0, 0.0, std::nullopt};
}

void LearnerSession::observe(double reward, StateId next_state) {
  if (!pending_) throw Error("observe() called without a selected action");
  ExperienceRecord record = *pending_;
  pending_.reset();
  record.reward = reward;
  record.stored_utility = bootstrap(next_state);
  const auto evicted = buffer_.push(record);
  if (!buffer_.full()) return;  // warm-up: the buffer only fills

  double z = 0.0;
  if (incremental_) {
    z = *incremental_->advance(buffer_, evicted);
  } else {
    z = ttd_return_iterative(buffer_, config_.td);
  }
  learn(buffer_.oldest(), z, false);
}

void LearnerSession::finish_episode(double final_reward) {
  if (!pending_) throw Error("finish_episode() called without a selected action");
  ExperienceRecord record = *pending_;
  pending_.reset();
  record.reward = final_reward;
  record.stored_utility = 0.0;  // no successor state
  buffer_.push(record);

  // Every real record left in the window gets exactly one update, oldest
  // first; its return runs to the end of the episode and fictitious steps
  // beyond it contribute nothing.
  const std::size_t n = buffer_.size();
  std::vector<double> returns(n);
  returns[0] = buffer_[0].reward;
  for (std::size_t k = 1; k < n; ++k) {
    const ExperienceRecord& rec = buffer_[k];
    const double lambda = rec.lambda_override.value_or(config_.td.lambda);
    returns[k] = rec.reward + config_.td.gamma * (lambda * returns[k - 1] +
                                                  (1.0 - lambda) * rec.stored_utility);
  }
  for (std::size_t k = n; k-- > 0;) learn(buffer_[k], returns[k], true);
  buffer_.clear();
  if (incremental_) incremental_->reset();
}

void LearnerSession::abandon_episode() {
  pending_.reset();
  buffer_.clear();
  if (incremental_) incremental_->reset();
}

void LearnerSession::learn(const ExperienceRecord& record, double z, bool during_reset) {
  switch (config_.algorithm) {
    case Algorithm::ahc:
      ahc_learn(evaluation_, action_values_, record, z, config_);
      break;
    case Algorithm::q_learning:
      q_learn(action_values_, record, z, config_);
      break;
    case Algorithm::advantage_updating:
      advantage_learn(action_values_, evaluation_, record, z, config_);
      break;
  }
  ++updates_;
  if (observer_) observer_(UpdateEvent{record, z, during_reset});
}

}  // namespace ttd
