#include "ttd/td/incremental.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "ttd/errors.hpp"

namespace ttd {

IncrementalReturnState incremental_step(const IncrementalReturnState& state,
                                        double departing_reward,
                                        double departing_utility,
                                        double arriving_reward,
                                        double arriving_utility,
                                        const TdConfig& config) {
  const double gl = config.gamma_lambda();
  if (gl <= config.degenerate_epsilon) {
    throw DegenerateDiscount("incremental TTD needs gamma*lambda > " +
                             std::to_string(config.degenerate_epsilon));
  }
  const double gamma = config.gamma;
  const double lambda = config.lambda;
  const double gl_m1 = std::pow(gl, static_cast<double>(config.m - 1));
  const double gl_m = gl_m1 * gl;

  IncrementalReturnState next;
  next.s_acc = (state.s_acc - departing_reward + gl_m * arriving_reward) / gl;
  next.t_acc = (state.t_acc - gamma * (1.0 - lambda) * departing_utility +
                (1.0 - lambda) * state.w_term) /
               gl;
  next.w_term = gl_m1 * gamma * arriving_utility;
  return next;
}

IncrementalReturnState resync(const ExperienceBuffer& buffer, const TdConfig& config) {
  const std::size_t m = config.m;
  if (buffer.size() < m) {
    throw BufferNotFull("resync needs " + std::to_string(m) + " records, buffer holds " +
                        std::to_string(buffer.size()));
  }
  const double gamma = config.gamma;
  const double lambda = config.lambda;
  const double gl = config.gamma_lambda();

  // Record m-1-k holds step t+k.
  IncrementalReturnState state;
  double weight = 1.0;
  for (std::size_t k = 0; k < m; ++k) {
    const ExperienceRecord& rec = buffer[m - 1 - k];
    state.s_acc += weight * rec.reward;
    if (k + 1 < m) {
      state.t_acc += weight * gamma * (1.0 - lambda) * rec.stored_utility;
    } else {
      state.w_term = weight * gamma * rec.stored_utility;
    }
    weight *= gl;
  }
  return state;
}

std::size_t stable_resync_period(double gamma_lambda, double tolerance) {
  if (!(gamma_lambda > 0.0)) {
    throw DomainError("stable_resync_period: gamma*lambda must be positive");
  }
  if (gamma_lambda >= 1.0) {
    return std::numeric_limits<std::size_t>::max();
  }
  // Error after n steps is roughly n * eps * (1/gl)^n relative to the return;
  // keep a factor 16 of headroom for the accumulation constant.
  const double eps = 16.0 * std::numeric_limits<double>::epsilon();
  const double growth = -std::log(gamma_lambda);
  const double n = std::log(tolerance / eps) / growth;
  if (n < 1.0) return 1;
  return static_cast<std::size_t>(std::floor(n));
}

IncrementalReturn::IncrementalReturn(const TdConfig& config) : config_(config) {
  if (config_.gamma_lambda() <= config_.degenerate_epsilon) {
    throw DegenerateDiscount("incremental TTD needs gamma*lambda > " +
                             std::to_string(config_.degenerate_epsilon));
  }
}

std::optional<double> IncrementalReturn::advance(
    const ExperienceBuffer& buffer, const std::optional<ExperienceRecord>& evicted) {
  if (buffer.size() < config_.m) {
    primed_ = false;
    return std::nullopt;
  }
  if (buffer.newest().lambda_override) {
    throw ConfigError("incremental TTD does not support per-step lambda overrides");
  }
  const bool due = config_.resync_period != 0 && since_resync_ + 1 >= config_.resync_period;
  if (!primed_ || !evicted || due) {
    state_ = resync(buffer, config_);
    primed_ = true;
    since_resync_ = 0;
    ++resyncs_;
  } else {
    const ExperienceRecord& arriving = buffer.newest();
    state_ = incremental_step(state_, evicted->reward, evicted->stored_utility,
                              arriving.reward, arriving.stored_utility, config_);
    ++since_resync_;
  }
  return state_.value();
}

void IncrementalReturn::reset() {
  state_ = {};
  primed_ = false;
  since_resync_ = 0;
}

}  // namespace ttd
