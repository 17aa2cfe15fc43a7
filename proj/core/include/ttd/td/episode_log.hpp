#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "ttd/td/td_config.hpp"
#include "ttd/types.hpp"

namespace ttd {

/// One row of an online run. For the state x_j visited at step j,
/// utility_before is U_{j-1}(x_j), read before the learning update made at
/// step j-1, and utility_after is U_j(x_j), read after it. With frozen
/// utilities the two coincide.
struct EpisodeStep {
  std::size_t step = 0;
  StateId state = 0;
  ActionId action = 0;
  double reward = 0.0;
  double utility_before = 0.0;
  double utility_after = 0.0;
};

/// A finite (absorbing) trajectory. The state after the final row is terminal
/// and has utility 0.
struct EpisodeLog {
  std::vector<EpisodeStep> steps;

  std::size_t size() const { return steps.size(); }
  bool empty() const { return steps.empty(); }
  const EpisodeStep& operator[](std::size_t j) const { return steps[j]; }

  void append(StateId state, ActionId action, double reward, double utility_before,
              double utility_after);
};

/// Text form: a header line followed by one comma-separated row per step,
/// `step,state,action,reward,utility_before,utility_after`. Reals are written
/// with enough digits to round-trip.
void write_episode_log(std::ostream& out, const EpisodeLog& log);
EpisodeLog read_episode_log(std::istream& in);

/// Non-truncated TD(lambda) return z_t^lambda over the rest of the log, with
/// terminal utility 0 after the final step. Throws IndexOutOfRange.
double td_lambda_return_offline(const EpisodeLog& log, std::size_t t,
                                const TdConfig& config);

/// TD(lambda) error Delta_t^lambda over the rest of the log, from the TD(0)
/// errors computed with the logged (frozen) utilities. Throws IndexOutOfRange.
double td_lambda_error_offline(const EpisodeLog& log, std::size_t t,
                               const TdConfig& config);

/// Sum over k = 1..horizon of (gamma*lambda)^k * (U_{t+k-1}(x_{t+k}) -
/// U_{t+k}(x_{t+k})): the online-vs-batch gap. Throws InsufficientLog when the
/// log does not reach step t + horizon.
double discrepancy_term(const EpisodeLog& log, std::size_t t, std::size_t horizon,
                        const TdConfig& config);

}  // namespace ttd
