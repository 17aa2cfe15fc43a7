#pragma once

#include <cstddef>
#include <optional>

#include "ttd/td/experience_buffer.hpp"
#include "ttd/td/td_config.hpp"

namespace ttd {

/// Decomposition of the TTD return into a discounted reward sum, a discounted
/// utility sum and the horizon correction term.
struct IncrementalReturnState {
  double s_acc = 0.0;
  double t_acc = 0.0;
  double w_term = 0.0;

  double value() const { return s_acc + t_acc + w_term; }
};

/// Advances the decomposition by one time step in constant time.
/// departing_* describe the oldest record leaving the window, arriving_* the
/// record just pushed. Throws DegenerateDiscount when gamma*lambda is at or
/// below config.degenerate_epsilon.
IncrementalReturnState incremental_step(const IncrementalReturnState& state,
                                        double departing_reward,
                                        double departing_utility,
                                        double arriving_reward,
                                        double arriving_utility,
                                        const TdConfig& config);

/// Recomputes the decomposition exactly from a full buffer.
IncrementalReturnState resync(const ExperienceBuffer& buffer, const TdConfig& config);

/// Number of incremental steps after which accumulated rounding error, which
/// grows by a factor 1/(gamma*lambda) per step, can exceed `tolerance`
/// relative to the return magnitude.
std::size_t stable_resync_period(double gamma_lambda, double tolerance = 1e-10);

/// Stateful constant-time engine driven by buffer pushes. It resyncs when the
/// buffer first fills and then every resync_period steps.
class IncrementalReturn {
 public:
  explicit IncrementalReturn(const TdConfig& config);

  /// Call after every push into `buffer`; `evicted` is what push() returned.
  /// Returns the current TTD return once the buffer is full.
  std::optional<double> advance(const ExperienceBuffer& buffer,
                                const std::optional<ExperienceRecord>& evicted);

  void reset();

  const IncrementalReturnState& state() const { return state_; }
  std::size_t steps_since_resync() const { return since_resync_; }
  std::size_t resync_count() const { return resyncs_; }

 private:
  TdConfig config_;
  IncrementalReturnState state_;
  bool primed_ = false;
  std::size_t since_resync_ = 0;
  std::size_t resyncs_ = 0;
};

}  // namespace ttd
