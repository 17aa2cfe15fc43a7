#pragma once

#include <cstddef>
#include <vector>

#include "ttd/td/td_config.hpp"
#include "ttd/types.hpp"

namespace ttd {

class TabularFunction;

/// Eligibility traces e_x(t) for a tabular state space. The table grows on
/// demand; states never visited read as zero.
class TraceTable {
 public:
  TraceTable() = default;
  explicit TraceTable(std::size_t num_states) : traces_(num_states, 0.0) {}

  double operator()(StateId state) const {
    return state < traces_.size() ? traces_[state] : 0.0;
  }

  /// Decay every trace by gamma_lambda, then add 1 to the visited state.
  void visit(StateId state, double gamma_lambda);

  void clear();

  std::size_t size() const { return traces_.size(); }
  const std::vector<double>& values() const { return traces_; }

 private:
  std::vector<double> traces_;
};

void trace_update(TraceTable& traces, StateId visited_state, const TdConfig& config);

/// utilities[x] += learning_rate * td0_err * e_x(t) for every x with a nonzero
/// trace. `utilities` must have state arity.
void traces_learning_step(TabularFunction& utilities, const TraceTable& traces,
                          double td0_err, double learning_rate);

}  // namespace ttd
