#include "ttd/td/traces.hpp"

#include "ttd/errors.hpp"
#include "ttd/learners/tabular_function.hpp"

namespace ttd {

void TraceTable::visit(StateId state, double gamma_lambda) {
  for (double& e : traces_) e *= gamma_lambda;
  if (state >= traces_.size()) traces_.resize(static_cast<std::size_t>(state) + 1, 0.0);
  traces_[state] += 1.0;
}

void TraceTable::clear() {
  for (double& e : traces_) e = 0.0;
}

void trace_update(TraceTable& traces, StateId visited_state, const TdConfig& config) {
  traces.visit(visited_state, config.gamma_lambda());
}

void traces_learning_step(TabularFunction& utilities, const TraceTable& traces,
                          double td0_err, double learning_rate) {
  if (utilities.arity() != Arity::state) {
    throw ArityMismatch("traces_learning_step needs a state-valued function");
  }
  if (td0_err == 0.0) return;
  const auto& values = traces.values();
  for (std::size_t x = 0; x < values.size(); ++x) {
    if (values[x] != 0.0) {
      utilities.update(static_cast<StateId>(x), td0_err * values[x], learning_rate);
    }
  }
}

}  // namespace ttd
