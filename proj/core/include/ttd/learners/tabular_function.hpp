#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "ttd/types.hpp"

namespace ttd {

enum class Arity { state, state_action };

/// Address of a table entry; `action` is present exactly for state-action
/// functions.
struct TableKey {
  StateId state = 0;
  std::optional<ActionId> action;
};

/// Look-up table over a discretized state (or state x action) space. All
/// entries start at initial_value.
class TabularFunction {
 public:
  TabularFunction(Arity arity, std::size_t num_states, std::size_t num_actions = 1,
                  double initial_value = 0.0);

  static TabularFunction over_states(std::size_t num_states, double initial_value = 0.0) {
    return TabularFunction(Arity::state, num_states, 1, initial_value);
  }
  static TabularFunction over_state_actions(std::size_t num_states, std::size_t num_actions,
                                            double initial_value = 0.0) {
    return TabularFunction(Arity::state_action, num_states, num_actions, initial_value);
  }

  Arity arity() const { return arity_; }
  std::size_t num_states() const { return num_states_; }
  std::size_t num_actions() const { return num_actions_; }
  double initial_value() const { return initial_value_; }

  double operator()(StateId state) const;
  double operator()(StateId state, ActionId action) const;
  double value(const TableKey& key) const;

  /// Action values of one state, indexed by action id.
  std::span<const double> row(StateId state) const;

  /// max over actions, ties resolved towards the lowest action id.
  double max_value(StateId state) const;
  ActionId argmax(StateId state) const;

  /// table[key] += eta * delta. Throws ArityMismatch if the key shape does
  /// not fit the function, DomainError if eta < 0.
  void update(const TableKey& key, double delta, double eta);
  void update(StateId state, double delta, double eta) { update(TableKey{state, {}}, delta, eta); }
  void update(StateId state, ActionId action, double delta, double eta) {
    update(TableKey{state, action}, delta, eta);
  }

  /// Overwrites one entry (checkpoint restore).
  void set(const TableKey& key, double value);

  void reset();

  const std::vector<double>& values() const { return table_; }

  bool operator==(const TabularFunction&) const = default;

 private:
  std::size_t index(StateId state, ActionId action) const;

  Arity arity_;
  std::size_t num_states_;
  std::size_t num_actions_;
  double initial_value_;
  std::vector<double> table_;
};

/// One line per entry, `state value` or `state,action value`, ordered by
/// state then action.
void write_table(std::ostream& out, const TabularFunction& fn);

/// Reads entries written by write_table into `fn`, which must already have the
/// right shape. Entries absent from the stream keep their current value.
void read_table(std::istream& in, TabularFunction& fn);

}  // namespace ttd
