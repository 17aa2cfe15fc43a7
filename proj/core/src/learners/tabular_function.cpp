#include "ttd/learners/tabular_function.hpp"

#include <algorithm>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

#include "ttd/errors.hpp"

namespace ttd {

TabularFunction::TabularFunction(Arity arity, std::size_t num_states,
                                 std::size_t num_actions, double initial_value)
    : arity_(arity),
      num_states_(num_states),
      num_actions_(arity == Arity::state ? 1 : num_actions),
      initial_value_(initial_value),
      table_(num_states * num_actions_, initial_value) {
  if (num_states == 0 || num_actions_ == 0) {
    throw ConfigError("tabular function needs at least one state and one action");
  }
}

std::size_t TabularFunction::index(StateId state, ActionId action) const {
  if (state >= num_states_ || action >= num_actions_) {
    throw IndexOutOfRange("table entry (" + std::to_string(state) + ", " +
                          std::to_string(action) + ") out of range");
  }
  return static_cast<std::size_t>(state) * num_actions_ + action;
}

double TabularFunction::operator()(StateId state) const {
  if (arity_ != Arity::state) throw ArityMismatch("state-action function read with a state key");
  return table_[index(state, 0)];
}

double TabularFunction::operator()(StateId state, ActionId action) const {
  if (arity_ != Arity::state_action) {
    throw ArityMismatch("state function read with a state-action key");
  }
  return table_[index(state, action)];
}

double TabularFunction::value(const TableKey& key) const {
  return key.action ? (*this)(key.state, *key.action) : (*this)(key.state);
}

std::span<const double> TabularFunction::row(StateId state) const {
  const std::size_t begin = index(state, 0);
  return {table_.data() + begin, num_actions_};
}

double TabularFunction::max_value(StateId state) const {
  const auto r = row(state);
  return *std::max_element(r.begin(), r.end());
}

ActionId TabularFunction::argmax(StateId state) const {
  const auto r = row(state);
  // max_element returns the first maximum, i.e. the lowest action id.
  return static_cast<ActionId>(std::max_element(r.begin(), r.end()) - r.begin());
}

void TabularFunction::update(const TableKey& key, double delta, double eta) {
  if (!(eta >= 0.0)) throw DomainError("update: learning rate must be non-negative");
  const bool has_action = key.action.has_value();
  if (has_action != (arity_ == Arity::state_action)) {
    throw ArityMismatch("update key shape does not match the function arity");
  }
  table_[index(key.state, key.action.value_or(0))] += eta * delta;
}

void TabularFunction::set(const TableKey& key, double value) {
  if (key.action.has_value() != (arity_ == Arity::state_action)) {
    throw ArityMismatch("set: key shape does not match the function arity");
  }
  table_[index(key.state, key.action.value_or(0))] = value;
}

void TabularFunction::reset() { std::fill(table_.begin(), table_.end(), initial_value_); }

void write_table(std::ostream& out, const TabularFunction& fn) {
  const auto old_precision = out.precision(std::numeric_limits<double>::max_digits10);
  for (std::size_t x = 0; x < fn.num_states(); ++x) {
    const auto r = fn.row(static_cast<StateId>(x));
    for (std::size_t a = 0; a < r.size(); ++a) {
      out << x;
      if (fn.arity() == Arity::state_action) out << ',' << a;
      out << ' ' << r[a] << '\n';
    }
  }
  out.precision(old_precision);
}

void read_table(std::istream& in, TabularFunction& fn) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream row(line);
    StateId state = 0;
    std::optional<ActionId> action;
    double value = 0.0;
    if (!(row >> state)) throw ParseError("table line " + std::to_string(line_no));
    if (row.peek() == ',') {
      row.get();
      ActionId a = 0;
      if (!(row >> a)) throw ParseError("table line " + std::to_string(line_no));
      action = a;
    }
    if (!(row >> value)) throw ParseError("table line " + std::to_string(line_no));
    fn.set(TableKey{state, action}, value);
  }
}

}  // namespace ttd
