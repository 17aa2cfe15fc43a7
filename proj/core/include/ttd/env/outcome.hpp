#pragma once

namespace ttd {

enum class Terminal { none, success, failure };

const char* to_string(Terminal terminal);

template <class State>
struct StepOutcome {
  State next_state;
  double reward = 0.0;
  Terminal terminal = Terminal::none;

  bool finished() const { return terminal != Terminal::none; }
};

}  // namespace ttd
