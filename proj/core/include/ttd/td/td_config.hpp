#pragma once

#include <cstddef>

namespace ttd {

enum class Engine { iterative, incremental };

/// Parameters of a TTD(lambda, m) learner: discount, recency factor,
/// truncation period and the engine used to compute returns.
struct TdConfig {
  double gamma = 0.95;
  double lambda = 0.9;
  std::size_t m = 25;
  Engine engine = Engine::iterative;

  /// Incremental engine only: full recomputation from the buffer every
  /// resync_period steps. Zero disables periodic resync.
  std::size_t resync_period = 1000;

  /// Incremental engine refuses gamma*lambda below this value.
  double degenerate_epsilon = 1e-6;

  double gamma_lambda() const { return gamma * lambda; }

  /// Throws ConfigError when a field is out of range, or when the
  /// incremental engine is selected with a degenerate gamma*lambda.
  void validate() const;
};

const char* to_string(Engine engine);
Engine parse_engine(const char* text);

}  // namespace ttd
