#pragma once

#include "ttd/learners/tabular_function.hpp"
#include "ttd/td/experience_buffer.hpp"
#include "ttd/td/td_config.hpp"

namespace ttd {

enum class Algorithm { ahc, q_learning, advantage_updating };

const char* to_string(Algorithm algorithm);
Algorithm parse_algorithm(const char* text);

struct LearnerConfig {
  Algorithm algorithm = Algorithm::ahc;
  double alpha = 0.25;  // evaluation / utility learning rate
  double beta = 0.25;   // policy / secondary learning rate
  double temperature = 0.02;
  TdConfig td;

  /// Cut the return (lambda = 0) behind any step whose action did not have
  /// the maximal merit. Iterative engine only.
  bool adaptive_lambda = false;

  void validate() const;
};

/// AHC: v := V(x); V(x) += alpha (z - v); f(x, a) += beta (z - v).
void ahc_learn(TabularFunction& evaluation, TabularFunction& policy,
               const ExperienceRecord& oldest, double z, const LearnerConfig& config);

/// Q-learning: Q(x, a) += alpha (z - Q(x, a)).
void q_learn(TabularFunction& q, const ExperienceRecord& oldest, double z,
             const LearnerConfig& config);

/// Simplified advantage updating:
///   A_max := max_b A(x, b)
///   A(x, a) += alpha (A_max - A(x, a) + z - V(x))
///   V(x) += beta (max_b A(x, b) - A_max) / alpha
/// Throws DegenerateAlpha when alpha == 0.
void advantage_learn(TabularFunction& advantage, TabularFunction& evaluation,
                     const ExperienceRecord& oldest, double z, const LearnerConfig& config);

}  // namespace ttd
