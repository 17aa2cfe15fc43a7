#include "ttd/learners/learners.hpp"

#include <string>

#include "ttd/errors.hpp"

namespace ttd {

const char* to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::ahc: return "ahc";
    case Algorithm::q_learning: return "q";
    case Algorithm::advantage_updating: return "advantage";
  }
  return "?";
}

Algorithm parse_algorithm(const char* text) {
  const std::string s(text);
  if (s == "ahc") return Algorithm::ahc;
  if (s == "q" || s == "q_learning" || s == "q-learning") return Algorithm::q_learning;
  if (s == "advantage" || s == "au" || s == "advantage_updating") {
    return Algorithm::advantage_updating;
  }
  throw ConfigError("unknown algorithm '" + s + "'");
}

void LearnerConfig::validate() const {
  td.validate();
  if (!(alpha > 0.0)) throw ConfigError("alpha must be positive");
  if (!(beta > 0.0)) throw ConfigError("beta must be positive");
  if (!(temperature > 0.0)) throw ConfigError("temperature must be positive");
  if (adaptive_lambda && td.engine == Engine::incremental) {
    throw ConfigError("adaptive lambda requires the iterative engine");
  }
}

void ahc_learn(TabularFunction& evaluation, TabularFunction& policy,
               const ExperienceRecord& oldest, double z, const LearnerConfig& config) {
  const double v = evaluation(oldest.state);
  const double error = z - v;
  evaluation.update(oldest.state, error, config.alpha);
  policy.update(oldest.state, oldest.action, error, config.beta);
}

void q_learn(TabularFunction& q, const ExperienceRecord& oldest, double z,
             const LearnerConfig& config) {
  q.update(oldest.state, oldest.action, z - q(oldest.state, oldest.action), config.alpha);
}

void advantage_learn(TabularFunction& advantage, TabularFunction& evaluation,
                     const ExperienceRecord& oldest, double z, const LearnerConfig& config) {
  if (config.alpha == 0.0) {
    throw DegenerateAlpha("advantage updating divides by alpha; alpha must be nonzero");
  }
  const StateId x = oldest.state;
  const double a_max = advantage.max_value(x);
  const double error = a_max - advantage(x, oldest.action) + z - evaluation(x);
  advantage.update(x, oldest.action, error, config.alpha);
  const double new_max = advantage.max_value(x);
  evaluation.update(x, (new_max - a_max) / config.alpha, config.beta);
}

}  // namespace ttd
