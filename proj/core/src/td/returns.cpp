#include "ttd/td/returns.hpp"

#include <cmath>
#include <string>

#include "ttd/errors.hpp"

namespace ttd {

void TdConfig::validate() const {
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw ConfigError("gamma must lie in [0, 1], got " + std::to_string(gamma));
  }
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw ConfigError("lambda must lie in [0, 1], got " + std::to_string(lambda));
  }
  if (m < 1) {
    throw ConfigError("truncation period m must be at least 1");
  }
  if (engine == Engine::incremental && gamma_lambda() <= degenerate_epsilon) {
    throw ConfigError("incremental engine needs gamma*lambda > " +
                      std::to_string(degenerate_epsilon));
  }
}

const char* to_string(Engine engine) {
  return engine == Engine::incremental ? "incremental" : "iterative";
}

Engine parse_engine(const char* text) {
  const std::string s(text);
  if (s == "iterative") return Engine::iterative;
  if (s == "incremental") return Engine::incremental;
  throw ConfigError("unknown engine '" + s + "'");
}

double td0_error(double reward, double utility_next, double utility_current,
                 double gamma) {
  return reward + gamma * utility_next - utility_current;
}

double truncated_return(const ExperienceBuffer& buffer, std::size_t oldest_index,
                        const TdConfig& config) {
  if (oldest_index >= buffer.size()) {
    throw IndexOutOfRange("truncated_return: index " + std::to_string(oldest_index) +
                          " beyond buffer of size " + std::to_string(buffer.size()));
  }
  const double gamma = config.gamma;
  double z = buffer[0].reward + gamma * buffer[0].stored_utility;
  for (std::size_t k = 1; k <= oldest_index; ++k) {
    const ExperienceRecord& rec = buffer[k];
    const double lambda = rec.lambda_override.value_or(config.lambda);
    z = rec.reward + gamma * (lambda * z + (1.0 - lambda) * rec.stored_utility);
  }
  return z;
}

double ttd_return_iterative(const ExperienceBuffer& buffer, const TdConfig& config) {
  if (buffer.size() < config.m) {
    throw BufferNotFull("TTD return needs " + std::to_string(config.m) +
                        " records, buffer holds " + std::to_string(buffer.size()));
  }
  return truncated_return(buffer, config.m - 1, config);
}

std::size_t choose_m(double gamma_lambda, double ratio) {
  if (!(gamma_lambda > 0.0 && gamma_lambda < 1.0)) {
    throw DomainError("choose_m: gamma*lambda must lie in (0, 1)");
  }
  if (!(ratio > 0.0 && ratio < 1.0)) {
    throw DomainError("choose_m: ratio must lie in (0, 1)");
  }
  const double target = ratio * gamma_lambda;
  std::size_t m = 1;
  double power = gamma_lambda;
  while (!(power < target)) {
    power *= gamma_lambda;
    ++m;
  }
  return m;
}

}  // namespace ttd
