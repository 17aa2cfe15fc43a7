#include "ttd/learners/boltzmann.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ttd/errors.hpp"

namespace ttd {

std::vector<double> boltzmann_probabilities(std::span<const double> merits,
                                            double temperature) {
  if (merits.empty()) throw EmptyActionSet("boltzmann selection over an empty action set");
  if (!(temperature > 0.0)) {
    throw DomainError("Boltzmann temperature must be positive, got " +
                      std::to_string(temperature));
  }
  const double top = *std::max_element(merits.begin(), merits.end());
  std::vector<double> p(merits.size());
  double total = 0.0;
  for (std::size_t i = 0; i < merits.size(); ++i) {
    p[i] = std::exp((merits[i] - top) / temperature);
    total += p[i];
  }
  for (double& v : p) v /= total;
  return p;
}

ActionId sample_action(std::span<const double> probabilities, double uniform01) {
  if (probabilities.empty()) throw EmptyActionSet("cannot sample from an empty action set");
  double cumulative = 0.0;
  for (std::size_t i = 0; i < probabilities.size(); ++i) {
    cumulative += probabilities[i];
    if (uniform01 < cumulative) return static_cast<ActionId>(i);
  }
  // Rounding left the cumulative sum just below 1: take the last action with
  // nonzero probability.
  for (std::size_t i = probabilities.size(); i-- > 0;) {
    if (probabilities[i] > 0.0) return static_cast<ActionId>(i);
  }
  return 0;
}

}  // namespace ttd
