#pragma once

#include <random>
#include <span>
#include <vector>

#include "ttd/types.hpp"

namespace ttd {

struct PolicySample {
  ActionId action = 0;
  std::vector<double> probabilities;
};

/// exp(merit/T) / sum exp(merit'/T), evaluated after subtracting the largest
/// merit so tiny temperatures do not overflow.
std::vector<double> boltzmann_probabilities(std::span<const double> merits,
                                            double temperature);

/// Samples an action index from `probabilities` with one uniform draw.
ActionId sample_action(std::span<const double> probabilities, double uniform01);

template <class Rng>
PolicySample boltzmann_select(std::span<const double> merits, double temperature, Rng& rng) {
  PolicySample sample;
  sample.probabilities = boltzmann_probabilities(merits, temperature);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  sample.action = sample_action(sample.probabilities, unit(rng));
  return sample;
}

}  // namespace ttd
