#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ttd/types.hpp"

namespace ttd {

/// Box quantization of a continuous state. Each variable has an ascending list
/// of thresholds; n thresholds give n + 1 bins. A value below the first
/// threshold falls in bin 0, a value equal to a threshold in the bin above it.
/// Bins are combined mixed-radix with the first variable most significant.
class Quantizer {
 public:
  explicit Quantizer(std::vector<std::vector<double>> thresholds);

  std::size_t dimensions() const { return thresholds_.size(); }
  std::size_t bins(std::size_t dim) const { return thresholds_[dim].size() + 1; }
  std::size_t num_regions() const { return regions_; }

  std::size_t bin(std::size_t dim, double value) const;
  StateId operator()(std::span<const double> values) const;

  StateId encode(std::span<const std::size_t> bins) const;
  std::vector<std::size_t> decode(StateId id) const;

  const std::vector<double>& thresholds(std::size_t dim) const { return thresholds_[dim]; }

 private:
  std::vector<std::vector<double>> thresholds_;
  std::size_t regions_ = 1;
};

inline StateId quantize(std::span<const double> values, const Quantizer& quantizer) {
  return quantizer(values);
}

/// x, y, theta thresholds of the car parking task (9 x 10 x 14 regions).
Quantizer car_quantizer();

/// x, x_dot, theta, theta_dot thresholds of the cart-pole task (3 x 3 x 6 x 3 boxes).
Quantizer cartpole_quantizer();

}  // namespace ttd
