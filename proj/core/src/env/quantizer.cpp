#include "ttd/env/quantizer.hpp"

#include <algorithm>
#include <numbers>
#include <string>

#include "ttd/errors.hpp"

namespace ttd {

Quantizer::Quantizer(std::vector<std::vector<double>> thresholds)
    : thresholds_(std::move(thresholds)) {
  if (thresholds_.empty()) throw ConfigError("quantizer needs at least one variable");
  for (const auto& t : thresholds_) {
    if (!std::is_sorted(t.begin(), t.end()) ||
        std::adjacent_find(t.begin(), t.end()) != t.end()) {
      throw ConfigError("quantizer thresholds must be strictly ascending");
    }
    regions_ *= t.size() + 1;
  }
}

std::size_t Quantizer::bin(std::size_t dim, double value) const {
  const auto& t = thresholds_.at(dim);
  return static_cast<std::size_t>(std::upper_bound(t.begin(), t.end(), value) - t.begin());
}

StateId Quantizer::operator()(std::span<const double> values) const {
  if (values.size() != thresholds_.size()) {
    throw ArityMismatch("quantizer expects " + std::to_string(thresholds_.size()) +
                        " variables, got " + std::to_string(values.size()));
  }
  std::size_t id = 0;
  for (std::size_t d = 0; d < values.size(); ++d) id = id * bins(d) + bin(d, values[d]);
  return static_cast<StateId>(id);
}

StateId Quantizer::encode(std::span<const std::size_t> bin_indices) const {
  if (bin_indices.size() != thresholds_.size()) {
    throw ArityMismatch("quantizer encode: wrong number of bins");
  }
  std::size_t id = 0;
  for (std::size_t d = 0; d < bin_indices.size(); ++d) {
    if (bin_indices[d] >= bins(d)) throw IndexOutOfRange("quantizer encode: bin out of range");
    id = id * bins(d) + bin_indices[d];
  }
  return static_cast<StateId>(id);
}

std::vector<std::size_t> Quantizer::decode(StateId id) const {
  if (id >= regions_) throw IndexOutOfRange("quantizer decode: id out of range");
  std::vector<std::size_t> out(thresholds_.size());
  std::size_t rest = id;
  for (std::size_t d = thresholds_.size(); d-- > 0;) {
    out[d] = rest % bins(d);
    rest /= bins(d);
  }
  return out;
}

Quantizer car_quantizer() {
  using std::numbers::pi;
  std::vector<double> theta;
  for (int k = 19; k <= 31; ++k) theta.push_back(k * pi / 20.0);
  return Quantizer({{-0.5, 0.0, 0.5, 1.0, 2.0, 3.0, 4.0, 6.0},
                    {0.5, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 8.0, 10.0},
                    theta});
}

Quantizer cartpole_quantizer() {
  return Quantizer({{-0.8, 0.8},
                    {-0.5, 0.5},
                    {-0.105, -0.0175, 0.0, 0.0175, 0.105},
                    {-0.8727, 0.8727}});
}

}  // namespace ttd
