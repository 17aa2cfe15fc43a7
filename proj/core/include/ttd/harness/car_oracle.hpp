#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "ttd/env/car_parking.hpp"

namespace ttd::harness {

struct ParkingSearchResult {
  std::optional<std::size_t> depth;  // shortest successful action sequence
  std::vector<CarAction> path;
  std::size_t expanded = 0;          // poses expanded over all passes
  std::size_t depth_limit = 0;       // limit of the final pass
};

/// Exhaustive breadth-first search over action sequences with the exact
/// continuous dynamics. Poses are deduplicated on a grid of `resolution`
/// (meters / radians) and branches are cut when a geometric lower bound on the
/// steps still needed (distance to the feasible parking region, heading
/// change) exceeds the depth limit. Limits are raised one at a time, so the
/// first depth found is the minimum.
ParkingSearchResult shortest_parking_path(const CarState& start = {},
                                          const CarGeometry& geometry = {},
                                          const CarDynamics& dynamics = {},
                                          std::size_t max_depth = 40,
                                          double resolution = 1e-6);

/// Admissible lower bound on the steps from `state` to any successful pose.
std::size_t parking_steps_lower_bound(const CarState& state, const CarGeometry& geometry = {},
                                      const CarDynamics& dynamics = {});

}  // namespace ttd::harness
