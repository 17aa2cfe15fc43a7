#include "ttd/harness/car_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <unordered_set>
#include <utility>

namespace ttd::harness {

namespace {

constexpr double kSlack = 1e-9;

// Centers and headings from which the car can be fully inside the garage,
// found by scanning the heading and padded by the scan step so the region is a
// superset of the true one.
struct ParkingRegion {
  bool empty = true;
  double cx_lo = 0.0, cx_hi = 0.0, cy_lo = 0.0, cy_hi = 0.0;
  std::vector<std::pair<double, double>> headings;  // feasible intervals in [0, pi)
  double heading_step = 0.0;
};

ParkingRegion parking_region(const CarGeometry& g) {
  ParkingRegion region;
  const std::size_t samples = 20000;
  region.heading_step = std::numbers::pi / static_cast<double>(samples);
  const double hl = g.length / 2.0;
  const double hw = g.width / 2.0;
  const double margin = std::hypot(hl, hw) * region.heading_step;
  const double half_x = (g.xG - g.x0) / 2.0;
  const double half_y = (g.yG - g.y0) / 2.0;
  const double mid_x = (g.xG + g.x0) / 2.0;
  const double mid_y = (g.yG + g.y0) / 2.0;
  for (std::size_t i = 0; i < samples; ++i) {
    const double theta = region.heading_step * static_cast<double>(i);
    const double c = std::abs(std::cos(theta));
    const double s = std::abs(std::sin(theta));
    const double ex = std::max(0.0, hl * c + hw * s - margin);
    const double ey = std::max(0.0, hl * s + hw * c - margin);
    if (ex >= half_x || ey >= half_y) continue;
    const double lo_x = mid_x - (half_x - ex), hi_x = mid_x + (half_x - ex);
    const double lo_y = mid_y - (half_y - ey), hi_y = mid_y + (half_y - ey);
    if (region.empty) {
      region.cx_lo = lo_x;
      region.cx_hi = hi_x;
      region.cy_lo = lo_y;
      region.cy_hi = hi_y;
      region.empty = false;
    } else {
      region.cx_lo = std::min(region.cx_lo, lo_x);
      region.cx_hi = std::max(region.cx_hi, hi_x);
      region.cy_lo = std::min(region.cy_lo, lo_y);
      region.cy_hi = std::max(region.cy_hi, hi_y);
    }
    if (!region.headings.empty() &&
        region.headings.back().second + 1.5 * region.heading_step > theta) {
      region.headings.back().second = theta;
    } else {
      region.headings.emplace_back(theta, theta);
    }
  }
  return region;
}

// Distance between two headings of the symmetric car body (period pi).
double axis_distance(double a, double b) {
  double d = std::fmod(std::abs(a - b), std::numbers::pi);
  return std::min(d, std::numbers::pi - d);
}

std::size_t steps_for(double amount, double per_step) {
  if (amount <= 0.0) return 0;
  if (per_step <= 0.0) return std::numeric_limits<std::size_t>::max() / 2;
  return static_cast<std::size_t>(std::ceil(amount / per_step - kSlack));
}

std::size_t lower_bound(const CarState& state, const ParkingRegion& region,
                        const CarDynamics& dynamics) {
  if (region.empty) return std::numeric_limits<std::size_t>::max() / 2;
  const double dx = std::max({0.0, region.cx_lo - state.x, state.x - region.cx_hi});
  const double dy = std::max({0.0, region.cy_lo - state.y, state.y - region.cy_hi});
  const double per_step = dynamics.tau * dynamics.velocity;
  const std::size_t by_distance = steps_for(std::hypot(dx, dy), per_step);

  double heading_gap = std::numbers::pi;
  double axis = std::fmod(state.theta, std::numbers::pi);
  if (axis < 0.0) axis += std::numbers::pi;
  for (const auto& [lo, hi] : region.headings) {
    if (lo <= axis && axis <= hi) heading_gap = 0.0;
    heading_gap = std::min({heading_gap, axis_distance(axis, lo), axis_distance(axis, hi)});
  }
  heading_gap = std::max(0.0, heading_gap - region.heading_step);
  const std::size_t by_heading =
      steps_for(heading_gap, per_step / std::abs(dynamics.turn_radius));
  return std::max(by_distance, by_heading);
}

struct PoseKey {
  std::int64_t x, y, theta;
  bool operator==(const PoseKey&) const = default;
};

struct PoseKeyHash {
  std::size_t operator()(const PoseKey& k) const {
    std::uint64_t h = 1469598103934665603ull;
    for (std::int64_t v : {k.x, k.y, k.theta}) {
      h ^= static_cast<std::uint64_t>(v);
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

PoseKey key_of(const CarState& s, double resolution) {
  double theta = std::fmod(s.theta, 2.0 * std::numbers::pi);
  if (theta < 0.0) theta += 2.0 * std::numbers::pi;
  return {std::llround(s.x / resolution), std::llround(s.y / resolution),
          std::llround(theta / resolution)};
}

struct Node {
  CarState state;
  std::size_t parent;
  CarAction action;
};

std::vector<CarAction> trace_path(const std::vector<Node>& nodes, std::size_t index) {
  std::vector<CarAction> path;
  while (index != 0) {
    path.push_back(nodes[index].action);
    index = nodes[index].parent;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace

std::size_t parking_steps_lower_bound(const CarState& state, const CarGeometry& geometry,
                                      const CarDynamics& dynamics) {
  return lower_bound(state, parking_region(geometry), dynamics);
}

ParkingSearchResult shortest_parking_path(const CarState& start, const CarGeometry& geometry,
                                          const CarDynamics& dynamics, std::size_t max_depth,
                                          double resolution) {
  ParkingSearchResult result;
  const ParkingRegion region = parking_region(geometry);
  constexpr CarAction kActions[] = {CarAction::straight, CarAction::left, CarAction::right};

  for (std::size_t limit = std::min(max_depth, lower_bound(start, region, dynamics));
       limit <= max_depth; ++limit) {
    result.depth_limit = limit;
    std::vector<Node> nodes{{start, 0, CarAction::straight}};
    std::unordered_set<PoseKey, PoseKeyHash> seen{key_of(start, resolution)};
    std::size_t layer_begin = 0;
    std::size_t layer_end = 1;
    for (std::size_t depth = 0; depth < limit && layer_begin < layer_end; ++depth) {
      for (std::size_t i = layer_begin; i < layer_end; ++i) {
        ++result.expanded;
        for (CarAction action : kActions) {
          const auto out = car_step(nodes[i].state, action, geometry, dynamics);
          if (out.terminal == Terminal::failure) continue;
          if (out.terminal == Terminal::success) {
            nodes.push_back({out.next_state, i, action});
            result.depth = depth + 1;
            result.path = trace_path(nodes, nodes.size() - 1);
            return result;
          }
          if (depth + 1 + lower_bound(out.next_state, region, dynamics) > limit) continue;
          if (!seen.insert(key_of(out.next_state, resolution)).second) continue;
          nodes.push_back({out.next_state, i, action});
        }
      }
      layer_begin = layer_end;
      layer_end = nodes.size();
    }
  }
  return result;
}

}  // namespace ttd::harness
