#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "ttd/env/outcome.hpp"
#include "ttd/types.hpp"

namespace ttd {

/// Pose of the car: center coordinates in meters and the angle between the
/// car's axis and the x axis in radians.
struct CarState {
  double x = 6.15;
  double y = 10.47;
  double theta = 3.7;
};

enum class CarAction : ActionId { straight = 0, left = 1, right = 2 };

inline constexpr std::size_t kCarActions = 3;

/// Car size and the layout of the garage and driving area. The garage is
/// [x0, xG] x [y0, yG]; the driving area [x0, x1] x [yG, y1] sits above it and
/// the garage mouth is the segment y = yG, x0 < x < xG.
struct CarGeometry {
  double width = 2.0;
  double length = 4.0;
  double x0 = -1.5;
  double xG = 1.5;
  double x1 = 8.5;
  double y0 = -3.0;
  double yG = 3.0;
  double y1 = 13.0;
};

struct CarDynamics {
  double velocity = 1.0;     // m/s
  double tau = 0.5;          // s
  double turn_radius = 5.0;  // m; left turns use -turn_radius
};

struct Point {
  double x = 0.0;
  double y = 0.0;
};

struct Segment {
  Point a;
  Point b;
};

/// Signed turn radius for an action: 0 straight, -r left, +r right.
double turn_radius(CarAction action, const CarDynamics& dynamics);

/// One step of the arc/straight-line kinematics, without collision tests.
CarState car_move(const CarState& state, CarAction action, const CarDynamics& dynamics = {});

std::array<Point, 4> car_corners(const CarState& state, const CarGeometry& geometry = {});

/// Wall segments: the driving-area boundary without the garage mouth and the
/// garage's three closed sides.
std::vector<Segment> car_walls(const CarGeometry& geometry = {});

/// Closed-segment intersection (touching counts).
bool segments_intersect(const Segment& s, const Segment& t);

/// True when any side of the car touches or crosses a wall.
bool car_hits_wall(const CarState& state, const CarGeometry& geometry = {});

/// True when all four corners lie strictly inside the garage.
bool car_is_success(const CarState& state, const CarGeometry& geometry = {});

/// Move, then test for a wall hit (reward -1) and, failing that, for a
/// successful park (reward +1).
StepOutcome<CarState> car_step(const CarState& state, CarAction action,
                               const CarGeometry& geometry = {},
                               const CarDynamics& dynamics = {});

/// Stateful episode wrapper; step() after a terminal outcome throws
/// EpisodeFinished.
class CarParking {
 public:
  explicit CarParking(CarGeometry geometry = {}, CarDynamics dynamics = {},
                      CarState start = {})
      : geometry_(geometry), dynamics_(dynamics), start_(start), state_(start) {}

  const CarState& reset();
  StepOutcome<CarState> step(CarAction action);

  const CarState& state() const { return state_; }
  bool finished() const { return finished_; }
  const CarGeometry& geometry() const { return geometry_; }
  const CarDynamics& dynamics() const { return dynamics_; }

 private:
  CarGeometry geometry_;
  CarDynamics dynamics_;
  CarState start_;
  CarState state_;
  bool finished_ = false;
};

}  // namespace ttd
