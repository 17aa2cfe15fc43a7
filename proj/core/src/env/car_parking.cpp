#include "ttd/env/car_parking.hpp"

#include <cmath>

#include "ttd/errors.hpp"

namespace ttd {

namespace {

double cross(const Point& o, const Point& a, const Point& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

int sign(double v) { return (v > 0.0) - (v < 0.0); }

bool on_segment(const Point& p, const Segment& s) {
  return std::min(s.a.x, s.b.x) <= p.x && p.x <= std::max(s.a.x, s.b.x) &&
         std::min(s.a.y, s.b.y) <= p.y && p.y <= std::max(s.a.y, s.b.y);
}

}  // namespace

const char* to_string(Terminal terminal) {
  switch (terminal) {
    case Terminal::none: return "none";
    case Terminal::success: return "success";
    case Terminal::failure: return "failure";
  }
  return "?";
}

double turn_radius(CarAction action, const CarDynamics& dynamics) {
  switch (action) {
    case CarAction::straight: return 0.0;
    case CarAction::left: return -dynamics.turn_radius;
    case CarAction::right: return dynamics.turn_radius;
  }
  throw DomainError("unknown car action");
}

CarState car_move(const CarState& s, CarAction action, const CarDynamics& dynamics) {
  const double r = turn_radius(action, dynamics);
  const double distance = dynamics.tau * dynamics.velocity;
  if (r == 0.0) {
    return {s.x + distance * std::cos(s.theta), s.y + distance * std::sin(s.theta), s.theta};
  }
  const double theta = s.theta + distance / r;
  return {s.x - r * std::sin(s.theta) + r * std::sin(theta),
          s.y + r * std::cos(s.theta) - r * std::cos(theta), theta};
}

std::array<Point, 4> car_corners(const CarState& s, const CarGeometry& g) {
  const double c = std::cos(s.theta);
  const double sn = std::sin(s.theta);
  const double hl = g.length / 2.0;
  const double hw = g.width / 2.0;
  // Front-left, front-right, rear-right, rear-left: consecutive corners share
  // a side.
  return {Point{s.x + hl * c - hw * sn, s.y + hl * sn + hw * c},
          Point{s.x + hl * c + hw * sn, s.y + hl * sn - hw * c},
          Point{s.x - hl * c + hw * sn, s.y - hl * sn - hw * c},
          Point{s.x - hl * c - hw * sn, s.y - hl * sn + hw * c}};
}

std::vector<Segment> car_walls(const CarGeometry& g) {
  return {
      {{g.x0, g.y0}, {g.x0, g.y1}},  // left side of garage and driving area
      {{g.x0, g.y1}, {g.x1, g.y1}},  // far side of the driving area
      {{g.x1, g.y1}, {g.x1, g.yG}},  // right side of the driving area
      {{g.x1, g.yG}, {g.xG, g.yG}},  // driving-area edge beside the garage mouth
      {{g.xG, g.yG}, {g.xG, g.y0}},  // right side of the garage
      {{g.xG, g.y0}, {g.x0, g.y0}},  // back of the garage
  };
}

bool segments_intersect(const Segment& s, const Segment& t) {
  const double d1 = cross(t.a, t.b, s.a);
  const double d2 = cross(t.a, t.b, s.b);
  const double d3 = cross(s.a, s.b, t.a);
  const double d4 = cross(s.a, s.b, t.b);
  if (sign(d1) * sign(d2) < 0 && sign(d3) * sign(d4) < 0) return true;
  if (d1 == 0.0 && on_segment(s.a, t)) return true;
  if (d2 == 0.0 && on_segment(s.b, t)) return true;
  if (d3 == 0.0 && on_segment(t.a, s)) return true;
  if (d4 == 0.0 && on_segment(t.b, s)) return true;
  return false;
}

bool car_hits_wall(const CarState& state, const CarGeometry& geometry) {
  const auto corners = car_corners(state, geometry);
  const auto walls = car_walls(geometry);
  for (std::size_t i = 0; i < corners.size(); ++i) {
    const Segment side{corners[i], corners[(i + 1) % corners.size()]};
    for (const Segment& wall : walls) {
      if (segments_intersect(side, wall)) return true;
    }
  }
  return false;
}

bool car_is_success(const CarState& state, const CarGeometry& g) {
  for (const Point& p : car_corners(state, g)) {
    if (!(p.x > g.x0 && p.x < g.xG && p.y > g.y0 && p.y < g.yG)) return false;
  }
  return true;
}

StepOutcome<CarState> car_step(const CarState& state, CarAction action,
                               const CarGeometry& geometry, const CarDynamics& dynamics) {
  StepOutcome<CarState> out{car_move(state, action, dynamics), 0.0, Terminal::none};
  if (car_hits_wall(out.next_state, geometry)) {
    out.reward = -1.0;
    out.terminal = Terminal::failure;
  } else if (car_is_success(out.next_state, geometry)) {
    out.reward = 1.0;
    out.terminal = Terminal::success;
  }
  return out;
}

const CarState& CarParking::reset() {
  state_ = start_;
  finished_ = false;
  return state_;
}

StepOutcome<CarState> CarParking::step(CarAction action) {
  if (finished_) throw EpisodeFinished("car parking episode already finished");
  auto out = car_step(state_, action, geometry_, dynamics_);
  state_ = out.next_state;
  finished_ = out.finished();
  return out;
}

}  // namespace ttd
