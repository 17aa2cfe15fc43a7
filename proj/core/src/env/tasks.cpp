#include "ttd/env/tasks.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "ttd/errors.hpp"

namespace ttd {

const char* to_string(EnvironmentKind kind) {
  return kind == EnvironmentKind::cart_pole ? "cart_pole" : "car_parking";
}

EnvironmentKind parse_environment(const std::string& text) {
  if (text == "car_parking" || text == "car-parking" || text == "car") {
    return EnvironmentKind::car_parking;
  }
  if (text == "cart_pole" || text == "cart-pole" || text == "cartpole") {
    return EnvironmentKind::cart_pole;
  }
  throw ConfigError("unknown environment '" + text + "'");
}

CarParkingTask::CarParkingTask(std::size_t episode_cap)
    : quantizer_(car_quantizer()), episode_cap_(episode_cap) {}

StateId CarParkingTask::observe(const CarState& state) const {
  // Headings are compared modulo a full turn.
  double theta = std::fmod(state.theta, 2.0 * std::numbers::pi);
  if (theta < 0.0) theta += 2.0 * std::numbers::pi;
  const std::array<double, 3> v{state.x, state.y, theta};
  return quantizer_(v);
}

StateId CarParkingTask::reset() {
  steps_ = 0;
  return observe(sim_.reset());
}

Transition CarParkingTask::step(ActionId action) {
  if (action >= kCarActions) throw IndexOutOfRange("car parking action out of range");
  const auto out = sim_.step(static_cast<CarAction>(action));
  ++steps_;
  Transition t{observe(out.next_state), out.reward, out.terminal};
  if (t.terminal == Terminal::none && episode_cap_ != 0 && steps_ >= episode_cap_) {
    t.terminal = Terminal::failure;  // step cap: ends the episode without a penalty
  }
  return t;
}

CartPoleTask::CartPoleTask() : quantizer_(cartpole_quantizer()) {}

StateId CartPoleTask::observe(const CartPoleState& s) const {
  const std::array<double, 4> v{s.x, s.x_dot, s.theta, s.theta_dot};
  return quantizer_(v);
}

StateId CartPoleTask::reset() { return observe(sim_.reset()); }

Transition CartPoleTask::step(ActionId action) {
  if (action >= kCartPoleActions) throw IndexOutOfRange("cart-pole action out of range");
  const auto out = sim_.step(static_cast<CartPoleAction>(action));
  return {observe(out.next_state), out.reward, out.terminal};
}

std::unique_ptr<EpisodicTask> make_task(EnvironmentKind kind, std::size_t car_episode_cap) {
  if (kind == EnvironmentKind::cart_pole) return std::make_unique<CartPoleTask>();
  return std::make_unique<CarParkingTask>(car_episode_cap);
}

}  // namespace ttd
