#include "ttd/env/cart_pole.hpp"

#include <cmath>

#include "ttd/errors.hpp"

namespace ttd {

namespace {

double sgn(double v) { return (v > 0.0) - (v < 0.0); }

}  // namespace

CartPoleAccel cartpole_derivatives(const CartPoleState& s, double force,
                                   const CartPoleParams& p) {
  const double total_mass = p.cart_mass + p.pole_mass;
  const double sin_t = std::sin(s.theta);
  const double cos_t = std::cos(s.theta);
  const double ml = p.pole_mass * p.half_length;
  const double cart_friction = p.cart_friction * sgn(s.x_dot);

  const double inner =
      (-force - ml * s.theta_dot * s.theta_dot * sin_t + cart_friction) / total_mass;
  const double numerator =
      p.gravity * sin_t + cos_t * inner - p.pole_friction * s.theta_dot / ml;
  const double denominator =
      p.half_length * (4.0 / 3.0 - p.pole_mass * cos_t * cos_t / total_mass);
  const double theta_ddot = numerator / denominator;

  const double x_ddot =
      (force + ml * (s.theta_dot * s.theta_dot * sin_t - theta_ddot * cos_t) - cart_friction) /
      total_mass;
  return {x_ddot, theta_ddot};
}

CartPoleState cartpole_integrate(const CartPoleState& s, double force,
                                 const CartPoleParams& p) {
  const CartPoleAccel acc = cartpole_derivatives(s, force, p);
  return {s.x + p.tau * s.x_dot, s.x_dot + p.tau * acc.x_ddot,
          s.theta + p.tau * s.theta_dot, s.theta_dot + p.tau * acc.theta_ddot};
}

bool cartpole_failed(const CartPoleState& s, const CartPoleParams& p) {
  return std::abs(s.theta) > p.theta_limit || std::abs(s.x) > p.x_limit;
}

StepOutcome<CartPoleState> cartpole_step(const CartPoleState& state, CartPoleAction action,
                                         const CartPoleParams& params) {
  const double force = action == CartPoleAction::push_right ? params.force : -params.force;
  StepOutcome<CartPoleState> out{cartpole_integrate(state, force, params), 0.0,
                                 Terminal::none};
  if (cartpole_failed(out.next_state, params)) {
    out.reward = -1.0;
    out.terminal = Terminal::failure;
  }
  return out;
}

double cartpole_energy(const CartPoleState& s, const CartPoleParams& p) {
  const double l = p.half_length;
  const double mp = p.pole_mass;
  const double kinetic =
      0.5 * p.cart_mass * s.x_dot * s.x_dot +
      0.5 * mp *
          (s.x_dot * s.x_dot + 2.0 * l * s.x_dot * s.theta_dot * std::cos(s.theta) +
           l * l * s.theta_dot * s.theta_dot) +
      mp * l * l * s.theta_dot * s.theta_dot / 6.0;
  const double potential = mp * p.gravity * l * std::cos(s.theta);
  return kinetic + potential;
}

const CartPoleState& CartPole::reset() {
  state_ = start_;
  finished_ = false;
  return state_;
}

StepOutcome<CartPoleState> CartPole::step(CartPoleAction action) {
  if (finished_) throw EpisodeFinished("cart-pole episode already finished");
  auto out = cartpole_step(state_, action, params_);
  state_ = out.next_state;
  finished_ = out.finished();
  return out;
}

}  // namespace ttd
