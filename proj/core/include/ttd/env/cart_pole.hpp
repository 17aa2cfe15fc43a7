#pragma once

#include <cstddef>

#include "ttd/env/outcome.hpp"
#include "ttd/types.hpp"

namespace ttd {

struct CartPoleState {
  double x = 0.0;          // m
  double x_dot = 0.0;      // m/s
  double theta = 0.0;      // rad, from vertical
  double theta_dot = 0.0;  // rad/s
};

enum class CartPoleAction : ActionId { push_left = 0, push_right = 1 };

inline constexpr std::size_t kCartPoleActions = 2;

struct CartPoleParams {
  double gravity = 9.8;
  double cart_mass = 1.0;
  double pole_mass = 0.1;
  double half_length = 0.5;
  double cart_friction = 0.0005;
  double pole_friction = 0.000002;
  double force = 10.0;
  double tau = 0.02;
  double theta_limit = 0.21;
  double x_limit = 2.4;
};

struct CartPoleAccel {
  double x_ddot = 0.0;
  double theta_ddot = 0.0;
};

/// Equations of motion with cart and pole friction; sgn(0) is taken as 0.
/// theta_ddot is evaluated first and then fed into x_ddot.
CartPoleAccel cartpole_derivatives(const CartPoleState& state, double force,
                                   const CartPoleParams& params = {});

/// Explicit Euler: every variable advances by tau times its derivative at the
/// pre-step state.
CartPoleState cartpole_integrate(const CartPoleState& state, double force,
                                 const CartPoleParams& params = {});

/// Strict limits: fails when |theta| > theta_limit or |x| > x_limit.
bool cartpole_failed(const CartPoleState& state, const CartPoleParams& params = {});

StepOutcome<CartPoleState> cartpole_step(const CartPoleState& state, CartPoleAction action,
                                         const CartPoleParams& params = {});

/// Kinetic plus potential energy of cart and uniform pole.
double cartpole_energy(const CartPoleState& state, const CartPoleParams& params = {});

class CartPole {
 public:
  explicit CartPole(CartPoleParams params = {}, CartPoleState start = {})
      : params_(params), start_(start), state_(start) {}

  const CartPoleState& reset();
  StepOutcome<CartPoleState> step(CartPoleAction action);

  const CartPoleState& state() const { return state_; }
  bool finished() const { return finished_; }
  const CartPoleParams& params() const { return params_; }

 private:
  CartPoleParams params_;
  CartPoleState start_;
  CartPoleState state_;
  bool finished_ = false;
};

}  // namespace ttd
