#pragma once

#include <cstddef>
#include <memory>
#include <string>

#include "ttd/env/car_parking.hpp"
#include "ttd/env/cart_pole.hpp"
#include "ttd/env/outcome.hpp"
#include "ttd/env/quantizer.hpp"
#include "ttd/types.hpp"

namespace ttd {

enum class EnvironmentKind { car_parking, cart_pole };

const char* to_string(EnvironmentKind kind);
EnvironmentKind parse_environment(const std::string& text);

/// A step seen through the quantizer.
struct Transition {
  StateId next_state = 0;
  double reward = 0.0;
  Terminal terminal = Terminal::none;
};

/// Discrete-state episodic view of a continuous task.
class EpisodicTask {
 public:
  virtual ~EpisodicTask() = default;

  virtual std::size_t num_states() const = 0;
  virtual std::size_t num_actions() const = 0;
  virtual StateId reset() = 0;
  virtual Transition step(ActionId action) = 0;
};

/// Car parking with the box quantizer. Episodes that reach `episode_cap`
/// steps end as failures with reward 0; a cap of 0 disables it.
class CarParkingTask final : public EpisodicTask {
 public:
  explicit CarParkingTask(std::size_t episode_cap = 1000);

  std::size_t num_states() const override { return quantizer_.num_regions(); }
  std::size_t num_actions() const override { return kCarActions; }
  StateId reset() override;
  Transition step(ActionId action) override;

  const CarParking& simulator() const { return sim_; }
  StateId observe(const CarState& state) const;

 private:
  CarParking sim_;
  Quantizer quantizer_;
  std::size_t episode_cap_;
  std::size_t steps_ = 0;
};

class CartPoleTask final : public EpisodicTask {
 public:
  CartPoleTask();

  std::size_t num_states() const override { return quantizer_.num_regions(); }
  std::size_t num_actions() const override { return kCartPoleActions; }
  StateId reset() override;
  Transition step(ActionId action) override;

  const CartPole& simulator() const { return sim_; }
  StateId observe(const CartPoleState& state) const;

 private:
  CartPole sim_;
  Quantizer quantizer_;
};

std::unique_ptr<EpisodicTask> make_task(EnvironmentKind kind, std::size_t car_episode_cap = 1000);

}  // namespace ttd
