#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "ttd/errors.hpp"
#include "ttd/harness/car_oracle.hpp"
#include "ttd/harness/equivalence.hpp"
#include "ttd/harness/experiment.hpp"
#include "ttd/harness/metrics_io.hpp"

using namespace ttd;
using namespace ttd::harness;

namespace {

EpisodeMetrics episode(std::size_t duration, double reward = 0.0) {
  EpisodeMetrics e;
  e.duration = duration;
  e.total_reward = reward;
  e.avg_reward_per_step = duration ? reward / double(duration) : 0.0;
  return e;
}

RunMetrics run_of(std::initializer_list<std::size_t> durations) {
  RunMetrics r;
  for (std::size_t d : durations) r.episodes.push_back(episode(d));
  return r;
}

ExperimentSpec tiny_car_spec(std::size_t runs, std::size_t episodes) {
  ExperimentSpec spec = preset("study1-lambda0.9");
  spec.seeds = derive_seeds(100, runs);
  spec.episodes = episodes;
  return spec;
}

std::string run_csv(const RunMetrics& run) {
  std::ostringstream out;
  write_run_csv(out, run);
  return out.str();
}

}  // namespace

TEST_SUITE("experiment") {
  TEST_CASE("seed derivation") {
    CHECK(derive_seeds(7, 3) == std::vector<std::uint64_t>{7, 8, 9});
    CHECK(derive_seeds(7, 0).empty());
  }

  TEST_CASE("validation happens before any run") {
    ExperimentSpec spec = tiny_car_spec(1, 1);
    spec.seeds.clear();
    CHECK_THROWS_AS(run_experiment(spec), ConfigError);
    spec = tiny_car_spec(1, 1);
    spec.learner.td.lambda = 2.0;
    CHECK_THROWS_AS(run_experiment(spec), ConfigError);
    spec = tiny_car_spec(1, 0);
    CHECK_THROWS_AS(run_experiment(spec), ConfigError);
    spec = tiny_car_spec(1, 1);
    spec.step_cap_total = 0;
    CHECK_THROWS_AS(run_experiment(spec), ConfigError);
  }

  TEST_CASE("one run, one episode") {
    const auto result = run_experiment(tiny_car_spec(1, 1));
    REQUIRE(result.runs.size() == 1);
    REQUIRE(result.runs[0].episodes.size() == 1);
    REQUIRE(result.mean_curve.size() == 1);
    const auto& e = result.runs[0].episodes[0];
    CHECK(e.duration > 0);
    CHECK(e.avg_reward_per_step == doctest::Approx(e.total_reward / double(e.duration)));
    const std::string csv = run_csv(result.runs[0]);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);
    CHECK(csv.rfind("episode,duration,total_reward,avg_reward_per_step,padded\n", 0) == 0);
  }

  TEST_CASE("same seeds, same bytes, any thread count") {
    auto spec = tiny_car_spec(3, 4);
    spec.threads = 1;
    const auto a = run_experiment(spec);
    spec.threads = 3;
    const auto b = run_experiment(spec);
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(a.runs[i].seed == spec.seeds[i]);
      CHECK(run_csv(a.runs[i]) == run_csv(b.runs[i]));
    }
    std::ostringstream ca, cb;
    write_aggregate_csv(ca, a.mean_curve);
    write_aggregate_csv(cb, b.mean_curve);
    CHECK(ca.str() == cb.str());
  }

  TEST_CASE("step budget truncates and pads") {
    ExperimentSpec spec = preset("cartpole");
    spec.seeds = {1};
    spec.episodes = 50;
    spec.step_cap_total = 300;
    const auto r = run_single(spec, 1);
    CHECK(r.truncated());
    CHECK(r.total_steps == 300);
    CHECK(r.episodes.size() == 50);
    CHECK(r.episodes.back().padded);
    std::size_t real_steps = r.interrupted->duration;
    for (const auto& e : r.episodes) {
      if (!e.padded) real_steps += e.duration;
    }
    CHECK(real_steps == 300);
  }

  TEST_CASE("cart-pole rewards") {
    ExperimentSpec spec = preset("cartpole");
    spec.seeds = {3};
    spec.episodes = 5;
    spec.step_cap_total.reset();
    const auto r = run_single(spec, 3);
    for (const auto& e : r.episodes) {
      CHECK(e.total_reward == -1.0);
      CHECK(e.outcome == Terminal::failure);
    }
  }
}

TEST_SUITE("padding") {
  TEST_CASE("long interrupted episode pads with its own duration") {
    RunMetrics r = run_of({100, 80000});
    r.interrupted = episode(120000);
    const auto p = pad_fictitious_episodes(r, 5);
    REQUIRE(p.episodes.size() == 5);
    for (std::size_t i = 2; i < 5; ++i) {
      CHECK(p.episodes[i].duration == 120000);
      CHECK(p.episodes[i].padded);
    }
    CHECK_FALSE(p.episodes[1].padded);
  }

  TEST_CASE("short interrupted episode pads with the preceding duration") {
    RunMetrics r = run_of({100, 80000});
    r.interrupted = episode(500);
    const auto p = pad_fictitious_episodes(r, 4);
    CHECK(p.episodes[2].duration == 80000);
    CHECK(p.episodes[3].duration == 80000);
  }

  TEST_CASE("interrupted first episode") {
    RunMetrics r;
    r.interrupted = episode(500000);
    const auto p = pad_fictitious_episodes(r, 3);
    REQUIRE(p.episodes.size() == 3);
    CHECK(p.episodes[0].duration == 500000);
  }

  TEST_CASE("complete runs cannot be padded") {
    CHECK_THROWS_AS(pad_fictitious_episodes(run_of({1, 2}), 4), NothingToPad);
  }

  TEST_CASE("padding never lowers the mean below naive padding") {
    // Naive padding repeats the interrupted duration; the rule only ever
    // substitutes a longer preceding duration.
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<std::size_t> dur(1, 200000), count(0, 9);
    for (int trial = 0; trial < 1000; ++trial) {
      std::vector<RunMetrics> padded, naive;
      for (int k = 0; k < 4; ++k) {
        RunMetrics r;
        const std::size_t complete = count(rng);
        for (std::size_t i = 0; i < complete; ++i) r.episodes.push_back(episode(dur(rng)));
        if (k % 2 == 0) {
          r.interrupted = episode(dur(rng));
          RunMetrics plain = r;
          while (plain.episodes.size() < 10) {
            auto e = *r.interrupted;
            e.padded = true;
            plain.episodes.push_back(e);
          }
          padded.push_back(pad_fictitious_episodes(r, 10));
          naive.push_back(plain);
        } else {
          while (r.episodes.size() < 10) r.episodes.push_back(episode(dur(rng)));
          padded.push_back(r);
          naive.push_back(r);
        }
      }
      const auto a = aggregate(padded, 5);
      const auto b = aggregate(naive, 5);
      for (std::size_t i = 0; i < 10; ++i) REQUIRE(a[i].mean_duration >= b[i].mean_duration);
    }
  }
}

TEST_SUITE("metrics") {
  TEST_CASE("window means") {
    const RunMetrics r = run_of({10, 20, 30, 40, 50, 60, 70});
    const auto w = window_mean_duration(r, 5);
    CHECK(w[0] == 10.0);
    CHECK(w[1] == 15.0);
    CHECK(w[4] == 30.0);
    CHECK(w[6] == 50.0);
  }

  TEST_CASE("window reward per step is pooled over the window") {
    RunMetrics r;
    r.episodes = {episode(10, 1.0), episode(30, -1.0), episode(20, 1.0)};
    const auto w = window_reward_per_step(r, 2);
    CHECK(w[0] == doctest::Approx(0.1));
    CHECK(w[1] == doctest::Approx(0.0));
    CHECK(w[2] == doctest::Approx(0.0));
  }

  TEST_CASE("cross-run mean is the plain mean") {
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<std::size_t> dur(1, 1000);
    std::vector<RunMetrics> runs(7);
    for (auto& r : runs)
      for (int i = 0; i < 12; ++i) r.episodes.push_back(episode(dur(rng), double(i % 3) - 1.0));
    const auto rows = aggregate(runs, 5);
    REQUIRE(rows.size() == 12);
    for (std::size_t i = 0; i < 12; ++i) {
      double d = 0.0, rew = 0.0, wd = 0.0;
      for (const auto& r : runs) {
        d += double(r.episodes[i].duration);
        rew += r.episodes[i].total_reward;
        wd += window_mean_duration(r, 5)[i];
      }
      CHECK(rows[i].episode == i + 1);
      CHECK(rows[i].mean_duration == doctest::Approx(d / 7.0).epsilon(1e-12));
      CHECK(rows[i].mean_total_reward == doctest::Approx(rew / 7.0).epsilon(1e-12));
      CHECK(rows[i].mean_window_duration == doctest::Approx(wd / 7.0).epsilon(1e-12));
    }
    runs[2].episodes.pop_back();
    CHECK_THROWS_AS(aggregate(runs, 5), ConfigError);
  }

  TEST_CASE("first success and longest episode") {
    RunMetrics r = run_of({5, 9, 3});
    r.episodes[1].outcome = Terminal::success;
    r.episodes[2].outcome = Terminal::success;
    CHECK(r.first_success_episode() == 2);
    CHECK(r.longest_episode() == 9);
    r.interrupted = episode(12);
    CHECK(r.longest_episode() == 12);
  }

  TEST_CASE("aggregate csv round trip and plot columns") {
    std::vector<RunMetrics> runs{run_of({1, 2, 3}), run_of({3, 4, 5})};
    const auto rows = aggregate(runs, 2);
    std::stringstream io;
    write_aggregate_csv(io, rows);
    const auto back = read_aggregate_csv(io);
    REQUIRE(back.size() == 3);
    CHECK(back[2].mean_duration == 4.0);
    CHECK(back[1].mean_window_duration == doctest::Approx(2.5));

    std::ostringstream plot;
    write_plot_columns(plot, {"a", "b"}, {rows, {rows[0]}}, "mean_duration");
    const std::string text = plot.str();
    CHECK(text.find("a") != std::string::npos);
    CHECK(text.find('?') != std::string::npos);  // series b has no row 2
    CHECK(column_value(rows[0], "mean_duration") == 2.0);
    CHECK_THROWS_AS(column_value(rows[0], "median"), ConfigError);

    std::istringstream bad("episode,mean_duration\n1,x\n");
    CHECK_THROWS_AS(read_aggregate_csv(bad), ParseError);
  }

  TEST_CASE("padded flag in run csv") {
    RunMetrics r = run_of({4});
    r.interrupted = episode(2);
    const std::string csv = run_csv(pad_fictitious_episodes(r, 2));
    CHECK(csv.find("1,4,0,0,0\n") != std::string::npos);
    CHECK(csv.find("2,4,0,0,1\n") != std::string::npos);
  }
}

TEST_SUITE("presets") {
  TEST_CASE("parameter tables") {
    struct Row {
      const char* name;
      double lambda;
      std::size_t m;
      double rate;
    };
    const Row rows[] = {{"study1-lambda0", 0.0, 25, 0.7},   {"study1-lambda0.3", 0.3, 25, 0.5},
                        {"study1-lambda0.5", 0.5, 25, 0.5}, {"study1-lambda0.7", 0.7, 25, 0.5},
                        {"study1-lambda0.8", 0.8, 25, 0.5}, {"study1-lambda0.9", 0.9, 25, 0.25},
                        {"study1-lambda1", 1.0, 25, 0.25},  {"study2-m5", 0.9, 5, 0.25},
                        {"study2-m10", 0.9, 10, 0.25},      {"study2-m15", 0.9, 15, 0.25},
                        {"study2-m20", 0.9, 20, 0.25}};
    for (const auto& row : rows) {
      const auto spec = preset(row.name);
      CAPTURE(row.name);
      CHECK(spec.environment == EnvironmentKind::car_parking);
      CHECK(spec.learner.algorithm == Algorithm::ahc);
      CHECK(spec.learner.td.lambda == row.lambda);
      CHECK(spec.learner.td.m == row.m);
      CHECK(spec.learner.td.gamma == 0.95);
      CHECK(spec.learner.alpha == row.rate);
      CHECK(spec.learner.beta == row.rate);
      CHECK(spec.learner.temperature == 0.02);
      CHECK(spec.episodes == 250);
      CHECK(spec.runs() == 25);
    }
    const auto cp = preset("cartpole");
    CHECK(cp.environment == EnvironmentKind::cart_pole);
    CHECK(cp.learner.alpha == 0.1);
    CHECK(cp.learner.beta == 0.05);
    CHECK(cp.learner.temperature == 0.0001);
    CHECK(cp.step_cap_total == 500000);
    CHECK(cp.runs() == 10);
    CHECK(cp.episodes == 100);
    CHECK_THROWS_AS(preset("study3"), ConfigError);
    CHECK(preset_names().size() == 12);
  }
}

TEST_SUITE("equivalence_report") {
  TEST_CASE("no trials, no checks") {
    const auto r = equivalence_report(0, 1);
    CHECK(r.checks.empty());
    CHECK(r.passed());
  }

  TEST_CASE("default trial count passes and is reproducible") {
    const auto a = equivalence_report(1000, 42);
    const auto b = equivalence_report(1000, 42);
    CHECK(a.passed());
    REQUIRE(a.checks.size() == b.checks.size());
    for (std::size_t i = 0; i < a.checks.size(); ++i) {
      CAPTURE(a.checks[i].name);
      CHECK(a.checks[i].passed);
      CHECK(a.checks[i].max_deviation == b.checks[i].max_deviation);
      CHECK(a.checks[i].trials == 1000);
    }
    std::ostringstream out;
    write_report(out, a);
    CHECK(out.str().find("all checks passed") != std::string::npos);
  }
}

TEST_SUITE("car_oracle") {
  TEST_CASE("short approach through the garage mouth") {
    const CarState near{0.0, 3.5, 3.0 * std::numbers::pi / 2.0};
    CHECK(parking_steps_lower_bound(near) == 5);
    const auto result = shortest_parking_path(near, {}, {}, 10);
    REQUIRE(result.depth);
    CHECK(*result.depth == 6);
    // Replay the path with the simulator.
    CarState s = near;
    for (std::size_t i = 0; i < result.path.size(); ++i) {
      const auto out = car_step(s, result.path[i]);
      CHECK(out.terminal == (i + 1 == result.path.size() ? Terminal::success : Terminal::none));
      s = out.next_state;
    }
  }

  TEST_CASE("lower bound never exceeds the true distance") {
    const CarState near{0.0, 3.5, 3.0 * std::numbers::pi / 2.0};
    const auto result = shortest_parking_path(near, {}, {}, 10);
    REQUIRE(result.depth);
    CarState s = near;
    std::size_t remaining = *result.depth;
    for (CarAction a : result.path) {
      CHECK(parking_steps_lower_bound(s) <= remaining);
      s = car_move(s, a);
      --remaining;
    }
    CHECK(parking_steps_lower_bound(s) == 0);
  }

  TEST_CASE("depth limit") {
    const auto result = shortest_parking_path(CarState{}, {}, {}, 5);
    CHECK_FALSE(result.depth);
  }
}
