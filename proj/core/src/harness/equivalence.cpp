#include "ttd/harness/equivalence.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <random>

#include "ttd/learners/boltzmann.hpp"
#include "ttd/learners/tabular_function.hpp"
#include "ttd/td/episode_log.hpp"
#include "ttd/td/incremental.hpp"
#include "ttd/td/returns.hpp"
#include "ttd/td/traces.hpp"

namespace ttd::harness {

namespace {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

std::size_t uniform_int(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

double relative_deviation(double value, double reference) {
  return std::abs(value - reference) / std::max(1.0, std::abs(reference));
}

class Check {
 public:
  Check(std::string name, double tolerance) {
    result_.name = std::move(name);
    result_.tolerance = tolerance;
  }

  void observe(double deviation) {
    result_.max_deviation = std::max(result_.max_deviation, deviation);
    if (!(deviation <= result_.tolerance)) result_.passed = false;
  }
  void count_trial() { ++result_.trials; }

  CheckResult result() const { return result_; }

 private:
  CheckResult result_;
};

// Oldest-to-newest rewards and stored utilities loaded into a buffer.
ExperienceBuffer make_buffer(const std::vector<double>& rewards,
                             const std::vector<double>& utilities) {
  ExperienceBuffer buffer(rewards.size());
  for (std::size_t i = 0; i < rewards.size(); ++i) {
    buffer.push({0, 0, rewards[i], utilities[i], std::nullopt});
  }
  return buffer;
}

// Term-by-term evaluation of the truncated return for steps oldest..newest.
double closed_form_return(const std::vector<double>& r, const std::vector<double>& u,
                          double gamma, double lambda) {
  const std::size_t m = r.size();
  const double gl = gamma * lambda;
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < m; ++k) {
    total += std::pow(gl, static_cast<double>(k)) * (r[k] + gamma * (1.0 - lambda) * u[k]);
  }
  total += std::pow(gl, static_cast<double>(m - 1)) * (r[m - 1] + gamma * u[m - 1]);
  return total;
}

struct Trajectory {
  std::vector<StateId> states;
  std::vector<double> rewards;
  std::vector<double> utility;  // frozen U per state id
  std::size_t num_states = 0;

  double u_next(std::size_t t) const {
    return t + 1 < states.size() ? utility[states[t + 1]] : 0.0;
  }
};

Trajectory random_trajectory(Rng& rng, std::size_t max_len, std::size_t max_states) {
  Trajectory tr;
  tr.num_states = uniform_int(rng, 1, max_states);
  const std::size_t len = uniform_int(rng, 1, max_len);
  for (std::size_t s = 0; s < tr.num_states; ++s) tr.utility.push_back(uniform(rng, -1.0, 1.0));
  for (std::size_t t = 0; t < len; ++t) {
    tr.states.push_back(static_cast<StateId>(uniform_int(rng, 0, tr.num_states - 1)));
    tr.rewards.push_back(uniform(rng, -1.0, 1.0));
  }
  return tr;
}

// Delta_t^lambda as the double sum over TD(0) errors.
double direct_td_lambda_error(const Trajectory& tr, std::size_t t, double gamma, double gl) {
  double total = 0.0;
  double weight = 1.0;
  for (std::size_t j = t; j < tr.states.size(); ++j) {
    const double delta0 = tr.rewards[j] + gamma * tr.u_next(j) - tr.utility[tr.states[j]];
    total += weight * delta0;
    weight *= gl;
  }
  return total;
}

// z_t^lambda as the weighted sum of augmented rewards.
double direct_td_lambda_return(const Trajectory& tr, std::size_t t, double gamma,
                               double lambda) {
  double total = 0.0;
  double weight = 1.0;
  for (std::size_t j = t; j < tr.states.size(); ++j) {
    total += weight * (tr.rewards[j] + gamma * (1.0 - lambda) * tr.u_next(j));
    weight *= gamma * lambda;
  }
  return total;
}

// z_t^{lambda,m} through the buffer machinery; windows running past the end
// of the trajectory stop at the terminal step.
double buffer_truncated_return(const Trajectory& tr, std::size_t t, std::size_t m,
                               const TdConfig& config) {
  const std::size_t end = std::min(tr.states.size(), t + m);
  ExperienceBuffer buffer(end - t);
  for (std::size_t j = t; j < end; ++j) {
    buffer.push({tr.states[j], 0, tr.rewards[j], tr.u_next(j), std::nullopt});
  }
  return truncated_return(buffer, end - t - 1, config);
}

void check_recursion_vs_closed_form(Rng& rng, std::size_t trials, Check& check) {
  for (std::size_t i = 0; i < trials; ++i) {
    const std::size_t m = uniform_int(rng, 1, 200);
    TdConfig config;
    config.gamma = uniform(rng, 0.0, 1.0);
    config.lambda = uniform(rng, 0.0, 1.0);
    config.m = m;
    std::vector<double> r(m), u(m);
    for (std::size_t k = 0; k < m; ++k) {
      r[k] = uniform(rng, -1.0, 1.0);
      u[k] = uniform(rng, -1.0, 1.0);
    }
    const double recursion = ttd_return_iterative(make_buffer(r, u), config);
    check.observe(relative_deviation(recursion, closed_form_return(r, u, config.gamma,
                                                                   config.lambda)));
    check.count_trial();
  }
}

void check_incremental(Rng& rng, std::size_t trials, Check& check) {
  for (std::size_t i = 0; i < trials; ++i) {
    const double gl = uniform(rng, 0.3, 0.99);
    TdConfig config;
    config.gamma = uniform(rng, gl, 1.0);
    config.lambda = gl / config.gamma;
    config.m = uniform_int(rng, 2, 200);
    config.engine = Engine::incremental;
    config.resync_period = std::min<std::size_t>(1000, stable_resync_period(gl, 1e-10));
    const std::size_t steps = config.m + 1000;

    ExperienceBuffer buffer(config.m);
    IncrementalReturn engine(config);
    for (std::size_t s = 0; s < steps; ++s) {
      const auto evicted = buffer.push(
          {0, 0, uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0), std::nullopt});
      const auto z = engine.advance(buffer, evicted);
      if (z) check.observe(relative_deviation(*z, ttd_return_iterative(buffer, config)));
    }
    check.count_trial();
  }
}

void check_traces(Rng& rng, std::size_t trials, Check& attribution, Check& bound,
                  Check& closed_form, Check& offline) {
  for (std::size_t i = 0; i < trials; ++i) {
    const Trajectory tr = random_trajectory(rng, 50, 10);
    TdConfig config;
    config.gamma = uniform(rng, 0.0, 1.0);
    config.lambda = uniform(rng, 0.0, 1.0);
    const double gamma = config.gamma;
    const double gl = config.gamma_lambda();
    const std::size_t len = tr.states.size();

    // Eligibility traces with frozen utilities, summed into an accumulator.
    TraceTable traces(tr.num_states);
    TabularFunction totals = TabularFunction::over_states(tr.num_states);
    std::vector<std::vector<double>> visits(tr.num_states);  // visit times per state
    for (std::size_t t = 0; t < len; ++t) {
      trace_update(traces, tr.states[t], config);
      visits[tr.states[t]].push_back(static_cast<double>(t));
      const double delta0 = td0_error(tr.rewards[t], tr.u_next(t), tr.utility[tr.states[t]], gamma);
      traces_learning_step(totals, traces, delta0, 1.0);

      for (StateId x = 0; x < tr.num_states; ++x) {
        double expected = 0.0;
        for (double k : visits[x]) expected += std::pow(gl, static_cast<double>(t) - k);
        closed_form.observe(std::abs(traces(x) - expected));
      }
    }

    std::vector<double> attributed(tr.num_states, 0.0);
    for (std::size_t t = 0; t < len; ++t) {
      attributed[tr.states[t]] += direct_td_lambda_error(tr, t, gamma, gl);
    }
    for (StateId x = 0; x < tr.num_states; ++x) {
      attribution.observe(std::abs(totals(x) - attributed[x]));
    }

    EpisodeLog log;
    for (std::size_t t = 0; t < len; ++t) {
      const double u = tr.utility[tr.states[t]];
      log.append(tr.states[t], 0, tr.rewards[t], u, u);
    }

    if (gl < 1.0) {
      double u_max = 0.0;
      for (double u : tr.utility) u_max = std::max(u_max, std::abs(u));
      const double r_max = 1.0;
      for (std::size_t m : {std::size_t{1}, std::size_t{5}, std::size_t{25}}) {
        const double limit =
            std::pow(gl, static_cast<double>(m)) * (r_max / (1.0 - gl) + u_max * (1.0 + gamma));
        for (std::size_t t = 0; t < len; ++t) {
          const double gap = std::abs(direct_td_lambda_return(tr, t, gamma, config.lambda) -
                                      buffer_truncated_return(tr, t, m, config));
          bound.observe(std::max(0.0, gap - limit));
        }
      }
    }

    for (std::size_t t = 0; t < len; ++t) {
      offline.observe(relative_deviation(td_lambda_return_offline(log, t, config),
                                         buffer_truncated_return(tr, t, len - t, config)));
    }
    attribution.count_trial();
    bound.count_trial();
    closed_form.count_trial();
    offline.count_trial();
  }
}

void check_lambda_endpoints(Rng& rng, std::size_t trials, Check& check) {
  for (std::size_t i = 0; i < trials; ++i) {
    const std::size_t m = uniform_int(rng, 1, 60);
    std::vector<double> r(m), u(m);
    for (std::size_t k = 0; k < m; ++k) {
      r[k] = uniform(rng, -1.0, 1.0);
      u[k] = uniform(rng, -1.0, 1.0);
    }
    const ExperienceBuffer buffer = make_buffer(r, u);
    TdConfig config;
    config.gamma = uniform(rng, 0.0, 1.0);
    config.m = m;

    config.lambda = 0.0;
    check.observe(relative_deviation(ttd_return_iterative(buffer, config),
                                     r[0] + config.gamma * u[0]));

    config.lambda = 1.0;
    double corrected = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
      corrected += std::pow(config.gamma, static_cast<double>(k)) * r[k];
    }
    corrected += std::pow(config.gamma, static_cast<double>(m)) * u[m - 1];
    check.observe(relative_deviation(ttd_return_iterative(buffer, config), corrected));
    check.count_trial();
  }
}

void check_boltzmann(Rng& rng, std::size_t trials, Check& normalization, Check& shift) {
  for (std::size_t i = 0; i < trials; ++i) {
    std::vector<double> merits(uniform_int(rng, 1, 16));
    for (double& v : merits) v = uniform(rng, -5.0, 5.0);
    const double temperature = std::exp(uniform(rng, std::log(1e-4), std::log(10.0)));
    const auto p = boltzmann_probabilities(merits, temperature);
    double total = 0.0;
    for (double v : p) total += v;
    normalization.observe(std::abs(total - 1.0));

    const double c = uniform(rng, -100.0, 100.0);
    std::vector<double> shifted = merits;
    for (double& v : shifted) v += c;
    const auto q = boltzmann_probabilities(shifted, temperature);
    for (std::size_t k = 0; k < p.size(); ++k) shift.observe(std::abs(p[k] - q[k]));
    normalization.count_trial();
    shift.count_trial();
  }
}

}  // namespace

bool EquivalenceReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

EquivalenceReport equivalence_report(std::size_t trials, std::uint64_t seed) {
  EquivalenceReport report;
  if (trials == 0) return report;

  Rng rng(seed);
  Check recursion("recursion_vs_closed_form", 1e-12);
  Check incremental("incremental_vs_iterative", 1e-9);
  Check attribution("traces_vs_lambda_error_attribution", 1e-9);
  Check bound("truncation_bound_excess", 1e-12);
  Check closed_form("trace_closed_form", 1e-12);
  Check offline("offline_return_vs_recursion", 1e-12);
  Check endpoints("lambda_endpoints", 1e-12);
  Check normalization("boltzmann_normalization", 1e-12);
  Check shift("boltzmann_shift_invariance", 1e-12);

  check_recursion_vs_closed_form(rng, trials, recursion);
  check_incremental(rng, trials, incremental);
  check_traces(rng, trials, attribution, bound, closed_form, offline);
  check_lambda_endpoints(rng, trials, endpoints);
  check_boltzmann(rng, trials, normalization, shift);

  for (const Check* c : {&recursion, &incremental, &attribution, &bound, &closed_form, &offline,
                         &endpoints, &normalization, &shift}) {
    report.checks.push_back(c->result());
  }
  return report;
}

void write_report(std::ostream& out, const EquivalenceReport& report) {
  const auto flags = out.flags();
  const auto precision = out.precision(3);
  out << std::scientific;
  for (const auto& c : report.checks) {
    out << (c.passed ? "PASS " : "FAIL ") << std::left << std::setw(36) << c.name
        << " trials " << c.trials << "  max deviation " << c.max_deviation << "  tolerance "
        << c.tolerance << '\n';
  }
  out << (report.passed() ? "all checks passed" : "some checks FAILED") << '\n';
  out.flags(flags);
  out.precision(precision);
}

}  // namespace ttd::harness
