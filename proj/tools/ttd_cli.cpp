// ttd: experiment runner and verification tool.
//
//   ttd run --preset study1-lambda0.9 --out results/
//   ttd run --config my.cfg --runs 5
//   ttd check --trials 1000
//   ttd oracle
//   ttd curves a/aggregate.csv b/aggregate.csv --labels a,b
//
// Every `run` flag can also be given as TTD_<NAME> in the environment or as
// `name = value` under [run] in a config file.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "ttd/errors.hpp"
#include "ttd/harness/car_oracle.hpp"
#include "ttd/harness/equivalence.hpp"
#include "ttd/harness/experiment.hpp"
#include "ttd/harness/metrics_io.hpp"

namespace fs = std::filesystem;
using namespace ttd;
using namespace ttd::harness;

namespace {

struct RunArgs {
  std::string preset;
  std::string env = "car";
  std::string algo = "ahc";
  double lambda = 0.9;
  std::size_t m = 25;
  double gamma = 0.95;
  double alpha = 0.25;
  double beta = 0.25;
  double temperature = 0.02;
  std::size_t episodes = 250;
  std::size_t runs = 25;
  std::uint64_t seed = 1;
  std::string engine = "iterative";
  std::size_t step_cap = 0;
  std::size_t resync_period = 1000;
  bool adaptive_lambda = false;
  std::size_t window = 5;
  std::size_t car_cap = 1000;
  std::size_t threads = 0;
  std::string out;
};

struct RunOptions {
  CLI::Option* env;
  CLI::Option* algo;
  CLI::Option* lambda;
  CLI::Option* m;
  CLI::Option* gamma;
  CLI::Option* alpha;
  CLI::Option* beta;
  CLI::Option* temperature;
  CLI::Option* episodes;
  CLI::Option* runs;
  CLI::Option* seed;
  CLI::Option* engine;
  CLI::Option* step_cap;
  CLI::Option* resync_period;
  CLI::Option* adaptive_lambda;
  CLI::Option* window;
  CLI::Option* car_cap;
};

bool given(const CLI::Option* opt) { return opt->count() > 0; }

ExperimentSpec build_spec(const RunArgs& a, const RunOptions& o) {
  const bool from_preset = !a.preset.empty();
  ExperimentSpec spec = from_preset ? preset(a.preset) : ExperimentSpec{};
  // Without a preset every value comes from the flags (or their defaults);
  // with one, only flags actually given override it.
  auto use = [&](const CLI::Option* opt) { return !from_preset || given(opt); };

  if (use(o.env)) spec.environment = parse_environment(a.env);
  if (use(o.algo)) spec.learner.algorithm = parse_algorithm(a.algo.c_str());
  if (use(o.lambda)) spec.learner.td.lambda = a.lambda;
  if (use(o.m)) spec.learner.td.m = a.m;
  if (use(o.gamma)) spec.learner.td.gamma = a.gamma;
  if (use(o.alpha)) spec.learner.alpha = a.alpha;
  if (use(o.beta)) spec.learner.beta = a.beta;
  if (use(o.temperature)) spec.learner.temperature = a.temperature;
  if (use(o.episodes)) spec.episodes = a.episodes;
  if (use(o.engine)) spec.learner.td.engine = parse_engine(a.engine.c_str());
  if (use(o.resync_period)) spec.learner.td.resync_period = a.resync_period;
  if (use(o.adaptive_lambda)) spec.learner.adaptive_lambda = a.adaptive_lambda;
  if (use(o.window)) spec.metric_window = a.window;
  if (use(o.car_cap)) spec.car_episode_cap = a.car_cap;
  if (use(o.step_cap)) {
    spec.step_cap_total = a.step_cap > 0 ? std::optional<std::size_t>(a.step_cap) : std::nullopt;
  }
  if (use(o.runs) || use(o.seed)) {
    const std::size_t runs = given(o.runs) || !from_preset ? a.runs : spec.runs();
    spec.seeds = derive_seeds(a.seed, runs);
  }
  spec.threads = a.threads;
  spec.validate();
  return spec;
}

int cmd_run(const RunArgs& args, const RunOptions& opts) {
  const ExperimentSpec spec = build_spec(args, opts);
  const ExperimentResult result = run_experiment(spec);
  write_summary(std::cout, result);
  if (args.out.empty()) return 0;

  fs::create_directories(args.out);
  for (const auto& run : result.runs) {
    std::ofstream file(fs::path(args.out) / ("run_" + std::to_string(run.seed) + ".csv"));
    write_run_csv(file, run);
  }
  std::ofstream aggregate_file(fs::path(args.out) / "aggregate.csv");
  write_aggregate_csv(aggregate_file, result.mean_curve);
  std::cout << "wrote " << result.runs.size() << " run files and aggregate.csv to " << args.out
            << '\n';
  return 0;
}

int cmd_check(std::size_t trials, std::uint64_t seed) {
  const auto report = equivalence_report(trials, seed);
  write_report(std::cout, report);
  return report.passed() ? 0 : 1;
}

int cmd_oracle(std::size_t max_depth, double resolution, long expect) {
  const auto result = shortest_parking_path(CarState{}, CarGeometry{}, CarDynamics{}, max_depth,
                                            resolution);
  std::cout << "lower bound from start " << parking_steps_lower_bound(CarState{}) << '\n';
  std::cout << "poses expanded " << result.expanded << '\n';
  if (!result.depth) {
    std::cout << "no parking sequence within " << max_depth << " steps\n";
    return 1;
  }
  std::cout << "shortest parking sequence: " << *result.depth << " steps\n";
  static const char* names[] = {"S", "L", "R"};
  std::cout << "actions ";
  for (CarAction a : result.path) std::cout << names[static_cast<int>(a)];
  std::cout << '\n';
  if (expect >= 0 && static_cast<long>(*result.depth) != expect) {
    std::cout << "expected " << expect << " steps: FAIL\n";
    return 1;
  }
  return 0;
}

int cmd_curves(const std::vector<std::string>& files, std::vector<std::string> labels,
               const std::string& column, const std::string& out) {
  std::vector<std::vector<AggregateRow>> series;
  for (const auto& path : files) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path);
    series.push_back(read_aggregate_csv(in));
  }
  if (labels.empty()) labels = files;
  if (labels.size() != files.size()) throw ConfigError("one label per input file is required");
  if (out.empty()) {
    write_plot_columns(std::cout, labels, series, column);
  } else {
    std::ofstream file(out);
    write_plot_columns(file, labels, series, column);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Truncated temporal differences: experiments and checks"};
  app.require_subcommand(1);
  // CLI11 reads config files only at the root; keys for `run` go under [run].
  app.set_config("--config", "", "Config file; `run` options go in a [run] section");
  app.fallthrough();

  RunArgs run_args;
  RunOptions run_opts{};
  auto* run = app.add_subcommand("run", "Run a multi-seed learning experiment");
  std::string preset_help = "Named parameter preset:";
  for (const auto& name : preset_names()) preset_help += " " + name;
  run->add_option("--preset", run_args.preset, preset_help)->envname("TTD_PRESET");
  run_opts.env = run->add_option("--env", run_args.env, "car | cartpole")
                     ->envname("TTD_ENV")
                     ->capture_default_str();
  run_opts.algo = run->add_option("--algo", run_args.algo, "ahc | q | advantage")
                      ->envname("TTD_ALGO")
                      ->capture_default_str();
  run_opts.lambda = run->add_option("--lambda", run_args.lambda)->envname("TTD_LAMBDA")
                        ->capture_default_str();
  run_opts.m = run->add_option("--m", run_args.m, "Truncation horizon")->envname("TTD_M")
                   ->capture_default_str();
  run_opts.gamma = run->add_option("--gamma", run_args.gamma)->envname("TTD_GAMMA")
                       ->capture_default_str();
  run_opts.alpha = run->add_option("--alpha", run_args.alpha)->envname("TTD_ALPHA")
                       ->capture_default_str();
  run_opts.beta = run->add_option("--beta", run_args.beta)->envname("TTD_BETA")
                      ->capture_default_str();
  run_opts.temperature = run->add_option("--temperature", run_args.temperature)
                             ->envname("TTD_TEMPERATURE")
                             ->capture_default_str();
  run_opts.episodes = run->add_option("--episodes", run_args.episodes)
                          ->envname("TTD_EPISODES")
                          ->capture_default_str();
  run_opts.runs = run->add_option("--runs", run_args.runs, "Number of seeds")
                      ->envname("TTD_RUNS")
                      ->capture_default_str();
  run_opts.seed = run->add_option("--seed", run_args.seed, "Base seed; run i uses seed + i")
                      ->envname("TTD_SEED")
                      ->capture_default_str();
  run_opts.engine = run->add_option("--engine", run_args.engine, "iterative | incremental")
                        ->envname("TTD_ENGINE")
                        ->capture_default_str();
  run_opts.step_cap = run->add_option("--step-cap", run_args.step_cap,
                                      "Total step budget per run (0 = none)")
                          ->envname("TTD_STEP_CAP")
                          ->capture_default_str();
  run_opts.resync_period = run->add_option("--resync-period", run_args.resync_period)
                               ->envname("TTD_RESYNC_PERIOD")
                               ->capture_default_str();
  run_opts.adaptive_lambda = run->add_flag("--adaptive-lambda", run_args.adaptive_lambda)
                                 ->envname("TTD_ADAPTIVE_LAMBDA");
  run_opts.window = run->add_option("--window", run_args.window, "Metric window in episodes")
                        ->envname("TTD_WINDOW")
                        ->capture_default_str();
  run_opts.car_cap = run->add_option("--car-cap", run_args.car_cap,
                                     "Car parking episode step cap (0 = none)")
                         ->envname("TTD_CAR_CAP")
                         ->capture_default_str();
  run->add_option("--threads", run_args.threads, "Worker threads (0 = all cores)")
      ->envname("TTD_THREADS");
  run->add_option("--out", run_args.out, "Directory for per-run and aggregate CSV files")
      ->envname("TTD_OUT");

  std::size_t trials = 1000;
  std::uint64_t check_seed = 1;
  auto* check = app.add_subcommand("check", "Randomized equivalence checks of the TD engines");
  check->add_option("--trials", trials)->envname("TTD_TRIALS")->capture_default_str();
  check->add_option("--seed", check_seed)->envname("TTD_SEED")->capture_default_str();

  std::size_t max_depth = 40;
  double resolution = 1e-6;
  long expect = 21;
  auto* oracle = app.add_subcommand("oracle", "Shortest parking sequence from the start pose");
  oracle->add_option("--max-depth", max_depth)->capture_default_str();
  oracle->add_option("--resolution", resolution, "Pose hashing grid")->capture_default_str();
  oracle->add_option("--expect", expect, "Required depth (-1 to only report)")
      ->capture_default_str();

  std::vector<std::string> files;
  std::vector<std::string> labels;
  std::string column = "mean_window_reward_per_step";
  std::string curves_out;
  auto* curves = app.add_subcommand("curves", "Aggregate CSV files to gnuplot columns");
  curves->add_option("files", files, "aggregate.csv files")->required();
  curves->add_option("--labels", labels)->delimiter(',');
  curves->add_option("--column", column)->capture_default_str();
  curves->add_option("--out", curves_out);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return cmd_run(run_args, run_opts);
    if (*check) return cmd_check(trials, check_seed);
    if (*oracle) return cmd_oracle(max_depth, resolution, expect);
    if (*curves) return cmd_curves(files, labels, column, curves_out);
  } catch (const ttd::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
