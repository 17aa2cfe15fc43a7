#include "ttd/harness/metrics_io.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

#include "ttd/errors.hpp"

namespace ttd::harness {

namespace {

constexpr const char* kAggregateHeader =
    "episode,mean_duration,mean_total_reward,mean_avg_reward_per_step,"
    "mean_window_duration,mean_window_reward_per_step";

class PrecisionGuard {
 public:
  PrecisionGuard(std::ostream& out, std::streamsize precision)
      : out_(out), saved_(out.precision(precision)) {}
  ~PrecisionGuard() { out_.precision(saved_); }

 private:
  std::ostream& out_;
  std::streamsize saved_;
};

}  // namespace

void write_run_csv(std::ostream& out, const RunMetrics& run) {
  PrecisionGuard guard(out, 12);
  out << "episode,duration,total_reward,avg_reward_per_step,padded\n";
  for (std::size_t i = 0; i < run.episodes.size(); ++i) {
    const auto& e = run.episodes[i];
    out << i + 1 << ',' << e.duration << ',' << e.total_reward << ',' << e.avg_reward_per_step
        << ',' << (e.padded ? 1 : 0) << '\n';
  }
}

void write_aggregate_csv(std::ostream& out, const std::vector<AggregateRow>& rows) {
  PrecisionGuard guard(out, 12);
  out << kAggregateHeader << '\n';
  for (const auto& r : rows) {
    out << r.episode << ',' << r.mean_duration << ',' << r.mean_total_reward << ','
        << r.mean_avg_reward_per_step << ',' << r.mean_window_duration << ','
        << r.mean_window_reward_per_step << '\n';
  }
}

std::vector<AggregateRow> read_aggregate_csv(std::istream& in) {
  std::vector<AggregateRow> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line_no == 1) {
      if (line != kAggregateHeader) throw ParseError("aggregate CSV: unexpected header");
      continue;
    }
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream row(line);
    AggregateRow r;
    if (!(row >> r.episode >> r.mean_duration >> r.mean_total_reward >>
          r.mean_avg_reward_per_step >> r.mean_window_duration >>
          r.mean_window_reward_per_step)) {
      throw ParseError("aggregate CSV line " + std::to_string(line_no) + ": malformed row");
    }
    rows.push_back(r);
  }
  return rows;
}

double column_value(const AggregateRow& row, const std::string& column) {
  if (column == "mean_duration") return row.mean_duration;
  if (column == "mean_total_reward") return row.mean_total_reward;
  if (column == "mean_avg_reward_per_step") return row.mean_avg_reward_per_step;
  if (column == "mean_window_duration") return row.mean_window_duration;
  if (column == "mean_window_reward_per_step") return row.mean_window_reward_per_step;
  throw ConfigError("unknown aggregate column '" + column + "'");
}

void write_plot_columns(std::ostream& out, const std::vector<std::string>& labels,
                        const std::vector<std::vector<AggregateRow>>& series,
                        const std::string& column) {
  PrecisionGuard guard(out, 12);
  std::size_t rows = 0;
  for (const auto& s : series) rows = std::max(rows, s.size());
  out << "# episode";
  for (const auto& label : labels) out << ' ' << label;
  out << '\n';
  for (std::size_t i = 0; i < rows; ++i) {
    out << i + 1;
    for (const auto& s : series) {
      out << ' ';
      if (i < s.size()) {
        out << column_value(s[i], column);
      } else {
        out << '?';  // gnuplot's missing-data marker
      }
    }
    out << '\n';
  }
}

void write_summary(std::ostream& out, const ExperimentResult& result) {
  PrecisionGuard guard(out, 6);
  const auto& spec = result.spec;
  out << "environment " << to_string(spec.environment) << ", algorithm "
      << to_string(spec.learner.algorithm) << ", lambda " << spec.learner.td.lambda << ", m "
      << spec.learner.td.m << ", gamma " << spec.learner.td.gamma << ", alpha "
      << spec.learner.alpha << ", beta " << spec.learner.beta << ", T "
      << spec.learner.temperature << ", engine " << to_string(spec.learner.td.engine) << '\n';
  for (const auto& run : result.runs) {
    const auto wd = window_mean_duration(run, spec.metric_window);
    const auto wr = window_reward_per_step(run, spec.metric_window);
    out << "seed " << run.seed << ": steps " << run.total_steps << ", first success ";
    if (const auto fs = run.first_success_episode()) {
      out << *fs;
    } else {
      out << '-';
    }
    out << ", longest episode " << run.longest_episode();
    if (!wd.empty()) {
      out << ", final window duration " << wd.back() << ", final window reward/step "
          << wr.back();
    }
    if (run.truncated()) out << " (truncated, padded)";
    out << '\n';
  }
  if (!result.mean_curve.empty()) {
    const auto& last = result.mean_curve.back();
    out << "mean final window duration " << last.mean_window_duration
        << ", mean final window reward/step " << last.mean_window_reward_per_step << '\n';
  }
}

}  // namespace ttd::harness
