#include "ttd/td/episode_log.hpp"

#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

#include "ttd/errors.hpp"

namespace ttd {

namespace {

constexpr const char* kHeader = "step,state,action,reward,utility_before,utility_after";

// U_j(x_{j+1}): the successor utility as seen at step j.
double successor_utility(const EpisodeLog& log, std::size_t j) {
  return j + 1 < log.size() ? log[j + 1].utility_before : 0.0;
}

void check_index(const EpisodeLog& log, std::size_t t, const char* what) {
  if (t >= log.size()) {
    throw IndexOutOfRange(std::string(what) + ": step " + std::to_string(t) +
                          " outside log of length " + std::to_string(log.size()));
  }
}

double td0_error_frozen(const EpisodeLog& log, std::size_t j, double gamma) {
  return log[j].reward + gamma * successor_utility(log, j) - log[j].utility_before;
}

}  // namespace

void EpisodeLog::append(StateId state, ActionId action, double reward,
                        double utility_before, double utility_after) {
  steps.push_back({steps.size(), state, action, reward, utility_before, utility_after});
}

void write_episode_log(std::ostream& out, const EpisodeLog& log) {
  const auto old_precision = out.precision(std::numeric_limits<double>::max_digits10);
  out << kHeader << '\n';
  for (const EpisodeStep& s : log.steps) {
    out << s.step << ',' << s.state << ',' << s.action << ',' << s.reward << ','
        << s.utility_before << ',' << s.utility_after << '\n';
  }
  out.precision(old_precision);
}

EpisodeLog read_episode_log(std::istream& in) {
  EpisodeLog log;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line_no == 1 && line == kHeader) continue;
    std::istringstream row(line);
    EpisodeStep s;
    char c1 = 0, c2 = 0, c3 = 0, c4 = 0, c5 = 0;
    if (!(row >> s.step >> c1 >> s.state >> c2 >> s.action >> c3 >> s.reward >> c4 >>
          s.utility_before >> c5 >> s.utility_after) ||
        c1 != ',' || c2 != ',' || c3 != ',' || c4 != ',' || c5 != ',') {
      throw ParseError("episode log line " + std::to_string(line_no) + ": malformed row");
    }
    log.steps.push_back(s);
  }
  return log;
}

double td_lambda_return_offline(const EpisodeLog& log, std::size_t t,
                                const TdConfig& config) {
  check_index(log, t, "td_lambda_return_offline");
  const double gamma = config.gamma;
  const double lambda = config.lambda;
  double z = 0.0;  // z^lambda beyond the terminal step
  for (std::size_t j = log.size(); j-- > t;) {
    z = log[j].reward + gamma * (lambda * z + (1.0 - lambda) * successor_utility(log, j));
  }
  return z;
}

double td_lambda_error_offline(const EpisodeLog& log, std::size_t t,
                               const TdConfig& config) {
  check_index(log, t, "td_lambda_error_offline");
  const double gl = config.gamma_lambda();
  double total = 0.0;
  for (std::size_t j = log.size(); j-- > t;) {
    const double delta0 = td0_error_frozen(log, j, config.gamma);
    total = delta0 + gl * total;
  }
  return total;
}

double discrepancy_term(const EpisodeLog& log, std::size_t t, std::size_t horizon,
                        const TdConfig& config) {
  if (t + horizon >= log.size()) {
    throw InsufficientLog("discrepancy_term: needs rows up to step " +
                          std::to_string(t + horizon) + ", log has " +
                          std::to_string(log.size()));
  }
  const double gl = config.gamma_lambda();
  double weight = 1.0;
  double total = 0.0;
  for (std::size_t k = 1; k <= horizon; ++k) {
    weight *= gl;
    const EpisodeStep& row = log[t + k];
    total += weight * (row.utility_before - row.utility_after);
  }
  return total;
}

}  // namespace ttd
