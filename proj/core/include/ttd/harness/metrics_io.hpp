#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ttd/harness/experiment.hpp"

namespace ttd::harness {

/// `episode,duration,total_reward,avg_reward_per_step,padded`
void write_run_csv(std::ostream& out, const RunMetrics& run);

/// `episode,mean_duration,mean_total_reward,mean_avg_reward_per_step,
/// mean_window_duration,mean_window_reward_per_step`
void write_aggregate_csv(std::ostream& out, const std::vector<AggregateRow>& rows);
std::vector<AggregateRow> read_aggregate_csv(std::istream& in);

/// Whitespace-separated `episode value` columns for gnuplot, one value column
/// per input series. `column` names an aggregate CSV column.
void write_plot_columns(std::ostream& out, const std::vector<std::string>& labels,
                        const std::vector<std::vector<AggregateRow>>& series,
                        const std::string& column);

double column_value(const AggregateRow& row, const std::string& column);

/// Human-readable per-run summary: first success, longest episode, final
/// window values.
void write_summary(std::ostream& out, const ExperimentResult& result);

}  // namespace ttd::harness
