#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rtcsim/experiment.hpp"

namespace rtcsim {

// Fixed column order of the per-point CSV report.
const std::vector<std::string>& report_columns();

// One record per sweep point; deterministic formatting, no timestamps.
void write_csv_report(std::ostream& out, const ExperimentConfig& config,
                      const std::vector<PointResult>& results);
// Nested report with calibration hash and the configuration echo.
void write_json_report(std::ostream& out, const ExperimentConfig& config,
                       const std::vector<PointResult>& results);
// Long format (one metric value per line) for plotting tools; includes
// savings vs Baseline and vs SmartRefresh when those policies are present,
// plus the peak-bandwidth refresh-fraction curve over the sweep capacities.
void write_plot_csv(std::ostream& out, const ExperimentConfig& config,
                    const std::vector<PointResult>& results);

using ReportRecord = std::map<std::string, std::string>;
// Parses a CSV report written by write_csv_report ('#' lines skipped).
// Throws Error(kConfigInvalid) on malformed input.
std::vector<ReportRecord> read_csv_report(std::istream& in);

struct CompareRow {
  std::string workload;
  std::string capacity_gib;
  std::string fps;
  std::string locality;
  std::string policy_a;
  std::string policy_b;
  double a = 0.0;
  double b = 0.0;
  double savings = 0.0;  // 1 - a/b
};

struct CompareOptions {
  std::string metric = "total";  // total | refresh
  std::optional<std::string> policy_a;
  std::optional<std::string> policy_b;
};

// Joins the two reports on (workload, capacity, fps, locality), and on
// policy when both sides carry the same policy set. Order-insensitive.
// Throws Error(kAxisMismatch) when the sweep axes differ or the policy sets
// cannot be paired.
std::vector<CompareRow> compare_reports(const std::vector<ReportRecord>& a,
                                        const std::vector<ReportRecord>& b,
                                        const CompareOptions& options = {});
void write_compare_csv(std::ostream& out, const std::vector<CompareRow>& rows);

// Command stream dump: `timestamp kind bank row bursts` per line.
void write_command_stream(std::ostream& out, const std::vector<DramCommand>& commands);

struct ReplaySummary {
  CommandCounts counts;
  std::uint64_t replenished_rows = 0;
};
// Re-applies a recorded command stream to a fresh model (verification mode)
// and recounts it. Throws Error(kIllegalCommand) on protocol violations.
ReplaySummary replay_commands(const DramTopology& topology, const PaarBounds& paar,
                              const std::vector<bool>& bank_mask,
                              const std::vector<DramCommand>& commands);

}  // namespace rtcsim
