#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "rtcsim/controllers.hpp"
#include "rtcsim/energy.hpp"
#include "rtcsim/simulation.hpp"
#include "rtcsim/workloads.hpp"

namespace rtcsim {

struct WorkloadSource {
  std::string name;
  // "network", "synthetic" or "trace".
  std::string kind;
  std::filesystem::path path;  // resolved; network and trace kinds
  SyntheticSpec synthetic;
  RowIndex base_row = 0;
  std::uint64_t idle_rows = 0;
};

struct ExperimentConfig {
  // Geometry and timing; rows_per_bank is set per sweep capacity.
  DramTopology topology;
  EnergyConfig energy;
  std::vector<WorkloadSource> workloads;

  std::vector<std::uint64_t> capacities_bytes{2 * kGiB, 4 * kGiB, 8 * kGiB};
  std::vector<double> fps{30.0, 60.0};
  std::vector<double> locality{0.5, 1.0};
  std::vector<std::string> policies{"Baseline", "Pasr",   "SmartRefresh",
                                    "MinRtc",   "MidRtc", "FullRtc"};

  ControllerConfig controller;
  SimulationOptions simulation;
  std::uint64_t seed = 1;
  unsigned jobs = 0;  // 0 = hardware concurrency

  std::filesystem::path output_dir = "out";
  // Canonical JSON of the parsed configuration, echoed into reports.
  std::string echo;
};

// Throws Error(kConfigInvalid) naming the offending field path, e.g.
// "sweep.fps[1]: must be positive". Relative paths resolve against base_dir,
// then against the installed data directory.
ExperimentConfig parse_experiment_config(const std::string& json_text,
                                         const std::filesystem::path& base_dir);
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

// Calibration file: {"provenance": "...", "e_act_pj": ..., ...}.
EnergyConfig load_calibration(const std::filesystem::path& path);

struct SweepPoint {
  std::size_t id = 0;
  std::size_t workload = 0;  // index into ExperimentConfig::workloads
  std::uint64_t capacity_bytes = 0;
  double fps = 0.0;
  double locality = 1.0;
  std::string policy;
};

// Order: workload, capacity, fps, locality, policy (policy fastest).
std::vector<SweepPoint> expand_sweep(const ExperimentConfig& config);

DramTopology topology_for(const ExperimentConfig& config, std::uint64_t capacity_bytes);
Workload build_workload(const ExperimentConfig& config, const SweepPoint& point);
ControllerConfig controller_for(const ExperimentConfig& config, const SweepPoint& point);

// Checks every sweep point can be built (files readable, footprint fits).
// Throws Error(kWorkloadInfeasible) or Error(kConfigInvalid).
void validate_experiment(const ExperimentConfig& config);

struct PointResult {
  SweepPoint point;
  std::string workload_name;
  SimulationResult sim;
  // Empty when the point ran; otherwise "<ErrorCode>: message".
  std::string error;
};

using ProgressFn = std::function<void(const PointResult&)>;

PointResult run_point(const ExperimentConfig& config, const SweepPoint& point,
                      const SimulationOptions& options);

// Runs all points on `jobs` worker threads (0 = config.jobs, then hardware
// concurrency); results are returned in sweep order.
std::vector<PointResult> run_sweep(const ExperimentConfig& config, unsigned jobs = 0,
                                   const ProgressFn& progress = {});

}  // namespace rtcsim
