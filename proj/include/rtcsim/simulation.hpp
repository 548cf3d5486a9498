#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rtcsim/controllers.hpp"
#include "rtcsim/energy.hpp"
#include "rtcsim/retention_oracle.hpp"
#include "rtcsim/workloads.hpp"

namespace rtcsim {

struct SimulationOptions {
  // Simulated length in retention windows.
  std::uint32_t windows = 8;
  // 0 selects topology.t_refw_ns.
  Nanoseconds t_ret_ns = 0;
  bool record_commands = false;
  bool charge_background = true;
  std::size_t max_reported_violations = 16;
};

struct SimulationResult {
  std::string policy;
  // Operating mode actually used: baseline, self-refresh-masked, suppressed,
  // fallback, smart, rtt, paar-only.
  std::string mode;
  std::vector<std::string> notes;

  EnergyLedger energy;
  Nanoseconds simulated_ns = 0;
  std::uint64_t allocated_rows = 0;

  std::uint64_t demand_visits = 0;
  std::uint64_t deferred_visits = 0;
  std::uint64_t skipped_refs = 0;

  // Rows replenished by explicit refresh (REF after masking, REF_ROW).
  std::uint64_t explicit_refresh_rows = 0;
  std::vector<std::uint64_t> explicit_rows_per_window;

  // Full-RTC slot accounting.
  std::uint64_t implicit_slots = 0;
  std::uint64_t explicit_slots = 0;
  std::vector<std::uint64_t> implicit_slots_per_window;
  std::uint64_t n_a = 0;
  std::uint64_t n_r = 0;
  PaarBounds paar;
  bool rtt_certified = false;
  bool not_affine = false;
  std::uint64_t agu_segments = 0;
  std::uint64_t config_words = 0;
  Nanoseconds reconfig_latency_ns = 0;
  std::uint64_t demand_outside_paar = 0;
  // Per-row counters maintained by SmartRefresh (0 for other policies).
  std::uint64_t smart_counters = 0;

  std::uint64_t violation_count = 0;
  std::vector<RetentionViolation> violations;  // first max_reported_violations

  std::vector<DramCommand> commands;  // when record_commands
};

// Runs one workload under one policy on one device, checking every replenish
// with the retention oracle. Throws Error(kConfigInvalid) for inconsistent
// controller overrides.
SimulationResult simulate(const DramTopology& topology, const Workload& workload,
                          const ControllerConfig& controller, const EnergyConfig& energy,
                          const SimulationOptions& options = {});

// One application confined to a set of banks.
struct Partition {
  const Workload* workload = nullptr;
  std::vector<std::uint32_t> banks;
};

// Runs each partition under its own controller (per-partition refresh
// counter and PAAR registers) and merges the command streams by timestamp.
// Throws Error(kConfigInvalid) when partitions share banks or an allocation
// leaves its banks.
SimulationResult simulate_partitioned(const DramTopology& topology,
                                      const std::vector<Partition>& partitions,
                                      const ControllerConfig& controller,
                                      const EnergyConfig& energy,
                                      const SimulationOptions& options = {});

struct PeakDemand {
  double bandwidth_bytes_per_s = 128e9;
  std::uint64_t footprint_bytes = 256ull << 20;
  std::uint32_t windows = 1;
};

// Refresh share of total energy under Baseline with a streaming workload
// running at peak bandwidth, one entry per capacity.
std::vector<double> refresh_fraction_curve(const std::vector<std::uint64_t>& capacities_bytes,
                                           const EnergyConfig& energy,
                                           const PeakDemand& demand = {});

}  // namespace rtcsim
