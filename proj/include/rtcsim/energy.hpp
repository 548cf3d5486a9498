#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "rtcsim/dram_model.hpp"

namespace rtcsim {

// Per-operation costs. The shipped defaults are calibration data, not
// measurements; every report carries hash() so results can be traced back.
struct EnergyConfig {
  double e_act_pj = 1200.0;
  double e_pre_pj = 800.0;
  double e_rd_burst_pj = 1.5;
  double e_wr_burst_pj = 1.5;
  double p_background_mw_per_gib = 0.9;
  double e_counter_update_pj = 5.0;
  double e_counter_scan_pj = 50.0;
  std::string provenance = "built-in defaults";

  void validate() const;
  std::uint64_t hash() const;
};

enum class EnergyCategory : std::uint8_t { kRefresh, kAccess, kBackground, kCounters };
inline constexpr int kEnergyCategoryCount = 4;
const char* energy_category_name(EnergyCategory c);

// Per-category operation counts.
struct CategoryCounts {
  std::uint64_t act = 0;
  std::uint64_t pre = 0;
  std::uint64_t rd_bursts = 0;
  std::uint64_t wr_bursts = 0;
  // Rows restored by REF (after PAAR/bank masking) and REF_ROW.
  std::uint64_t refreshed_rows = 0;
};

struct CommandCounts {
  std::array<std::uint64_t, kCommandKindCount> commands{};
  std::array<CategoryCounts, kEnergyCategoryCount> by_category{};
  std::uint64_t counter_updates = 0;
  std::uint64_t counter_scans = 0;

  std::uint64_t count(CommandKind k) const { return commands[static_cast<int>(k)]; }
  const CategoryCounts& category(EnergyCategory c) const {
    return by_category[static_cast<int>(c)];
  }
  std::uint64_t total_commands() const;
  void merge(const CommandCounts& other);
};

// Energy is kept as integer operation counts; category totals are evaluated
// from counts and costs on demand, so Σ counts × costs reconciles exactly.
class EnergyLedger {
 public:
  EnergyLedger() = default;
  explicit EnergyLedger(const EnergyConfig& config) : config_(config) {}

  // Adds one command to `category`. REF charges refreshed_rows * (e_act +
  // e_pre); REF_ROW charges one row. Throws Error(kUnknownKind) for the
  // background category (it carries no commands) or an unknown kind.
  void charge(const DramCommand& cmd, EnergyCategory category,
              std::uint64_t refreshed_rows = 0);
  void charge_counters(std::uint64_t updates, std::uint64_t scans);
  void charge_background(Nanoseconds duration, std::uint64_t capacity_bytes);

  double category_pj(EnergyCategory c) const;
  double total_pj() const;
  double refresh_fraction() const;
  const CommandCounts& counts() const { return counts_; }
  const EnergyConfig& config() const { return config_; }
  Nanoseconds background_ns() const { return background_ns_; }

  // Sweep aggregation. Background time adds as capacity-weighted time.
  void merge(const EnergyLedger& other);

 private:
  EnergyConfig config_;
  CommandCounts counts_;
  Nanoseconds background_ns_ = 0;
  // Σ duration × capacity in GiB·ns.
  double background_gib_ns_ = 0.0;
};

// 1 - total_a / total_b.
double savings(const EnergyLedger& a, const EnergyLedger& b);
double savings(double total_a, double total_b);

}  // namespace rtcsim
