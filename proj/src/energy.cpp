#include "rtcsim/energy.hpp"

#include <cstdio>

#include "rtcsim/error.hpp"
#include "rtcsim/hash.hpp"

namespace rtcsim {

const char* energy_category_name(EnergyCategory c) {
  switch (c) {
    case EnergyCategory::kRefresh: return "refresh";
    case EnergyCategory::kAccess: return "access";
    case EnergyCategory::kBackground: return "background";
    case EnergyCategory::kCounters: return "counters";
  }
  return "?";
}

void EnergyConfig::validate() const {
  const std::pair<const char*, double> fields[] = {
      {"e_act_pj", e_act_pj},
      {"e_pre_pj", e_pre_pj},
      {"e_rd_burst_pj", e_rd_burst_pj},
      {"e_wr_burst_pj", e_wr_burst_pj},
      {"p_background_mw_per_gib", p_background_mw_per_gib},
      {"e_counter_update_pj", e_counter_update_pj},
      {"e_counter_scan_pj", e_counter_scan_pj},
  };
  for (const auto& [name, value] : fields)
    if (!(value >= 0.0))
      throw Error(ErrorCode::kConfigInvalid,
                  std::string("energy.") + name + ": must be non-negative");
}

std::uint64_t EnergyConfig::hash() const {
  // %a renders doubles exactly, independent of locale and platform.
  char buf[512];
  std::snprintf(buf, sizeof buf, "%a|%a|%a|%a|%a|%a|%a", e_act_pj, e_pre_pj,
                e_rd_burst_pj, e_wr_burst_pj, p_background_mw_per_gib,
                e_counter_update_pj, e_counter_scan_pj);
  Fnv1a h;
  h.update(buf);
  h.update(provenance);
  return h.digest();
}

std::uint64_t CommandCounts::total_commands() const {
  std::uint64_t n = 0;
  for (auto c : commands) n += c;
  return n;
}

void CommandCounts::merge(const CommandCounts& other) {
  for (int i = 0; i < kCommandKindCount; ++i) commands[i] += other.commands[i];
  for (int i = 0; i < kEnergyCategoryCount; ++i) {
    auto& a = by_category[i];
    const auto& b = other.by_category[i];
    a.act += b.act;
    a.pre += b.pre;
    a.rd_bursts += b.rd_bursts;
    a.wr_bursts += b.wr_bursts;
    a.refreshed_rows += b.refreshed_rows;
  }
  counter_updates += other.counter_updates;
  counter_scans += other.counter_scans;
}

void EnergyLedger::charge(const DramCommand& cmd, EnergyCategory category,
                          std::uint64_t refreshed_rows) {
  if (category == EnergyCategory::kBackground)
    throw Error(ErrorCode::kUnknownKind, "commands cannot be charged to background");
  const int kind = static_cast<int>(cmd.kind);
  if (kind < 0 || kind >= kCommandKindCount)
    throw Error(ErrorCode::kUnknownKind, "unknown command kind");
  auto& cat = counts_.by_category[static_cast<int>(category)];
  switch (cmd.kind) {
    case CommandKind::kAct: ++cat.act; break;
    case CommandKind::kPre: ++cat.pre; break;
    case CommandKind::kRd: cat.rd_bursts += cmd.bursts; break;
    case CommandKind::kWr: cat.wr_bursts += cmd.bursts; break;
    case CommandKind::kRef: cat.refreshed_rows += refreshed_rows; break;
    case CommandKind::kRefRow: ++cat.refreshed_rows; break;
  }
  ++counts_.commands[kind];
}

void EnergyLedger::charge_counters(std::uint64_t updates, std::uint64_t scans) {
  counts_.counter_updates += updates;
  counts_.counter_scans += scans;
}

void EnergyLedger::charge_background(Nanoseconds duration, std::uint64_t capacity_bytes) {
  background_ns_ += duration;
  background_gib_ns_ += static_cast<double>(duration) *
                        (static_cast<double>(capacity_bytes) / static_cast<double>(kGiB));
}

double EnergyLedger::category_pj(EnergyCategory c) const {
  if (c == EnergyCategory::kBackground) {
    // mW × ns = pJ.
    return config_.p_background_mw_per_gib * background_gib_ns_;
  }
  const auto& k = counts_.category(c);
  double pj = static_cast<double>(k.act) * config_.e_act_pj +
              static_cast<double>(k.pre) * config_.e_pre_pj +
              static_cast<double>(k.rd_bursts) * config_.e_rd_burst_pj +
              static_cast<double>(k.wr_bursts) * config_.e_wr_burst_pj +
              static_cast<double>(k.refreshed_rows) * (config_.e_act_pj + config_.e_pre_pj);
  if (c == EnergyCategory::kCounters) {
    pj += static_cast<double>(counts_.counter_updates) * config_.e_counter_update_pj +
          static_cast<double>(counts_.counter_scans) * config_.e_counter_scan_pj;
  }
  return pj;
}

double EnergyLedger::total_pj() const {
  double total = 0.0;
  for (int i = 0; i < kEnergyCategoryCount; ++i)
    total += category_pj(static_cast<EnergyCategory>(i));
  return total;
}

double EnergyLedger::refresh_fraction() const {
  const double total = total_pj();
  return total > 0.0 ? category_pj(EnergyCategory::kRefresh) / total : 0.0;
}

void EnergyLedger::merge(const EnergyLedger& other) {
  counts_.merge(other.counts_);
  background_ns_ += other.background_ns_;
  background_gib_ns_ += other.background_gib_ns_;
}

double savings(double total_a, double total_b) {
  return total_b > 0.0 ? 1.0 - total_a / total_b : 0.0;
}

double savings(const EnergyLedger& a, const EnergyLedger& b) {
  return savings(a.total_pj(), b.total_pj());
}

}  // namespace rtcsim
