#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rtcsim/topology.hpp"

namespace rtcsim {

enum class CommandKind : std::uint8_t { kAct, kPre, kRd, kWr, kRef, kRefRow };
inline constexpr int kCommandKindCount = 6;

const char* command_kind_name(CommandKind kind);

struct DramCommand {
  CommandKind kind = CommandKind::kAct;
  // Ignored for REF. PRE only uses the bank.
  RowAddress target;
  Nanoseconds timestamp = 0;
  // Column bursts carried by one RD/WR command (a whole row visit is one
  // command). Ignored for other kinds.
  std::uint32_t bursts = 1;
};

// Refresh-counter bound registers. When disabled the full range is refreshed.
struct PaarBounds {
  RowIndex lo = 0;
  RowIndex hi = 0;
  bool enabled = false;

  std::uint64_t size() const { return hi - lo + 1; }
  bool contains(RowIndex row) const { return !enabled || (row >= lo && row <= hi); }
};

struct RowRange {
  RowIndex first = 0;
  std::uint64_t count = 0;
};

// Rows replenished by one command. `ranges` points into storage owned by the
// model and stays valid until the next call that mutates it.
struct CommandEffect {
  std::span<const RowRange> ranges;
  Nanoseconds replenished_at = 0;
  std::optional<std::uint32_t> opened_bank;
  std::optional<std::uint32_t> closed_bank;

  std::uint64_t row_count() const;
  std::vector<RowIndex> rows() const;
};

std::vector<RowIndex> expand(std::span<const RowRange> ranges);

// Behavioral model of one rank: bank open/closed state, the in-DRAM refresh
// counter with PAAR bound registers, and a bank-granular refresh mask (the
// PASR logic reused in normal mode).
class DramModel {
 public:
  // rows_per_ref == 0 selects topology.rows_per_ref().
  explicit DramModel(const DramTopology& topology, std::uint64_t rows_per_ref = 0);

  const DramTopology& topology() const { return topology_; }
  std::uint64_t rows_per_ref() const { return rows_per_ref_; }
  RowIndex refresh_counter() const { return counter_; }
  const PaarBounds& paar() const { return paar_; }

  // Throws Error(kOutOfRange) for bounds beyond the device. Enabling snaps a
  // counter outside [lo, hi] to lo.
  void set_paar(const PaarBounds& bounds);
  void set_refresh_counter(RowIndex row);
  // Empty mask = every bank refreshed.
  void set_bank_mask(std::vector<bool> refresh_enabled);
  bool bank_refresh_enabled(std::uint32_t bank) const;

  // Throws Error(kIllegalCommand) on protocol violations and Error(kOutOfRange)
  // for addresses beyond the topology.
  CommandEffect apply(const DramCommand& cmd);

  // Returns `count` consecutive rows starting at the counter (wrapping inside
  // PAAR bounds or at total_rows), deduplicated, and advances the counter.
  std::span<const RowRange> advance_refresh_counter(std::uint64_t count);
  // Same batch without moving the counter.
  std::span<const RowRange> peek_refresh_batch(std::uint64_t count);
  // True when at least one row of the batch lies in a refresh-enabled bank.
  bool touches_enabled_bank(std::span<const RowRange> ranges) const;

  bool bank_open(std::uint32_t bank) const { return banks_[bank].open; }

 private:
  struct BankState {
    bool open = false;
    std::uint64_t row = 0;
    Nanoseconds act_time = 0;
  };

  void compute_batch(std::uint64_t count, std::vector<RowRange>& out,
                     RowIndex& next_counter) const;
  void mask_ranges(std::span<const RowRange> in, std::vector<RowRange>& out) const;

  DramTopology topology_;
  std::uint64_t rows_per_ref_;
  RowIndex counter_ = 0;
  PaarBounds paar_;
  std::vector<bool> bank_mask_;
  std::vector<BankState> banks_;
  Nanoseconds last_timestamp_ = 0;
  std::vector<RowRange> batch_;
  std::vector<RowRange> effect_;
};

}  // namespace rtcsim
