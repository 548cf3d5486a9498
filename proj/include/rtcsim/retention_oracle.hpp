#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rtcsim/dram_model.hpp"

namespace rtcsim {

struct RetentionViolation {
  RowIndex row = 0;
  Nanoseconds gap_ns = 0;
  // Instant the data was lost: last replenish + t_ret.
  Nanoseconds at = 0;

  friend bool operator==(const RetentionViolation&, const RetentionViolation&) = default;
  friend auto operator<=>(const RetentionViolation&, const RetentionViolation&) = default;
};

// Ground-truth safety checker. A live row violates when the gap between two
// consecutive replenishes (or between the last one and the end of the run)
// strictly exceeds t_ret. Gaps are evaluated when the next event for the row
// arrives, so per-row timestamps must be non-decreasing; the global order of
// observe() calls may interleave (a PRE stamps its earlier ACT time).
class RetentionLedger {
 public:
  RetentionLedger(std::uint64_t total_rows, Nanoseconds t_ret_ns);

  Nanoseconds t_ret_ns() const { return t_ret_ns_; }
  std::uint64_t total_rows() const { return last_.size(); }

  void observe(std::span<const RowRange> replenished, Nanoseconds now);
  void observe_row(RowIndex row, Nanoseconds now) {
    if (live_[row] && now - last_[row] > t_ret_ns_) record(row, now);
    if (now > last_[row]) last_[row] = now;
  }

  // live = true stamps `now` (freshly written data); live = false drops the
  // row after checking its final gap.
  void set_liveness(std::span<const RowRange> rows, bool live, Nanoseconds now);

  // End-of-run sweep over every live row.
  void finish(Nanoseconds end);

  bool live(RowIndex row) const { return live_[row] != 0; }
  Nanoseconds last_replenish(RowIndex row) const { return last_[row]; }
  std::uint64_t live_count() const;

  // Sorted by (row, gap, at).
  std::vector<RetentionViolation> violations() const;
  std::uint64_t violation_count() const { return violations_.size(); }

 private:
  void record(RowIndex row, Nanoseconds now);

  Nanoseconds t_ret_ns_;
  std::vector<Nanoseconds> last_;
  std::vector<std::uint8_t> live_;
  std::vector<RetentionViolation> violations_;
};

}  // namespace rtcsim
