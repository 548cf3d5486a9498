#include "rtcsim/retention_oracle.hpp"

#include <algorithm>

#include "rtcsim/error.hpp"

namespace rtcsim {

RetentionLedger::RetentionLedger(std::uint64_t total_rows, Nanoseconds t_ret_ns)
    : t_ret_ns_(t_ret_ns), last_(total_rows, 0), live_(total_rows, 0) {
  if (t_ret_ns <= 0) throw Error(ErrorCode::kConfigInvalid, "t_ret must be positive");
}

void RetentionLedger::record(RowIndex row, Nanoseconds now) {
  violations_.push_back({row, now - last_[row], last_[row] + t_ret_ns_});
}

void RetentionLedger::observe(std::span<const RowRange> replenished, Nanoseconds now) {
  for (const auto& r : replenished) {
    if (r.first + r.count > last_.size())
      throw Error(ErrorCode::kOutOfRange, "replenished row beyond ledger");
    for (RowIndex row = r.first; row < r.first + r.count; ++row) observe_row(row, now);
  }
}

void RetentionLedger::set_liveness(std::span<const RowRange> rows, bool live,
                                   Nanoseconds now) {
  for (const auto& r : rows) {
    if (r.first + r.count > last_.size())
      throw Error(ErrorCode::kOutOfRange, "row beyond ledger");
    for (RowIndex row = r.first; row < r.first + r.count; ++row) {
      if (live) {
        if (live_[row] && now - last_[row] > t_ret_ns_) record(row, now);
        live_[row] = 1;
        last_[row] = now;
      } else {
        if (live_[row] && now - last_[row] > t_ret_ns_) record(row, now);
        live_[row] = 0;
      }
    }
  }
}

void RetentionLedger::finish(Nanoseconds end) {
  for (RowIndex row = 0; row < last_.size(); ++row)
    if (live_[row] && end - last_[row] > t_ret_ns_) record(row, end);
}

std::uint64_t RetentionLedger::live_count() const {
  return static_cast<std::uint64_t>(std::count(live_.begin(), live_.end(), 1));
}

std::vector<RetentionViolation> RetentionLedger::violations() const {
  auto out = violations_;
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace rtcsim
