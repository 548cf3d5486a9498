#pragma once

#include <cstdint>
#include <vector>

namespace rtcsim {

// Periodic implicit/explicit refresh schedule. pattern[i] == true selects the
// data-transfer path (xfer = 1) for slot i of each period.
struct RateMatchPlan {
  std::uint64_t n_a = 0;
  std::uint64_t n_r = 0;
  std::uint64_t period = 1;
  std::vector<bool> pattern;

  std::uint64_t implicit_per_period() const;
  friend bool operator==(const RateMatchPlan&, const RateMatchPlan&) = default;
};

// Credit-based rate matching between n_a accessed rows and n_r rows that need
// refresh per retention window. Throws Error(kZeroRefreshRows) for n_r == 0.
RateMatchPlan rate_match(std::uint64_t n_a, std::uint64_t n_r);

// xfer flag of an absolute slot index: pattern[slot mod period].
inline bool schedule_window(const RateMatchPlan& plan, std::uint64_t slot) {
  return plan.pattern[slot % plan.period];
}

}  // namespace rtcsim
