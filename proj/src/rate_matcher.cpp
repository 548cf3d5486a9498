#include "rtcsim/rate_matcher.hpp"

#include <algorithm>
#include <numeric>

#include "rtcsim/error.hpp"

namespace rtcsim {

std::uint64_t RateMatchPlan::implicit_per_period() const {
  return static_cast<std::uint64_t>(std::count(pattern.begin(), pattern.end(), true));
}

RateMatchPlan rate_match(std::uint64_t n_a, std::uint64_t n_r) {
  if (n_r == 0) throw Error(ErrorCode::kZeroRefreshRows, "n_r must be >= 1");

  RateMatchPlan plan{n_a, n_r, 1, {}};
  if (n_r <= n_a) {
    plan.pattern = {true};
    return plan;
  }
  // gcd(n_r, 0) == n_r, so n_a == 0 yields a single explicit slot.
  plan.period = n_r / std::gcd(n_r, n_a);
  plan.pattern.reserve(plan.period);

  const std::uint64_t deficit = n_r - n_a;
  std::uint64_t credit = n_r;
  for (std::uint64_t i = 0; i < plan.period; ++i) {
    if (credit > deficit) {
      plan.pattern.push_back(true);
      credit -= deficit;
    } else {
      plan.pattern.push_back(false);
      credit += n_a;
    }
  }
  return plan;
}

}  // namespace rtcsim
