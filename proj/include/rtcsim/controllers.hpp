#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rtcsim/agu.hpp"
#include "rtcsim/dram_model.hpp"
#include "rtcsim/workloads.hpp"

namespace rtcsim {

enum class Policy : std::uint8_t { kBaseline, kPasr, kSmartRefresh, kMinRtc, kMidRtc, kFullRtc };

// Policy labels as used in configs and reports. Full-RTC ablations are
// labeled "FullRtcRttOnly" and "FullRtcPaarOnly".
std::string policy_label(Policy policy, bool rtt = true, bool paar = true);

struct PolicySelection {
  Policy policy = Policy::kBaseline;
  bool rtt = true;
  bool paar = true;
};
// Throws Error(kUnknownKind) for an unrecognized label.
PolicySelection parse_policy(std::string_view label);

struct RatePair {
  std::uint64_t n_a = 0;
  std::uint64_t n_r = 0;
};

struct ControllerConfig {
  Policy policy = Policy::kBaseline;

  // Full-RTC feature switches.
  bool rtt = true;
  bool paar_enabled = true;

  // Explicit overrides; when absent they are derived from the workload.
  std::optional<PaarBounds> paar;
  std::optional<std::vector<bool>> bank_mask;
  std::optional<AguProgram> agu;
  std::optional<RatePair> rate;

  std::uint32_t smart_bits = 3;
  std::size_t agu_max_segments = 128;
  Nanoseconds pasr_idle_threshold_ns = 100'000;
  // Cost of one configuration word pushed through the RTC interface.
  Nanoseconds config_word_ns = 10;
  // Min/Mid-RTC additionally require n_a >= n_r before suppressing refresh.
  bool min_rtc_rate_gate = false;
  // Fault injection: certify coverage without checking it.
  bool skip_coverage_check = false;

  std::string label() const { return policy_label(policy, rtt, paar_enabled); }
  void validate() const;
};

// Per-row liveness for one device.
class AllocationMap {
 public:
  AllocationMap(const DramTopology& topology, const std::vector<RowRange>& allocated);

  bool live(RowIndex row) const { return live_[row] != 0; }
  std::uint64_t allocated_rows() const { return allocated_; }
  // enabled[b] is true when bank b holds at least one allocated row.
  std::vector<bool> bank_mask() const;
  std::vector<std::uint32_t> unallocated_banks() const;
  // Bounding range of the allocation; disabled when nothing is allocated.
  PaarBounds bounding_range() const;

 private:
  DramTopology topology_;
  std::vector<std::uint8_t> live_;
  std::uint64_t allocated_ = 0;
  std::vector<std::uint64_t> per_bank_;
};

// Outcome of checking whether demand alone keeps every allocated row fresh.
struct CoverageCertificate {
  bool certified = false;
  std::optional<AguProgram> program;
  std::uint64_t n_a = 0;
  std::string reason;  // empty when certified
};

// period <= t_refw, the iteration is affine-representable, and one iteration
// visits every allocated row. With skip_check the coverage test is bypassed.
CoverageCertificate certify_coverage(const Workload& workload, const DramTopology& topology,
                                     const PaarBounds& region, std::size_t max_segments,
                                     bool skip_check = false);

}  // namespace rtcsim
