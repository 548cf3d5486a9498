#include "rtcsim/controllers.hpp"

#include <algorithm>

#include "rtcsim/error.hpp"

namespace rtcsim {

std::string policy_label(Policy policy, bool rtt, bool paar) {
  switch (policy) {
    case Policy::kBaseline: return "Baseline";
    case Policy::kPasr: return "Pasr";
    case Policy::kSmartRefresh: return "SmartRefresh";
    case Policy::kMinRtc: return "MinRtc";
    case Policy::kMidRtc: return "MidRtc";
    case Policy::kFullRtc:
      if (rtt && !paar) return "FullRtcRttOnly";
      if (!rtt && paar) return "FullRtcPaarOnly";
      if (!rtt && !paar) return "FullRtcOff";
      return "FullRtc";
  }
  return "?";
}

PolicySelection parse_policy(std::string_view label) {
  if (label == "Baseline") return {Policy::kBaseline};
  if (label == "Pasr") return {Policy::kPasr};
  if (label == "SmartRefresh") return {Policy::kSmartRefresh};
  if (label == "MinRtc") return {Policy::kMinRtc};
  if (label == "MidRtc") return {Policy::kMidRtc};
  if (label == "FullRtc") return {Policy::kFullRtc, true, true};
  if (label == "FullRtcRttOnly") return {Policy::kFullRtc, true, false};
  if (label == "FullRtcPaarOnly") return {Policy::kFullRtc, false, true};
  throw Error(ErrorCode::kUnknownKind, "unknown policy '" + std::string(label) + "'");
}

void ControllerConfig::validate() const {
  if (smart_bits < 1 || smart_bits > 8)
    throw Error(ErrorCode::kConfigInvalid, "controller.smart_bits: must be in [1, 8]");
  if (agu_max_segments == 0)
    throw Error(ErrorCode::kConfigInvalid, "controller.agu_max_segments: must be positive");
  if (pasr_idle_threshold_ns < 0)
    throw Error(ErrorCode::kConfigInvalid, "controller.pasr_idle_threshold_ns: must be >= 0");
  if (config_word_ns < 0)
    throw Error(ErrorCode::kConfigInvalid, "controller.config_word_ns: must be >= 0");
  if (rate && rate->n_r == 0)
    throw Error(ErrorCode::kZeroRefreshRows, "controller.rate: n_r must be positive");
}

AllocationMap::AllocationMap(const DramTopology& topology, const std::vector<RowRange>& allocated)
    : topology_(topology), live_(topology.total_rows(), 0), per_bank_(topology.num_banks, 0) {
  for (const auto& r : allocated) {
    if (r.first + r.count > topology.total_rows())
      throw Error(ErrorCode::kFootprintExceedsCapacity, "allocation beyond the device");
    for (RowIndex row = r.first; row < r.first + r.count; ++row) {
      if (live_[row]) continue;
      live_[row] = 1;
      ++allocated_;
      ++per_bank_[row / topology.rows_per_bank];
    }
  }
}

std::vector<bool> AllocationMap::bank_mask() const {
  std::vector<bool> mask(per_bank_.size());
  for (std::size_t b = 0; b < mask.size(); ++b) mask[b] = per_bank_[b] > 0;
  return mask;
}

std::vector<std::uint32_t> AllocationMap::unallocated_banks() const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t b = 0; b < per_bank_.size(); ++b)
    if (per_bank_[b] == 0) out.push_back(b);
  return out;
}

PaarBounds AllocationMap::bounding_range() const {
  PaarBounds bounds;
  auto first = std::find(live_.begin(), live_.end(), 1);
  if (first == live_.end()) return bounds;
  auto last = std::find(live_.rbegin(), live_.rend(), 1);
  bounds.lo = static_cast<RowIndex>(first - live_.begin());
  bounds.hi = static_cast<RowIndex>(live_.rend() - last - 1);
  bounds.enabled = true;
  return bounds;
}

CoverageCertificate certify_coverage(const Workload& workload, const DramTopology& topology,
                                     const PaarBounds& region, std::size_t max_segments,
                                     bool skip_check) {
  CoverageCertificate cert;
  const RowIndex lo = region.enabled ? region.lo : 0;
  const std::uint64_t size = region.enabled ? region.size() : topology.total_rows();
  auto derived = workload.derive_agu_program(max_segments, lo, size);
  cert.n_a = derived.n_a;
  cert.program = std::move(derived.program);
  if (workload.period_ns() > topology.t_refw_ns) {
    cert.reason = "iteration period " + std::to_string(workload.period_ns()) +
                  " ns exceeds the retention window";
    return cert;
  }
  if (!cert.program) {
    cert.reason = "not affine-representable: " + derived.reason;
    return cert;
  }
  if (!skip_check) {
    for (const auto& r : workload.allocation()) {
      auto report = covers(*cert.program, r.first, r.first + r.count - 1);
      if (!report.covered) {
        cert.reason = std::to_string(report.missing_total) +
                      " allocated rows are never visited (first: row " +
                      std::to_string(report.missing.front()) + ")";
        return cert;
      }
    }
  }
  cert.certified = true;
  return cert;
}

}  // namespace rtcsim
