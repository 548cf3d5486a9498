#pragma once

#include <cstdint>
#include <string>

namespace rtcsim {

using Nanoseconds = std::int64_t;
using RowIndex = std::uint64_t;

inline constexpr Nanoseconds kMillisecond = 1'000'000;

// Geometry and refresh timing of one simulated rank.
struct DramTopology {
  std::uint32_t num_banks = 8;
  std::uint64_t rows_per_bank = 131072;
  std::uint32_t row_size_bytes = 2048;
  Nanoseconds t_refw_ns = 64 * kMillisecond;
  Nanoseconds t_refi_ns = 7800;
  // Command timing is carried for completeness; the simulator is
  // event-granular and only uses t_rfc_ns (REF blocks demand for that long).
  Nanoseconds t_rcd_ns = 18;
  Nanoseconds t_ras_ns = 42;
  Nanoseconds t_rp_ns = 18;
  Nanoseconds t_rfc_ns = 280;
  std::uint32_t burst_bytes = 8;

  RowIndex total_rows() const { return num_banks * rows_per_bank; }
  std::uint64_t capacity_bytes() const { return total_rows() * row_size_bytes; }
  std::uint32_t bursts_per_row() const { return row_size_bytes / burst_bytes; }

  // Number of batch REF commands per retention window: floor(t_refw/t_refi)
  // truncated to a power of two (8205 -> 8192 for the defaults).
  std::uint64_t ref_slots_per_window() const;
  // ceil(total_rows / ref_slots_per_window()).
  std::uint64_t rows_per_ref() const;
  // Issue time of the n-th REF slot since t=0 (cadence t_refw / slots).
  Nanoseconds ref_slot_time(std::uint64_t slot) const;

  // Throws Error(kConfigInvalid) when an invariant does not hold.
  void validate() const;

  // Stable 64-bit identity used in trace headers and reports.
  std::uint64_t hash() const;

  static DramTopology with_capacity(std::uint64_t capacity_bytes,
                                    std::uint32_t num_banks = 8,
                                    std::uint32_t row_size_bytes = 2048);
};

struct RowAddress {
  std::uint32_t bank = 0;
  std::uint64_t row = 0;

  friend bool operator==(const RowAddress&, const RowAddress&) = default;
};

RowIndex to_global(const DramTopology& topo, RowAddress addr);
RowAddress to_address(const DramTopology& topo, RowIndex global);

inline constexpr std::uint64_t kGiB = 1ull << 30;

std::string hex64(std::uint64_t value);

}  // namespace rtcsim
