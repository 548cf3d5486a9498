#include "rtcsim/topology.hpp"

#include <bit>
#include <cstdio>

#include "rtcsim/error.hpp"
#include "rtcsim/hash.hpp"

namespace rtcsim {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kIllegalCommand: return "IllegalCommand";
    case ErrorCode::kOutOfRange: return "OutOfRange";
    case ErrorCode::kAmbiguousConfigRequest: return "AmbiguousConfigRequest";
    case ErrorCode::kZeroRefreshRows: return "ZeroRefreshRows";
    case ErrorCode::kPositionOutOfProgram: return "PositionOutOfProgram";
    case ErrorCode::kFootprintExceedsCapacity: return "FootprintExceedsCapacity";
    case ErrorCode::kNotAffineRepresentable: return "NotAffineRepresentable";
    case ErrorCode::kUnknownKind: return "UnknownKind";
    case ErrorCode::kConfigInvalid: return "ConfigInvalid";
    case ErrorCode::kWorkloadInfeasible: return "WorkloadInfeasible";
    case ErrorCode::kAxisMismatch: return "AxisMismatch";
    case ErrorCode::kTraceMismatch: return "TraceMismatch";
    case ErrorCode::kIo: return "Io";
  }
  return "Unknown";
}

std::uint64_t DramTopology::ref_slots_per_window() const {
  const auto quotient = static_cast<std::uint64_t>(t_refw_ns / t_refi_ns);
  return std::bit_floor(quotient);
}

std::uint64_t DramTopology::rows_per_ref() const {
  const std::uint64_t slots = ref_slots_per_window();
  return (total_rows() + slots - 1) / slots;
}

Nanoseconds DramTopology::ref_slot_time(std::uint64_t slot) const {
  const std::uint64_t slots = ref_slots_per_window();
  const std::uint64_t window = slot / slots;
  const std::uint64_t within = slot % slots;
  return static_cast<Nanoseconds>(window) * t_refw_ns +
         static_cast<Nanoseconds>(within * static_cast<std::uint64_t>(t_refw_ns) / slots);
}

void DramTopology::validate() const {
  auto fail = [](const char* field, const char* why) {
    throw Error(ErrorCode::kConfigInvalid,
                std::string("topology.") + field + ": " + why);
  };
  if (num_banks < 1) fail("num_banks", "must be >= 1");
  if (rows_per_bank < 1) fail("rows_per_bank", "must be >= 1");
  if (row_size_bytes == 0 || !std::has_single_bit(row_size_bytes))
    fail("row_size_bytes", "must be a power of two");
  if (burst_bytes == 0 || !std::has_single_bit(burst_bytes) ||
      burst_bytes > row_size_bytes)
    fail("burst_bytes", "must be a power of two no larger than a row");
  if (t_refi_ns <= 0) fail("t_refi_ns", "must be positive");
  if (t_refw_ns < t_refi_ns) fail("t_refw_ns", "must be >= t_refi_ns");
  if (t_rfc_ns < 0 || t_rfc_ns >= t_refi_ns)
    fail("t_rfc_ns", "must be in [0, t_refi_ns)");
}

std::uint64_t DramTopology::hash() const {
  Fnv1a h;
  h.update_u64(num_banks);
  h.update_u64(rows_per_bank);
  h.update_u64(row_size_bytes);
  h.update_u64(static_cast<std::uint64_t>(t_refw_ns));
  h.update_u64(static_cast<std::uint64_t>(t_refi_ns));
  h.update_u64(burst_bytes);
  return h.digest();
}

DramTopology DramTopology::with_capacity(std::uint64_t capacity_bytes,
                                         std::uint32_t num_banks,
                                         std::uint32_t row_size_bytes) {
  DramTopology topo;
  topo.num_banks = num_banks;
  topo.row_size_bytes = row_size_bytes;
  const std::uint64_t per_bank = static_cast<std::uint64_t>(num_banks) * row_size_bytes;
  if (capacity_bytes == 0 || capacity_bytes % per_bank != 0)
    throw Error(ErrorCode::kConfigInvalid,
                "capacity must be a positive multiple of num_banks * row_size_bytes");
  topo.rows_per_bank = capacity_bytes / per_bank;
  return topo;
}

RowIndex to_global(const DramTopology& topo, RowAddress addr) {
  if (addr.bank >= topo.num_banks || addr.row >= topo.rows_per_bank)
    throw Error(ErrorCode::kOutOfRange, "row address beyond topology");
  return static_cast<RowIndex>(addr.bank) * topo.rows_per_bank + addr.row;
}

RowAddress to_address(const DramTopology& topo, RowIndex global) {
  if (global >= topo.total_rows())
    throw Error(ErrorCode::kOutOfRange, "global row index beyond topology");
  return RowAddress{static_cast<std::uint32_t>(global / topo.rows_per_bank),
                    global % topo.rows_per_bank};
}

std::string hex64(std::uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(value));
  return buf;
}

}  // namespace rtcsim
