#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "rtcsim/agu.hpp"
#include "rtcsim/dram_model.hpp"

namespace rtcsim {

enum class LayerKind : std::uint8_t { kConv, kPool, kClassifier };

struct CnnLayerSpec {
  std::string name;
  LayerKind kind = LayerKind::kConv;
  std::uint64_t input_fmap_bytes = 0;
  std::uint64_t weight_bytes = 0;
  std::uint64_t output_fmap_bytes = 0;
};

struct NetworkSpec {
  std::string name;
  std::vector<CnnLayerSpec> layers;

  std::uint64_t weight_bytes() const;
  // Largest input + output pair alive at once.
  std::uint64_t max_live_fmap_bytes() const;
  // Σ weights + max simultaneously-live fmap bytes.
  std::uint64_t footprint_bytes() const;
};

// Parses the network text format: `network <name>` followed by lines of
// `<layer> <conv|pool|classifier> <input_bytes> <weight_bytes> <output_bytes>`.
// '#' starts a comment. Throws Error(kConfigInvalid) with a line number.
NetworkSpec parse_network(std::istream& in, const std::string& origin = "<stream>");
NetworkSpec load_network(const std::filesystem::path& path);

enum class SyntheticPattern : std::uint8_t { kStreaming, kRepeatedScan, kRandom };

struct SyntheticSpec {
  SyntheticPattern pattern = SyntheticPattern::kStreaming;
  std::uint64_t footprint_bytes = 0;
  // Scans per iteration (repeated-scan); ignored otherwise.
  std::uint32_t passes = 1;
  // Fraction of visits that are writes, applied as a trailing write pass over
  // the first write_fraction of the footprint (streaming/repeated-scan).
  double write_fraction = 0.0;
};

enum class DemandKind : std::uint8_t { kRead, kWrite, kAlloc, kFree };
const char* demand_kind_tag(DemandKind kind);

struct DemandEvent {
  Nanoseconds t = 0;
  DemandKind kind = DemandKind::kRead;
  RowIndex row = 0;

  friend bool operator==(const DemandEvent&, const DemandEvent&) = default;
};

struct TraceFile {
  std::uint64_t topology_hash = 0;
  Nanoseconds period_ns = 0;
  std::vector<DemandEvent> events;  // sorted by time
};

struct WorkloadDecl {
  std::string name;
  std::variant<NetworkSpec, SyntheticSpec, TraceFile> source;
  double fps = 60.0;
  // 1/k for a positive integer k: reads are repeated k times per iteration.
  double locality = 1.0;
  RowIndex base_row = 0;
  // Rows allocated after the working set that the iteration never touches.
  std::uint64_t idle_rows = 0;
  std::uint64_t seed = 0;

  Nanoseconds period_ns() const;
  std::uint32_t read_passes() const;
};

// Contiguous run of row visits with a common direction.
struct VisitStream {
  RowIndex base = 0;
  std::int64_t stride = 1;
  std::uint64_t count = 0;
  bool write = false;
};

struct AguDerivation {
  std::optional<AguProgram> program;  // absent when not representable
  std::uint64_t n_a = 0;
  std::string reason;  // why no program was derived
};

// A workload bound to a device: allocation layout plus deterministic per-frame
// demand generation.
class Workload {
 public:
  // Throws Error(kFootprintExceedsCapacity) when the allocation does not fit
  // and Error(kConfigInvalid) for malformed declarations.
  Workload(WorkloadDecl decl, const DramTopology& topology);

  const WorkloadDecl& decl() const { return decl_; }
  Nanoseconds period_ns() const { return period_ns_; }
  // Allocated rows (sorted, merged), live from t = 0 unless the trace says
  // otherwise.
  const std::vector<RowRange>& allocation() const { return allocation_; }
  std::uint64_t allocated_rows() const;
  RowIndex allocated_lo() const;
  RowIndex allocated_hi() const;
  // Liveness events: ALLOC/FREE from a trace, or one ALLOC per allocated row
  // at t = 0 for generated workloads.
  std::vector<DemandEvent> liveness_events() const;

  // Row visits of one frame, timestamps paced uniformly across the frame.
  std::vector<DemandEvent> generate_frame_trace(std::uint64_t frame) const;
  void generate_frame_trace(std::uint64_t frame, std::vector<DemandEvent>& out) const;
  std::uint64_t visits_per_iteration() const;
  std::uint64_t read_visits_per_iteration() const;
  std::uint64_t write_visits_per_iteration() const;

  // n_a = floor(visits per iteration × t_refw / period).
  std::uint64_t rows_accessed_per_window() const;

  // Compresses one iteration into affine segments over [region_lo,
  // region_lo + region_size). Not representable when the pattern changes
  // between iterations or needs more than max_segments segments.
  AguDerivation derive_agu_program(std::size_t max_segments, RowIndex region_lo,
                                   std::uint64_t region_size) const;

  // Frame-local stream description (empty for trace-backed or random
  // workloads, which are materialized per frame).
  const std::vector<VisitStream>& streams() const { return streams_; }

 private:
  void layout_network(const NetworkSpec& net);
  void layout_synthetic(const SyntheticSpec& spec);
  void layout_trace(const TraceFile& trace);
  void frame_rows(std::uint64_t frame, std::vector<DemandEvent>& out) const;

  WorkloadDecl decl_;
  DramTopology topology_;
  Nanoseconds period_ns_ = 0;
  std::vector<RowRange> allocation_;
  std::vector<VisitStream> streams_;
  std::uint64_t visits_per_iteration_ = 0;
  std::uint64_t write_visits_ = 0;
};

// Trace file: header `# rtcsim-trace v1 topology=<hex> period_ns=<n>` then
// `timestamp_ns kind bank row` lines with kind in {R, W, ALLOC, FREE}.
void write_trace(std::ostream& out, const DramTopology& topology, Nanoseconds period_ns,
                 const std::vector<DemandEvent>& events);
// Throws Error(kTraceMismatch) when the header's topology hash differs from
// `topology`, Error(kConfigInvalid) on malformed lines.
TraceFile read_trace(std::istream& in, const DramTopology& topology);

}  // namespace rtcsim
