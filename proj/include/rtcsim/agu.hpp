#pragma once

#include <cstdint>
#include <vector>

#include "rtcsim/topology.hpp"

namespace rtcsim {

struct AffineSegment {
  RowIndex base = 0;
  std::int64_t stride = 1;
  std::uint64_t count = 1;

  friend bool operator==(const AffineSegment&, const AffineSegment&) = default;
};

// Piecewise-affine row-visit program. Addresses wrap modulo the region size
// (the PAAR region when set, otherwise the whole device) relative to
// region_lo.
struct AguProgram {
  std::vector<AffineSegment> segments;
  bool repeat = true;
  RowIndex region_lo = 0;
  std::uint64_t region_size = 0;

  std::uint64_t length() const;
  // Throws Error(kConfigInvalid) on an empty program, a zero count, a zero
  // region, or a base outside the region.
  void validate() const;
  // Encoded as configuration words: [segment count, base, stride, count, ...].
  std::vector<std::int64_t> to_words() const;
};

// position-th address of the flattened program. Throws
// Error(kPositionOutOfProgram) when repeat is false and position >= length().
RowIndex emit(const AguProgram& program, std::uint64_t position);

struct CoverageReport {
  bool covered = false;
  std::vector<RowIndex> missing;  // capped at kMissingCap entries
  std::uint64_t missing_total = 0;
  static constexpr std::size_t kMissingCap = 64;
};

// Whether one iteration of the program visits every row in [lo, hi].
CoverageReport covers(const AguProgram& program, RowIndex lo, RowIndex hi);

// Sequential emitter for hot loops; equivalent to emit(program, 0), emit(1)...
class AguCursor {
 public:
  explicit AguCursor(const AguProgram& program);
  RowIndex next();
  std::uint64_t position() const { return position_; }

 private:
  const AguProgram* program_;
  std::size_t segment_ = 0;
  std::uint64_t offset_ = 0;
  std::uint64_t position_ = 0;
};

}  // namespace rtcsim
