#include "rtcsim/agu.hpp"

#include <algorithm>

#include "rtcsim/error.hpp"

namespace rtcsim {

namespace {

RowIndex segment_address(const AguProgram& p, const AffineSegment& s,
                         std::uint64_t k) {
  const auto size = static_cast<std::int64_t>(p.region_size);
  const auto rel = static_cast<std::int64_t>(s.base - p.region_lo);
  // stride * k can be large; reduce each factor first.
  const std::int64_t step = ((s.stride % size) + size) % size;
  const auto kk = static_cast<std::int64_t>(k % static_cast<std::uint64_t>(size));
  const auto prod = static_cast<std::int64_t>(
      (static_cast<__int128>(step) * kk) % size);
  return p.region_lo + static_cast<RowIndex>((rel + prod) % size);
}

}  // namespace

std::uint64_t AguProgram::length() const {
  std::uint64_t n = 0;
  for (const auto& s : segments) n += s.count;
  return n;
}

void AguProgram::validate() const {
  if (segments.empty()) throw Error(ErrorCode::kConfigInvalid, "AGU program is empty");
  if (region_size == 0) throw Error(ErrorCode::kConfigInvalid, "AGU region is empty");
  for (const auto& s : segments) {
    if (s.count == 0)
      throw Error(ErrorCode::kConfigInvalid, "AGU segment count must be >= 1");
    if (s.base < region_lo || s.base >= region_lo + region_size)
      throw Error(ErrorCode::kConfigInvalid, "AGU segment base outside region");
  }
}

std::vector<std::int64_t> AguProgram::to_words() const {
  std::vector<std::int64_t> words;
  words.reserve(1 + 3 * segments.size());
  words.push_back(static_cast<std::int64_t>(segments.size()));
  for (const auto& s : segments) {
    words.push_back(static_cast<std::int64_t>(s.base));
    words.push_back(s.stride);
    words.push_back(static_cast<std::int64_t>(s.count));
  }
  return words;
}

RowIndex emit(const AguProgram& program, std::uint64_t position) {
  if (program.region_size == 0)
    throw Error(ErrorCode::kConfigInvalid, "AGU region is empty");
  const std::uint64_t len = program.length();
  if (len == 0) throw Error(ErrorCode::kPositionOutOfProgram, "empty program");
  if (position >= len) {
    if (!program.repeat)
      throw Error(ErrorCode::kPositionOutOfProgram, "position beyond program");
    position %= len;
  }
  for (const auto& s : program.segments) {
    if (position < s.count) return segment_address(program, s, position);
    position -= s.count;
  }
  throw Error(ErrorCode::kPositionOutOfProgram, "position beyond program");
}

CoverageReport covers(const AguProgram& program, RowIndex lo, RowIndex hi) {
  CoverageReport report;
  if (program.region_size == 0)
    throw Error(ErrorCode::kConfigInvalid, "AGU region is empty");
  if (hi < lo) {
    report.covered = true;
    return report;
  }
  std::vector<bool> seen(hi - lo + 1, false);
  for (const auto& s : program.segments)
    for (std::uint64_t k = 0; k < s.count; ++k) {
      const RowIndex row = segment_address(program, s, k);
      if (row >= lo && row <= hi) seen[row - lo] = true;
    }
  for (std::uint64_t i = 0; i < seen.size(); ++i) {
    if (seen[i]) continue;
    ++report.missing_total;
    if (report.missing.size() < CoverageReport::kMissingCap)
      report.missing.push_back(lo + i);
  }
  report.covered = report.missing_total == 0;
  return report;
}

AguCursor::AguCursor(const AguProgram& program) : program_(&program) {}

RowIndex AguCursor::next() {
  const auto& segs = program_->segments;
  if (segment_ >= segs.size()) {
    if (!program_->repeat)
      throw Error(ErrorCode::kPositionOutOfProgram, "position beyond program");
    segment_ = 0;
  }
  const RowIndex row = segment_address(*program_, segs[segment_], offset_);
  ++position_;
  if (++offset_ == segs[segment_].count) {
    offset_ = 0;
    ++segment_;
  }
  return row;
}

}  // namespace rtcsim
