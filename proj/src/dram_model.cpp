#include "rtcsim/dram_model.hpp"

#include <algorithm>
#include <string>

#include "rtcsim/error.hpp"

namespace rtcsim {

const char* command_kind_name(CommandKind kind) {
  switch (kind) {
    case CommandKind::kAct: return "ACT";
    case CommandKind::kPre: return "PRE";
    case CommandKind::kRd: return "RD";
    case CommandKind::kWr: return "WR";
    case CommandKind::kRef: return "REF";
    case CommandKind::kRefRow: return "REF_ROW";
  }
  return "?";
}

std::uint64_t CommandEffect::row_count() const {
  std::uint64_t n = 0;
  for (const auto& r : ranges) n += r.count;
  return n;
}

std::vector<RowIndex> CommandEffect::rows() const { return expand(ranges); }

std::vector<RowIndex> expand(std::span<const RowRange> ranges) {
  std::vector<RowIndex> out;
  for (const auto& r : ranges)
    for (std::uint64_t i = 0; i < r.count; ++i) out.push_back(r.first + i);
  return out;
}

DramModel::DramModel(const DramTopology& topology, std::uint64_t rows_per_ref)
    : topology_(topology),
      rows_per_ref_(rows_per_ref == 0 ? topology.rows_per_ref() : rows_per_ref),
      banks_(topology.num_banks) {
  topology_.validate();
}

void DramModel::set_paar(const PaarBounds& bounds) {
  if (bounds.enabled) {
    if (bounds.lo > bounds.hi || bounds.hi >= topology_.total_rows())
      throw Error(ErrorCode::kOutOfRange, "PAAR bounds outside the device");
    if (counter_ < bounds.lo || counter_ > bounds.hi) counter_ = bounds.lo;
  }
  paar_ = bounds;
}

void DramModel::set_refresh_counter(RowIndex row) {
  if (row >= topology_.total_rows())
    throw Error(ErrorCode::kOutOfRange, "refresh counter beyond the device");
  counter_ = row;
}

void DramModel::set_bank_mask(std::vector<bool> refresh_enabled) {
  if (!refresh_enabled.empty() && refresh_enabled.size() != topology_.num_banks)
    throw Error(ErrorCode::kOutOfRange, "bank mask size differs from bank count");
  bank_mask_ = std::move(refresh_enabled);
}

bool DramModel::bank_refresh_enabled(std::uint32_t bank) const {
  return bank_mask_.empty() || bank_mask_[bank];
}

void DramModel::compute_batch(std::uint64_t count, std::vector<RowRange>& out,
                              RowIndex& next_counter) const {
  out.clear();
  const RowIndex lo = paar_.enabled ? paar_.lo : 0;
  const std::uint64_t size = paar_.enabled ? paar_.size() : topology_.total_rows();
  const RowIndex end = lo + size;
  if (count >= size) {
    // Whole region in one batch, starting at the counter.
    out.push_back({counter_, end - counter_});
    if (counter_ != lo) out.push_back({lo, counter_ - lo});
    next_counter = lo + (counter_ - lo + count) % size;
    return;
  }
  const std::uint64_t first = std::min<std::uint64_t>(count, end - counter_);
  out.push_back({counter_, first});
  if (first < count) out.push_back({lo, count - first});
  next_counter = lo + (counter_ - lo + count) % size;
}

std::span<const RowRange> DramModel::advance_refresh_counter(std::uint64_t count) {
  RowIndex next = counter_;
  compute_batch(count, batch_, next);
  counter_ = next;
  return batch_;
}

std::span<const RowRange> DramModel::peek_refresh_batch(std::uint64_t count) {
  RowIndex next = counter_;
  compute_batch(count, batch_, next);
  return batch_;
}

bool DramModel::touches_enabled_bank(std::span<const RowRange> ranges) const {
  if (bank_mask_.empty()) return true;
  for (const auto& r : ranges) {
    if (r.count == 0) continue;
    const auto first_bank = r.first / topology_.rows_per_bank;
    const auto last_bank = (r.first + r.count - 1) / topology_.rows_per_bank;
    for (auto b = first_bank; b <= last_bank; ++b)
      if (bank_mask_[b]) return true;
  }
  return false;
}

void DramModel::mask_ranges(std::span<const RowRange> in,
                            std::vector<RowRange>& out) const {
  out.clear();
  const auto rpb = topology_.rows_per_bank;
  for (const auto& r : in) {
    if (bank_mask_.empty()) {
      out.push_back(r);
      continue;
    }
    RowIndex row = r.first;
    const RowIndex end = r.first + r.count;
    while (row < end) {
      const auto bank = row / rpb;
      const RowIndex bank_end = std::min<RowIndex>(end, (bank + 1) * rpb);
      if (bank_mask_[bank]) {
        if (!out.empty() && out.back().first + out.back().count == row)
          out.back().count += bank_end - row;
        else
          out.push_back({row, bank_end - row});
      }
      row = bank_end;
    }
  }
}

CommandEffect DramModel::apply(const DramCommand& cmd) {
  auto illegal = [&](const std::string& why) {
    throw Error(ErrorCode::kIllegalCommand,
                std::string(command_kind_name(cmd.kind)) + " @" +
                    std::to_string(cmd.timestamp) + ": " + why);
  };
  if (cmd.timestamp < last_timestamp_) illegal("timestamp goes backwards");

  CommandEffect effect;
  effect.replenished_at = cmd.timestamp;
  effect_.clear();

  const bool targeted = cmd.kind != CommandKind::kRef;
  if (targeted) {
    if (cmd.target.bank >= topology_.num_banks)
      throw Error(ErrorCode::kOutOfRange, "bank beyond topology");
    if (cmd.kind != CommandKind::kPre && cmd.target.row >= topology_.rows_per_bank)
      throw Error(ErrorCode::kOutOfRange, "row beyond topology");
  }

  switch (cmd.kind) {
    case CommandKind::kAct: {
      auto& bank = banks_[cmd.target.bank];
      if (bank.open) illegal("bank already open");
      bank = {true, cmd.target.row, cmd.timestamp};
      effect.opened_bank = cmd.target.bank;
      break;
    }
    case CommandKind::kRd:
    case CommandKind::kWr: {
      const auto& bank = banks_[cmd.target.bank];
      if (!bank.open) illegal("bank closed");
      if (bank.row != cmd.target.row) illegal("row not open");
      break;
    }
    case CommandKind::kPre: {
      auto& bank = banks_[cmd.target.bank];
      if (!bank.open) illegal("bank not open");
      bank.open = false;
      // The ACT-PRE pair restores the row; charge is stamped at ACT.
      effect_.push_back({to_global(topology_, {cmd.target.bank, bank.row}), 1});
      effect.replenished_at = bank.act_time;
      effect.closed_bank = cmd.target.bank;
      break;
    }
    case CommandKind::kRef: {
      for (const auto& b : banks_)
        if (b.open) illegal("REF with an open bank");
      advance_refresh_counter(rows_per_ref_);
      mask_ranges(batch_, effect_);
      break;
    }
    case CommandKind::kRefRow: {
      if (banks_[cmd.target.bank].open) illegal("REF_ROW on an open bank");
      effect_.push_back({to_global(topology_, cmd.target), 1});
      break;
    }
  }
  last_timestamp_ = cmd.timestamp;
  effect.ranges = effect_;
  return effect;
}

}  // namespace rtcsim
