#include <gtest/gtest.h>

#include "rtcsim/error.hpp"
#include "rtcsim/topology.hpp"

using namespace rtcsim;

TEST(Topology, DefaultsGiveEightKRefSlots) {
  DramTopology t;
  // 64 ms / 7.8 us = 8205, truncated to a power of two.
  EXPECT_EQ(t.ref_slots_per_window(), 8192u);
}

TEST(Topology, EightGigabyteRowCount) {
  const auto t = DramTopology::with_capacity(8 * kGiB);
  EXPECT_EQ(t.total_rows(), 4194304u);
  EXPECT_EQ(t.rows_per_ref(), 512u);
  EXPECT_EQ(t.capacity_bytes(), 8 * kGiB);
}

TEST(Topology, TwoGigabyteRowCount) {
  const auto t = DramTopology::with_capacity(2 * kGiB);
  EXPECT_EQ(t.total_rows(), 1048576u);
  EXPECT_EQ(t.rows_per_ref(), 128u);
  EXPECT_EQ(t.bursts_per_row(), 256u);
}

TEST(Topology, RowsPerRefRoundsUp) {
  DramTopology t;
  t.num_banks = 1;
  t.rows_per_bank = 8193;
  EXPECT_EQ(t.rows_per_ref(), 2u);
}

TEST(Topology, SlotTimesCoverWindowExactly) {
  DramTopology t;
  EXPECT_EQ(t.ref_slot_time(0), 0);
  EXPECT_EQ(t.ref_slot_time(8192), t.t_refw_ns);
  EXPECT_LT(t.ref_slot_time(8191), t.t_refw_ns);
  for (std::uint64_t s = 1; s < 3 * 8192; s += 97)
    EXPECT_GT(t.ref_slot_time(s), t.ref_slot_time(s - 1));
}

TEST(Topology, ValidateRejectsNonPowerOfTwoRow) {
  DramTopology t;
  t.row_size_bytes = 3000;
  EXPECT_THROW(t.validate(), Error);
  t.row_size_bytes = 2048;
  t.num_banks = 0;
  EXPECT_THROW(t.validate(), Error);
}

TEST(Topology, AddressRoundTrip) {
  const auto t = DramTopology::with_capacity(2 * kGiB);
  for (RowIndex g : {RowIndex{0}, RowIndex{131071}, RowIndex{131072}, RowIndex{1048575}}) {
    EXPECT_EQ(to_global(t, to_address(t, g)), g);
  }
  EXPECT_EQ(to_address(t, 131072).bank, 1u);
  EXPECT_EQ(to_address(t, 131072).row, 0u);
  try {
    to_address(t, t.total_rows());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kOutOfRange);
  }
}

TEST(Topology, HashDistinguishesCapacity) {
  EXPECT_NE(DramTopology::with_capacity(2 * kGiB).hash(),
            DramTopology::with_capacity(4 * kGiB).hash());
  EXPECT_EQ(DramTopology::with_capacity(2 * kGiB).hash(),
            DramTopology::with_capacity(2 * kGiB).hash());
}
