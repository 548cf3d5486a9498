#include <gtest/gtest.h>

#include "rtcsim/error.hpp"
#include "rtcsim/retention_oracle.hpp"
#include "oracles.hpp"

using namespace rtcsim;

namespace {

constexpr Nanoseconds kRet = 64 * kMillisecond;

std::vector<RowRange> one(RowIndex r) { return {RowRange{r, 1}}; }

}  // namespace

TEST(RetentionOracle, GapWithinRetentionIsSafe) {
  RetentionLedger l(4, kRet);
  l.set_liveness(one(1), true, 0);
  l.observe(one(1), 63 * kMillisecond);
  l.finish(63 * kMillisecond);
  EXPECT_EQ(l.violation_count(), 0u);
}

TEST(RetentionOracle, GapBeyondRetentionViolates) {
  RetentionLedger l(4, kRet);
  l.set_liveness(one(1), true, 0);
  l.observe(one(1), 65 * kMillisecond);
  ASSERT_EQ(l.violation_count(), 1u);
  const auto v = l.violations().front();
  EXPECT_EQ(v.row, 1u);
  EXPECT_EQ(v.gap_ns, 65 * kMillisecond);
  EXPECT_EQ(v.at, kRet);
}

TEST(RetentionOracle, ExactRetentionGapIsSafe) {
  RetentionLedger l(2, kRet);
  l.set_liveness(one(0), true, 0);
  l.observe(one(0), kRet);
  EXPECT_EQ(l.violation_count(), 0u);
}

TEST(RetentionOracle, DeadRowsNeverViolate) {
  RetentionLedger l(2, kRet);
  l.observe(one(0), 10 * kRet);
  l.finish(20 * kRet);
  EXPECT_EQ(l.violation_count(), 0u);
}

TEST(RetentionOracle, FinishSweepsStaleLiveRows) {
  RetentionLedger l(3, kRet);
  l.set_liveness(std::vector<RowRange>{{0, 3}}, true, 0);
  l.observe(one(2), kRet);
  l.finish(kRet + 1);
  EXPECT_EQ(l.violation_count(), 2u);
  EXPECT_EQ(l.live_count(), 3u);
}

TEST(RetentionOracle, FreeingChecksFinalGap) {
  RetentionLedger l(2, kRet);
  l.set_liveness(one(0), true, 0);
  l.set_liveness(one(0), false, 2 * kRet);
  EXPECT_EQ(l.violation_count(), 1u);
  EXPECT_FALSE(l.live(0));
}

TEST(RetentionOracle, OutOfRangeRows) {
  RetentionLedger l(2, kRet);
  try {
    l.observe(one(2), 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kOutOfRange);
  }
}

TEST(RetentionOracle, RandomHistoriesMatchRescan) {
  const auto r = oracle::check_retention(3, 1000);
  EXPECT_EQ(r.mismatches, 0u) << r.first_failure;
}
