#include <gtest/gtest.h>

#include "rtcsim/energy.hpp"
#include "rtcsim/error.hpp"

using namespace rtcsim;

namespace {

EnergyConfig unit_costs() {
  EnergyConfig c;
  c.e_act_pj = 1;
  c.e_pre_pj = 1;
  c.e_rd_burst_pj = 1;
  c.e_wr_burst_pj = 1;
  c.p_background_mw_per_gib = 0;
  c.e_counter_update_pj = 1;
  c.e_counter_scan_pj = 1;
  return c;
}

}  // namespace

TEST(Energy, RowVisitCostsThreeUnits) {
  EnergyLedger l(unit_costs());
  l.charge({CommandKind::kAct, {0, 1}, 0}, EnergyCategory::kAccess);
  l.charge({CommandKind::kRd, {0, 1}, 0, 1}, EnergyCategory::kAccess);
  l.charge({CommandKind::kPre, {0, 0}, 0}, EnergyCategory::kAccess);
  EXPECT_DOUBLE_EQ(l.total_pj(), 3.0);
  EXPECT_DOUBLE_EQ(l.category_pj(EnergyCategory::kAccess), 3.0);
}

TEST(Energy, BatchRefreshChargesPerRow) {
  EnergyLedger l(unit_costs());
  l.charge({CommandKind::kRef, {}, 0}, EnergyCategory::kRefresh, 512);
  EXPECT_DOUBLE_EQ(l.category_pj(EnergyCategory::kRefresh), 1024.0);
  EXPECT_DOUBLE_EQ(l.refresh_fraction(), 1.0);
}

TEST(Energy, RefRowChargesOneRow) {
  EnergyLedger l;
  l.charge({CommandKind::kRefRow, {0, 3}, 0}, EnergyCategory::kRefresh, 1);
  EXPECT_DOUBLE_EQ(l.total_pj(), 2000.0);
}

TEST(Energy, BurstsScaleWithCount) {
  EnergyLedger l;
  l.charge({CommandKind::kWr, {0, 0}, 0, 256}, EnergyCategory::kAccess);
  EXPECT_DOUBLE_EQ(l.total_pj(), 384.0);
  EXPECT_EQ(l.counts().category(EnergyCategory::kAccess).wr_bursts, 256u);
}

TEST(Energy, BackgroundIsPowerTimesTime) {
  EnergyLedger l;
  // 0.9 mW/GiB over 2 GiB for one second.
  l.charge_background(1'000'000'000, 2 * kGiB);
  EXPECT_NEAR(l.category_pj(EnergyCategory::kBackground), 1.8e9, 1e-3);
}

TEST(Energy, CountersCharged) {
  EnergyLedger l;
  l.charge_counters(10, 2);
  EXPECT_DOUBLE_EQ(l.category_pj(EnergyCategory::kCounters), 150.0);
}

TEST(Energy, BackgroundCategoryTakesNoCommands) {
  EnergyLedger l;
  try {
    l.charge({CommandKind::kAct, {0, 0}, 0}, EnergyCategory::kBackground);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnknownKind);
  }
}

TEST(Energy, CountsReconcileWithTotals) {
  const EnergyConfig c;
  EnergyLedger l(c);
  for (int i = 0; i < 7; ++i) {
    l.charge({CommandKind::kAct, {0, 0}, 0}, EnergyCategory::kAccess);
    l.charge({CommandKind::kRd, {0, 0}, 0, 256}, EnergyCategory::kAccess);
    l.charge({CommandKind::kPre, {0, 0}, 0}, EnergyCategory::kAccess);
  }
  l.charge({CommandKind::kRef, {}, 0}, EnergyCategory::kRefresh, 128);
  const auto& a = l.counts().category(EnergyCategory::kAccess);
  const double access = a.act * c.e_act_pj + a.pre * c.e_pre_pj + a.rd_bursts * c.e_rd_burst_pj;
  EXPECT_DOUBLE_EQ(l.category_pj(EnergyCategory::kAccess), access);
  EXPECT_DOUBLE_EQ(l.category_pj(EnergyCategory::kRefresh), 128 * (c.e_act_pj + c.e_pre_pj));
  EXPECT_EQ(l.counts().count(CommandKind::kRef), 1u);
}

TEST(Energy, MergeAddsLedgers) {
  EnergyLedger a, b;
  a.charge({CommandKind::kRef, {}, 0}, EnergyCategory::kRefresh, 4);
  b.charge({CommandKind::kRefRow, {0, 0}, 0}, EnergyCategory::kRefresh, 1);
  b.charge_background(1000, kGiB);
  const double total = a.total_pj() + b.total_pj();
  a.merge(b);
  EXPECT_DOUBLE_EQ(a.total_pj(), total);
}

TEST(Energy, Savings) {
  EXPECT_DOUBLE_EQ(savings(25.0, 100.0), 0.75);
  EnergyConfig bad;
  bad.e_act_pj = -1;
  EXPECT_THROW(bad.validate(), Error);
}
