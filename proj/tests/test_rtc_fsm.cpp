#include <gtest/gtest.h>

#include "rtcsim/error.hpp"
#include "rtcsim/rtc_fsm.hpp"

using namespace rtcsim;

namespace {

RtcSignals sig(bool ld, bool refr, bool rtt, bool rate, bool cke = false, bool we = false,
               bool xfer = false) {
  return {ld, refr, rtt, rate, cke, we, xfer};
}

RtcSignals from_bits(unsigned bits) {
  return {bool(bits & 1), bool(bits & 2), bool(bits & 4), bool(bits & 8),
          bool(bits & 16), bool(bits & 32), bool(bits & 64)};
}

RtcControlState in_state(RtcFsmState s) {
  RtcControlState st;
  st.fsm_state = s;
  return st;
}

}  // namespace

TEST(RtcFsm, RateConfigLatchesBothWords) {
  RtcControlState s;
  auto r = step_rtc_fsm(s, sig(true, false, false, true), 2);
  EXPECT_EQ(r.next.fsm_state, RtcFsmState::kCfgRateFsm);
  EXPECT_EQ(r.action, RtcAction::kLatchConfig);
  r = step_rtc_fsm(r.next, sig(false, false, false, false), 4);
  EXPECT_EQ(r.next.fsm_state, RtcFsmState::kIdle);
  EXPECT_EQ(r.next.registers.n_a, 2u);
  EXPECT_EQ(r.next.registers.n_r, 4u);
}

TEST(RtcFsm, PaarConfigLatchesBounds) {
  RtcControlState s;
  s = step_rtc_fsm(s, sig(true, true, false, false), 100).next;
  EXPECT_EQ(s.fsm_state, RtcFsmState::kCfgRefr);
  s = step_rtc_fsm(s, {}, 643).next;
  EXPECT_EQ(s.fsm_state, RtcFsmState::kIdle);
  EXPECT_TRUE(s.registers.paar.enabled);
  EXPECT_EQ(s.registers.paar.lo, 100u);
  EXPECT_EQ(s.registers.paar.hi, 643u);
}

TEST(RtcFsm, AguConfigSizedByFirstWord) {
  RtcControlState s;
  s = step_rtc_fsm(s, sig(true, false, true, false), 2).next;
  const std::vector<std::int64_t> body{0, 1, 10, 50, 2, 5};
  for (std::size_t i = 0; i < body.size(); ++i) {
    EXPECT_EQ(s.fsm_state, RtcFsmState::kCfgRtt) << i;
    s = step_rtc_fsm(s, {}, body[i]).next;
  }
  EXPECT_EQ(s.fsm_state, RtcFsmState::kIdle);
  EXPECT_EQ(s.registers.agu_words, (std::vector<std::int64_t>{2, 0, 1, 10, 50, 2, 5}));
}

TEST(RtcFsm, EmptyAguProgramIsOneWord) {
  auto r = step_rtc_fsm({}, sig(true, false, true, false), 0);
  EXPECT_EQ(r.next.fsm_state, RtcFsmState::kIdle);
  EXPECT_EQ(r.next.registers.agu_words, (std::vector<std::int64_t>{0}));
}

TEST(RtcFsm, ActWithoutTransferPrecharges) {
  auto r = step_rtc_fsm(in_state(RtcFsmState::kActiveAct), sig(false, false, false, false, true));
  EXPECT_EQ(r.next.fsm_state, RtcFsmState::kActivePre);
  EXPECT_EQ(r.action, RtcAction::kEmitPre);
}

TEST(RtcFsm, ActWithTransferReads) {
  auto r = step_rtc_fsm(in_state(RtcFsmState::kActiveAct),
                        sig(false, false, false, false, true, false, true));
  EXPECT_EQ(r.next.fsm_state, RtcFsmState::kActiveRead);
  EXPECT_EQ(r.action, RtcAction::kEmitRdBurst);
  r = step_rtc_fsm(in_state(RtcFsmState::kActiveAct),
                   sig(false, false, false, false, true, true, true));
  EXPECT_EQ(r.next.fsm_state, RtcFsmState::kActiveWrite);
  EXPECT_EQ(r.action, RtcAction::kEmitWrBurst);
}

TEST(RtcFsm, AmbiguousSelectRejected) {
  for (auto st : {RtcFsmState::kIdle, RtcFsmState::kActiveAct, RtcFsmState::kCfgRefr}) {
    try {
      step_rtc_fsm(in_state(st), sig(true, true, true, false));
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kAmbiguousConfigRequest);
    }
  }
}

TEST(RtcFsm, SelectWithoutLoadIgnored) {
  auto r = step_rtc_fsm({}, sig(false, true, false, false));
  EXPECT_TRUE(r.ignored_select);
  EXPECT_EQ(r.next.fsm_state, RtcFsmState::kIdle);
  EXPECT_EQ(r.action, RtcAction::kNone);
}

TEST(RtcFsm, LoadAbortsActiveOperation) {
  for (auto st : {RtcFsmState::kActiveAct, RtcFsmState::kActiveRead, RtcFsmState::kActiveWrite,
                  RtcFsmState::kActivePre}) {
    auto r = step_rtc_fsm(in_state(st), sig(true, false, false, false, true));
    EXPECT_EQ(r.next.fsm_state, RtcFsmState::kIdle) << rtc_fsm_state_name(st);
  }
}

// Table of the active-operation machine written out by hand; checked against
// every input combination that does not raise ld.
TEST(RtcFsm, ActiveTransitionsMatchTable) {
  struct Row {
    RtcFsmState from;
    RtcFsmState to;
    RtcAction action;
  };
  for (unsigned bits = 0; bits < 128; ++bits) {
    const auto in = from_bits(bits);
    if (in.ld) continue;
    std::vector<Row> table;
    table.push_back(in.cke ? Row{RtcFsmState::kIdle, RtcFsmState::kActiveAct, RtcAction::kEmitAct}
                           : Row{RtcFsmState::kIdle, RtcFsmState::kIdle, RtcAction::kNone});
    if (!in.xfer)
      table.push_back({RtcFsmState::kActiveAct, RtcFsmState::kActivePre, RtcAction::kEmitPre});
    else if (in.we)
      table.push_back({RtcFsmState::kActiveAct, RtcFsmState::kActiveWrite, RtcAction::kEmitWrBurst});
    else
      table.push_back({RtcFsmState::kActiveAct, RtcFsmState::kActiveRead, RtcAction::kEmitRdBurst});
    table.push_back({RtcFsmState::kActiveRead, RtcFsmState::kActivePre, RtcAction::kEmitPre});
    table.push_back({RtcFsmState::kActiveWrite, RtcFsmState::kActivePre, RtcAction::kEmitPre});
    table.push_back(in.cke
                        ? Row{RtcFsmState::kActivePre, RtcFsmState::kActiveAct, RtcAction::kEmitAct}
                        : Row{RtcFsmState::kActivePre, RtcFsmState::kIdle, RtcAction::kNone});
    for (const auto& row : table) {
      auto r = step_rtc_fsm(in_state(row.from), in);
      EXPECT_EQ(r.next.fsm_state, row.to) << bits << " " << rtc_fsm_state_name(row.from);
      EXPECT_EQ(r.action, row.action) << bits << " " << rtc_fsm_state_name(row.from);
    }
  }
}

TEST(RtcFsm, InPlaceStepAgreesWithPureStep) {
  for (auto st : {RtcFsmState::kIdle, RtcFsmState::kCfgRefr, RtcFsmState::kCfgRateFsm,
                  RtcFsmState::kActiveAct, RtcFsmState::kActiveRead, RtcFsmState::kActivePre}) {
    for (unsigned bits = 0; bits < 128; ++bits) {
      auto base = in_state(st);
      if (st == RtcFsmState::kCfgRefr || st == RtcFsmState::kCfgRateFsm) base.pending_words = 2;
      const auto in = from_bits(bits);
      if (in.ld && (in.refr + in.rtt + in.rate_fsm) > 1) continue;
      const auto pure = step_rtc_fsm(base, in, 7);
      auto s = base;
      bool ignored = false;
      const auto action = advance_rtc_fsm(s, in, 7, &ignored);
      EXPECT_TRUE(s == pure.next);
      EXPECT_EQ(action, pure.action);
      EXPECT_EQ(ignored, pure.ignored_select);
    }
  }
}
