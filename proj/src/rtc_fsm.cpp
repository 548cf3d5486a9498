#include "rtcsim/rtc_fsm.hpp"

#include "rtcsim/error.hpp"

namespace rtcsim {

const char* rtc_fsm_state_name(RtcFsmState state) {
  switch (state) {
    case RtcFsmState::kIdle: return "Idle";
    case RtcFsmState::kCfgRefr: return "CfgRefr";
    case RtcFsmState::kCfgRtt: return "CfgRtt";
    case RtcFsmState::kCfgRateFsm: return "CfgRateFsm";
    case RtcFsmState::kActiveAct: return "Active.Act";
    case RtcFsmState::kActiveRead: return "Active.Read";
    case RtcFsmState::kActiveWrite: return "Active.Write";
    case RtcFsmState::kActivePre: return "Active.Pre";
  }
  return "?";
}

bool operator==(const RtcControlState& a, const RtcControlState& b) {
  return a.fsm_state == b.fsm_state && a.pending_words == b.pending_words &&
         a.staging == b.staging && a.registers.paar.lo == b.registers.paar.lo &&
         a.registers.paar.hi == b.registers.paar.hi &&
         a.registers.paar.enabled == b.registers.paar.enabled &&
         a.registers.agu_words == b.registers.agu_words &&
         a.registers.n_a == b.registers.n_a && a.registers.n_r == b.registers.n_r;
}

namespace {

int select_count(const RtcSignals& in) {
  return static_cast<int>(in.refr) + static_cast<int>(in.rtt) +
         static_cast<int>(in.rate_fsm);
}

// Commits staged words once a configuration state has received all of them.
void commit(RtcControlState& s) {
  auto& r = s.registers;
  switch (s.fsm_state) {
    case RtcFsmState::kCfgRefr:
      r.paar.lo = static_cast<RowIndex>(s.staging[0]);
      r.paar.hi = static_cast<RowIndex>(s.staging[1]);
      r.paar.enabled = true;
      break;
    case RtcFsmState::kCfgRtt:
      r.agu_words = s.staging;
      break;
    case RtcFsmState::kCfgRateFsm:
      r.n_a = static_cast<std::uint64_t>(s.staging[0]);
      r.n_r = static_cast<std::uint64_t>(s.staging[1]);
      break;
    default:
      break;
  }
  s.staging.clear();
  s.fsm_state = RtcFsmState::kIdle;
}

RtcAction take_word(RtcControlState& s, std::int64_t payload) {
  s.staging.push_back(payload);
  // The first AGU word is the segment count; it sizes the rest.
  if (s.fsm_state == RtcFsmState::kCfgRtt && s.staging.size() == 1)
    s.pending_words = payload > 0 ? static_cast<std::uint64_t>(payload) * 3 : 0;
  else
    --s.pending_words;
  if (s.pending_words == 0) commit(s);
  return RtcAction::kLatchConfig;
}

}  // namespace

RtcAction advance_rtc_fsm(RtcControlState& s, const RtcSignals& in,
                          std::int64_t payload, bool* ignored_select) {
  if (ignored_select) *ignored_select = false;
  const int selects = select_count(in);
  if (in.ld && selects > 1)
    throw Error(ErrorCode::kAmbiguousConfigRequest,
                "ld asserted with more than one configuration select");

  switch (s.fsm_state) {
    case RtcFsmState::kIdle:
      if (in.ld && selects == 1) {
        s.staging.clear();
        if (in.refr) {
          s.fsm_state = RtcFsmState::kCfgRefr;
          s.pending_words = 2;
        } else if (in.rtt) {
          s.fsm_state = RtcFsmState::kCfgRtt;
          s.pending_words = 1;
        } else {
          s.fsm_state = RtcFsmState::kCfgRateFsm;
          s.pending_words = 2;
        }
        return take_word(s, payload);
      }
      if (!in.ld && selects > 0 && ignored_select) *ignored_select = true;
      if (!in.ld && in.cke) {
        s.fsm_state = RtcFsmState::kActiveAct;
        return RtcAction::kEmitAct;
      }
      return RtcAction::kNone;

    case RtcFsmState::kCfgRefr:
    case RtcFsmState::kCfgRtt:
    case RtcFsmState::kCfgRateFsm:
      return take_word(s, payload);

    case RtcFsmState::kActiveAct:
      if (in.ld) {
        s.fsm_state = RtcFsmState::kIdle;
        return RtcAction::kNone;
      }
      if (selects > 0 && ignored_select) *ignored_select = true;
      if (!in.xfer) {
        s.fsm_state = RtcFsmState::kActivePre;
        return RtcAction::kEmitPre;
      }
      if (in.we) {
        s.fsm_state = RtcFsmState::kActiveWrite;
        return RtcAction::kEmitWrBurst;
      }
      s.fsm_state = RtcFsmState::kActiveRead;
      return RtcAction::kEmitRdBurst;

    case RtcFsmState::kActiveRead:
    case RtcFsmState::kActiveWrite:
      if (in.ld) {
        s.fsm_state = RtcFsmState::kIdle;
        return RtcAction::kNone;
      }
      if (selects > 0 && ignored_select) *ignored_select = true;
      s.fsm_state = RtcFsmState::kActivePre;
      return RtcAction::kEmitPre;

    case RtcFsmState::kActivePre:
      if (in.ld || !in.cke) {
        s.fsm_state = RtcFsmState::kIdle;
        return RtcAction::kNone;
      }
      if (selects > 0 && ignored_select) *ignored_select = true;
      s.fsm_state = RtcFsmState::kActiveAct;
      return RtcAction::kEmitAct;
  }
  return RtcAction::kNone;
}

RtcStepResult step_rtc_fsm(const RtcControlState& state, const RtcSignals& in,
                           std::int64_t payload) {
  RtcStepResult result{state, RtcAction::kNone, false};
  result.action = advance_rtc_fsm(result.next, in, payload, &result.ignored_select);
  return result;
}

}  // namespace rtcsim
