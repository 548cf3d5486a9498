#pragma once

#include <cstdint>
#include <vector>

#include "rtcsim/dram_model.hpp"

namespace rtcsim {

enum class RtcFsmState : std::uint8_t {
  kIdle,
  kCfgRefr,
  kCfgRtt,
  kCfgRateFsm,
  kActiveAct,
  kActiveRead,
  kActiveWrite,
  kActivePre,
};

const char* rtc_fsm_state_name(RtcFsmState state);

// Interface pins of the RTC control logic for one DRAM-side step.
struct RtcSignals {
  bool ld = false;
  bool refr = false;
  bool rtt = false;
  bool rate_fsm = false;
  bool cke = false;
  bool we = false;
  bool xfer = false;
};

enum class RtcAction : std::uint8_t {
  kNone,
  kEmitAct,
  kEmitRdBurst,
  kEmitWrBurst,
  kEmitPre,
  kLatchConfig,
};

// Values latched by the configuration states.
struct RtcRegisters {
  PaarBounds paar;
  std::vector<std::int64_t> agu_words;  // [segment count, (base, stride, count)...]
  std::uint64_t n_a = 0;
  std::uint64_t n_r = 0;
};

struct RtcControlState {
  RtcFsmState fsm_state = RtcFsmState::kIdle;
  RtcRegisters registers;
  // Words still expected by the current configuration state.
  std::uint64_t pending_words = 0;
  // Scratch for words not yet committed to `registers`.
  std::vector<std::int64_t> staging;

  friend bool operator==(const RtcControlState&, const RtcControlState&);
};

struct RtcStepResult {
  RtcControlState next;
  RtcAction action = RtcAction::kNone;
  // A config select was raised without ld; it was ignored.
  bool ignored_select = false;
};

// Pure transition function of the reconfiguration and active-operation
// machines. `payload` is the configuration word on the data pins this step.
// Throws Error(kAmbiguousConfigRequest) when ld is raised with more than one
// select.
RtcStepResult step_rtc_fsm(const RtcControlState& state, const RtcSignals& in,
                           std::int64_t payload = 0);

// In-place form of step_rtc_fsm for the per-slot hot path; identical
// transition relation. Returns the action; sets *ignored_select if non-null.
RtcAction advance_rtc_fsm(RtcControlState& state, const RtcSignals& in,
                          std::int64_t payload = 0, bool* ignored_select = nullptr);

}  // namespace rtcsim
