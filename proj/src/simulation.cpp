#include "rtcsim/simulation.hpp"

#include <algorithm>
#include <limits>
#include <memory>

#include "rtcsim/error.hpp"
#include "rtcsim/rate_matcher.hpp"
#include "rtcsim/rtc_fsm.hpp"

namespace rtcsim {

namespace {

constexpr Nanoseconds kNever = std::numeric_limits<Nanoseconds>::max();

Nanoseconds scaled(std::uint64_t index, Nanoseconds span, std::uint64_t parts) {
  return static_cast<Nanoseconds>(static_cast<unsigned __int128>(index) *
                                  static_cast<std::uint64_t>(span) / parts);
}

// Command issue, energy attribution and oracle bookkeeping shared by every
// policy.
class Engine {
  const DramTopology& topology_;

 public:
  Engine(const DramTopology& topology, const EnergyConfig& energy,
         const SimulationOptions& options, SimulationResult& result)
      : topology_(topology),
        model(topology),
        oracle(topology.total_rows(), options.t_ret_ns > 0 ? options.t_ret_ns : topology.t_refw_ns),
        ledger(energy),
        result_(result),
        record_(options.record_commands) {
    result_.explicit_rows_per_window.assign(options.windows, 0);
  }

  void demand(const DemandEvent& e, Nanoseconds t) {
    const auto addr = to_address(topology_, e.row);
    const bool write = e.kind == DemandKind::kWrite;
    DramCommand act{CommandKind::kAct, addr, t};
    DramCommand xfer{write ? CommandKind::kWr : CommandKind::kRd, addr, t,
                     topology_.bursts_per_row()};
    DramCommand pre{CommandKind::kPre, addr, t};
    issue(act);
    issue(xfer);
    auto eff = issue(pre);
    oracle.observe(eff.ranges, eff.replenished_at);
    ledger.charge(act, EnergyCategory::kAccess);
    ledger.charge(xfer, EnergyCategory::kAccess);
    ledger.charge(pre, EnergyCategory::kAccess);
    ++result_.demand_visits;
    last_ts_ = t;
  }

  void ref(Nanoseconds t) {
    t = std::max(t, last_ts_);
    DramCommand cmd{CommandKind::kRef, {}, t};
    auto eff = issue(cmd);
    account_refresh(cmd, eff);
    blocked_until = t + topology_.t_rfc_ns;
    last_ts_ = t;
  }

  void ref_row(RowIndex row, Nanoseconds t) {
    t = std::max(t, last_ts_);
    DramCommand cmd{CommandKind::kRefRow, to_address(topology_, row), t};
    auto eff = issue(cmd);
    account_refresh(cmd, eff);
    last_ts_ = t;
  }

  Nanoseconds last_ts() const { return last_ts_; }

  DramModel model;
  RetentionLedger oracle;
  EnergyLedger ledger;
  Nanoseconds blocked_until = 0;

 private:
  CommandEffect issue(const DramCommand& cmd) {
    if (record_) result_.commands.push_back(cmd);
    return model.apply(cmd);
  }

  void account_refresh(const DramCommand& cmd, const CommandEffect& eff) {
    oracle.observe(eff.ranges, eff.replenished_at);
    const auto rows = eff.row_count();
    ledger.charge(cmd, EnergyCategory::kRefresh, rows);
    result_.explicit_refresh_rows += rows;
    const auto w = static_cast<std::size_t>(cmd.timestamp / topology_.t_refw_ns);
    if (w < result_.explicit_rows_per_window.size()) result_.explicit_rows_per_window[w] += rows;
  }

  SimulationResult& result_;
  bool record_;
  Nanoseconds last_ts_ = 0;
};

class RefreshAgent {
 public:
  virtual ~RefreshAgent() = default;
  virtual Nanoseconds next_time() const = 0;
  virtual void fire(Engine& engine) = 0;
  virtual void on_demand(Engine&, RowIndex, Nanoseconds) {}
  virtual void finish(Engine&) {}
};

// Batch REF on the conventional tREFI cadence: Baseline, PASR, Min-RTC and
// Mid-RTC differ only in masking and in when REF stops.
class PeriodicRefAgent : public RefreshAgent {
 public:
  PeriodicRefAgent(const DramTopology& topology, std::uint64_t stop_slot, bool skip_masked_batches,
                   std::vector<bool> pasr_mask, Nanoseconds pasr_idle)
      : topology_(topology),
        stop_slot_(stop_slot),
        skip_masked_(skip_masked_batches),
        pasr_mask_(std::move(pasr_mask)),
        pasr_idle_(pasr_idle) {}

  Nanoseconds next_time() const override {
    return slot_ < stop_slot_ ? topology_.ref_slot_time(slot_) : kNever;
  }

  void fire(Engine& e) override {
    const Nanoseconds t = topology_.ref_slot_time(slot_++);
    if (!pasr_mask_.empty()) {
      const bool self_refresh = t - last_demand_ >= pasr_idle_;
      if (self_refresh != in_self_refresh_) {
        e.model.set_bank_mask(self_refresh ? pasr_mask_ : std::vector<bool>{});
        in_self_refresh_ = self_refresh;
      }
      if (self_refresh) ++self_refresh_refs;
    }
    if (skip_masked_ && !e.model.touches_enabled_bank(
                            e.model.peek_refresh_batch(e.model.rows_per_ref()))) {
      e.model.advance_refresh_counter(e.model.rows_per_ref());
      ++skipped;
      return;
    }
    e.ref(t);
  }

  void on_demand(Engine&, RowIndex, Nanoseconds t) override { last_demand_ = t; }

  std::uint64_t skipped = 0;
  std::uint64_t self_refresh_refs = 0;

 private:
  const DramTopology& topology_;
  std::uint64_t slot_ = 0;
  std::uint64_t stop_slot_;
  bool skip_masked_;
  std::vector<bool> pasr_mask_;
  Nanoseconds pasr_idle_;
  Nanoseconds last_demand_ = 0;
  bool in_self_refresh_ = false;
};

// Per-row phase counters. Every row is examined once per phase; examination
// instants reuse the baseline slot offsets so a row with no traffic is
// refreshed in the same window slot as under Baseline.
class SmartAgent : public RefreshAgent {
 public:
  SmartAgent(const DramTopology& topology, std::uint32_t bits, Nanoseconds end)
      : topology_(topology),
        phases_(1u << bits),
        phase_len_(topology.t_refw_ns / phases_),
        slots_per_phase_(topology.ref_slots_per_window() / phases_),
        rows_per_group_(topology.rows_per_ref()),
        end_(end),
        counters_(topology.total_rows()) {
    if (slots_per_phase_ == 0 || phase_len_ == 0)
      throw Error(ErrorCode::kConfigInvalid, "controller.smart_bits: too many phases for the window");
    for (RowIndex row = 0; row < counters_.size(); ++row)
      counters_[row] = static_cast<std::uint8_t>((row / rows_per_group_) / slots_per_phase_);
  }

  Nanoseconds next_time() const override {
    const Nanoseconds t = time_of(mini_slot_);
    return t < end_ ? t : kNever;
  }

  void fire(Engine& e) override {
    const Nanoseconds t = time_of(mini_slot_);
    const std::uint64_t j = mini_slot_ % slots_per_phase_;
    ++mini_slot_;
    const std::uint8_t top = static_cast<std::uint8_t>(phases_ - 1);
    const RowIndex total = counters_.size();
    for (std::uint64_t m = 0; m < phases_; ++m) {
      const std::uint64_t group = j + m * slots_per_phase_;
      const RowIndex first = group * rows_per_group_;
      const RowIndex last = std::min<RowIndex>(first + rows_per_group_, total);
      for (RowIndex row = first; row < last; ++row) {
        auto& c = counters_[row];
        if (c == 0) {
          e.ref_row(row, t);
          c = top;
        } else {
          --c;
        }
      }
      if (last > first) scans_ += last - first;
    }
  }

  void on_demand(Engine&, RowIndex row, Nanoseconds) override {
    counters_[row] = static_cast<std::uint8_t>(phases_ - 1);
    ++updates_;
  }

  void finish(Engine& e) override { e.ledger.charge_counters(updates_, scans_); }

 private:
  Nanoseconds time_of(std::uint64_t k) const {
    const std::uint64_t p = k / slots_per_phase_;
    const std::uint64_t j = k % slots_per_phase_;
    return static_cast<Nanoseconds>(p) * phase_len_ + scaled(j, phase_len_, slots_per_phase_);
  }

  const DramTopology& topology_;
  std::uint64_t phases_;
  Nanoseconds phase_len_;
  std::uint64_t slots_per_phase_;
  std::uint64_t rows_per_group_;
  Nanoseconds end_;
  std::vector<std::uint8_t> counters_;
  std::uint64_t mini_slot_ = 0;
  std::uint64_t updates_ = 0;
  std::uint64_t scans_ = 0;
};

// Full-RTC: n_r refresh slots per window over the PAAR region. After the
// warm-up window, slots selected by the rate-matching plan are served by
// demand transfers (implicit); the rest refresh the row under the
// PAAR-clamped refresh counter (explicit REF_ROW).
class RtcAgent : public RefreshAgent {
 public:
  RtcAgent(const DramTopology& topology, Engine& e, const ControllerConfig& cfg,
           const Workload& workload, const AllocationMap& alloc, SimulationResult& res,
           Nanoseconds end)
      : topology_(topology), alloc_(alloc), res_(res), end_(end) {
    PaarBounds region;
    if (cfg.paar) {
      region = *cfg.paar;
    } else if (cfg.paar_enabled) {
      region = alloc.bounding_range();
      if (!region.enabled) empty_region_ = true;
    }
    n_r_ = empty_region_ ? 0 : (region.enabled ? region.size() : topology.total_rows());
    res.paar = region;
    res.n_r = n_r_;

    CoverageCertificate cert;
    if (cfg.agu) {
      cert.program = *cfg.agu;
      cert.n_a = workload.rows_accessed_per_window();
      cert.certified = workload.period_ns() <= topology.t_refw_ns;
      if (!cert.certified) cert.reason = "iteration period exceeds the retention window";
      if (cert.certified && !cfg.skip_coverage_check)
        for (const auto& r : workload.allocation())
          if (!covers(*cfg.agu, r.first, r.first + r.count - 1).covered) {
            cert.certified = false;
            cert.reason = "configured AGU program misses allocated rows";
          }
    } else if (!empty_region_) {
      cert = certify_coverage(workload, topology, region, cfg.agu_max_segments,
                              cfg.skip_coverage_check);
    }
    res.not_affine = !cert.program && !empty_region_;
    res.agu_segments = cert.program ? cert.program->segments.size() : 0;
    n_a_ = cfg.rate ? cfg.rate->n_a : cert.n_a;
    if (cfg.rate && cfg.rate->n_r != n_r_)
      throw Error(ErrorCode::kConfigInvalid,
                  "controller.rate.n_r: " + std::to_string(cfg.rate->n_r) +
                      " differs from the refreshable region size " + std::to_string(n_r_));
    res.n_a = n_a_;
    res.rtt_certified = cert.certified;
    rtt_ = cfg.rtt && cert.certified && n_r_ > 0;
    if (cfg.rtt && !cert.certified && !empty_region_)
      res.notes.push_back(std::string(res.not_affine ? "NotAffineRepresentable: " : "") +
                          "RTT bypassed, PAAR auto refresh fallback: " + cert.reason);
    res.mode = rtt_ ? "rtt" : "paar-only";
    if (rtt_) plan_ = rate_match(n_a_, n_r_);

    e.model.set_paar(region);
    paar_ = region;
    configure(e, cfg, region, cert);
  }

  Nanoseconds next_time() const override {
    if (n_r_ == 0) return kNever;
    const Nanoseconds t = time_of(slot_);
    return t < end_ ? t : kNever;
  }

  void fire(Engine& e) override {
    const Nanoseconds t = time_of(slot_);
    const std::uint64_t window = slot_ / n_r_;
    const bool xfer = rtt_ && window >= 1 && schedule_window(plan_, slot_ - n_r_);
    ++slot_;
    RtcSignals s;
    s.cke = true;
    if (advance_rtc_fsm(fsm_, s) != RtcAction::kEmitAct)
      throw Error(ErrorCode::kIllegalCommand, "RTC FSM did not open a slot");
    s.xfer = xfer;
    const auto action = advance_rtc_fsm(fsm_, s);
    if (action == RtcAction::kEmitPre) {
      const RowIndex row = e.model.advance_refresh_counter(1).front().first;
      e.ref_row(row, t);
      ++res_.explicit_slots;
    } else {
      ++res_.implicit_slots;
      if (window < res_.implicit_slots_per_window.size()) ++res_.implicit_slots_per_window[window];
      if (advance_rtc_fsm(fsm_, s) != RtcAction::kEmitPre)
        throw Error(ErrorCode::kIllegalCommand, "RTC FSM did not close a transfer slot");
    }
  }

  void on_demand(Engine&, RowIndex row, Nanoseconds) override {
    if (paar_.enabled && !paar_.contains(row) && !alloc_.live(row)) ++res_.demand_outside_paar;
  }

  void finish(Engine&) override {
    RtcSignals s;  // cke low parks the FSM
    advance_rtc_fsm(fsm_, s);
    if (res_.demand_outside_paar > 0)
      res_.notes.push_back("DemandOutsidePaar: " + std::to_string(res_.demand_outside_paar) +
                           " demand visits outside the refreshed region");
  }

 private:
  Nanoseconds time_of(std::uint64_t slot) const {
    const std::uint64_t w = slot / n_r_;
    return static_cast<Nanoseconds>(w) * topology_.t_refw_ns +
           scaled(slot % n_r_, topology_.t_refw_ns, n_r_);
  }

  void push(RtcSignals sel, const std::vector<std::int64_t>& words) {
    for (std::size_t i = 0; i < words.size(); ++i) {
      RtcSignals in = i == 0 ? sel : RtcSignals{};
      in.ld = true;
      advance_rtc_fsm(fsm_, in, words[i]);
      ++res_.config_words;
    }
  }

  void configure(Engine&, const ControllerConfig& cfg, const PaarBounds& region,
                 const CoverageCertificate& cert) {
    if (region.enabled) {
      RtcSignals sel;
      sel.refr = true;
      push(sel, {static_cast<std::int64_t>(region.lo), static_cast<std::int64_t>(region.hi)});
      if (!(fsm_.registers.paar.lo == region.lo && fsm_.registers.paar.hi == region.hi))
        throw Error(ErrorCode::kIllegalCommand, "PAAR registers did not latch");
    }
    if (rtt_) {
      RtcSignals sel;
      sel.rtt = true;
      push(sel, cert.program->to_words());
      sel = {};
      sel.rate_fsm = true;
      push(sel, {static_cast<std::int64_t>(n_a_), static_cast<std::int64_t>(n_r_)});
      if (fsm_.registers.n_a != n_a_ || fsm_.registers.n_r != n_r_)
        throw Error(ErrorCode::kIllegalCommand, "rate registers did not latch");
    }
    if (fsm_.fsm_state != RtcFsmState::kIdle)
      throw Error(ErrorCode::kIllegalCommand, "RTC FSM left configuration mid-sequence");
    res_.reconfig_latency_ns = static_cast<Nanoseconds>(res_.config_words) * cfg.config_word_ns;
  }

  const DramTopology& topology_;
  const AllocationMap& alloc_;
  SimulationResult& res_;
  Nanoseconds end_;
  bool empty_region_ = false;
  std::uint64_t n_r_ = 0;
  std::uint64_t n_a_ = 0;
  bool rtt_ = false;
  RateMatchPlan plan_;
  PaarBounds paar_;
  RtcControlState fsm_;
  std::uint64_t slot_ = 0;
};

std::unique_ptr<RefreshAgent> make_agent(const DramTopology& topology, Engine& e,
                                         const ControllerConfig& cfg, const Workload& workload,
                                         const AllocationMap& alloc, SimulationResult& res,
                                         Nanoseconds end) {
  const std::uint64_t forever = std::numeric_limits<std::uint64_t>::max();
  switch (cfg.policy) {
    case Policy::kBaseline:
      res.mode = "baseline";
      return std::make_unique<PeriodicRefAgent>(topology, forever, false, std::vector<bool>{}, 0);
    case Policy::kPasr: {
      res.mode = "baseline";
      auto mask = cfg.bank_mask ? *cfg.bank_mask : alloc.bank_mask();
      return std::make_unique<PeriodicRefAgent>(topology, forever, false, std::move(mask),
                                                cfg.pasr_idle_threshold_ns);
    }
    case Policy::kSmartRefresh:
      res.mode = "smart";
      res.smart_counters = topology.total_rows();
      return std::make_unique<SmartAgent>(topology, cfg.smart_bits, end);
    case Policy::kMinRtc:
    case Policy::kMidRtc: {
      auto cert = certify_coverage(workload, topology, {}, cfg.agu_max_segments,
                                   cfg.skip_coverage_check);
      res.n_a = cert.n_a;
      res.n_r = alloc.allocated_rows();
      res.rtt_certified = cert.certified;
      res.not_affine = !cert.program;
      res.agu_segments = cert.program ? cert.program->segments.size() : 0;
      bool suppress = cert.certified;
      if (!cert.certified)
        res.notes.push_back(std::string(res.not_affine ? "NotAffineRepresentable: " : "") +
                            "refresh kept on (normal mode): " + cert.reason);
      if (suppress && cfg.min_rtc_rate_gate && cert.n_a < res.n_r) {
        suppress = false;
        res.notes.push_back("refresh kept on: access rate below refresh rate");
      }
      res.mode = suppress ? "suppressed" : "fallback";
      const bool mid = cfg.policy == Policy::kMidRtc;
      if (mid) e.model.set_bank_mask(cfg.bank_mask ? *cfg.bank_mask : alloc.bank_mask());
      return std::make_unique<PeriodicRefAgent>(
          topology, suppress ? topology.ref_slots_per_window() : forever, mid,
          std::vector<bool>{}, 0);
    }
    case Policy::kFullRtc:
      return std::make_unique<RtcAgent>(topology, e, cfg, workload, alloc, res, end);
  }
  throw Error(ErrorCode::kUnknownKind, "unknown policy");
}

}  // namespace

SimulationResult simulate(const DramTopology& topology, const Workload& workload,
                          const ControllerConfig& controller, const EnergyConfig& energy,
                          const SimulationOptions& options) {
  topology.validate();
  controller.validate();
  energy.validate();
  if (options.windows == 0)
    throw Error(ErrorCode::kConfigInvalid, "simulation.windows: must be positive");

  SimulationResult res;
  res.policy = controller.label();
  const Nanoseconds end = static_cast<Nanoseconds>(options.windows) * topology.t_refw_ns;
  res.simulated_ns = end;
  res.implicit_slots_per_window.assign(options.windows, 0);

  Engine engine(topology, energy, options, res);
  AllocationMap alloc(topology, workload.allocation());
  res.allocated_rows = alloc.allocated_rows();
  auto agent = make_agent(topology, engine, controller, workload, alloc, res, end);

  // Liveness changes, in time order.
  auto liveness = workload.liveness_events();
  std::stable_sort(liveness.begin(), liveness.end(),
                   [](const DemandEvent& a, const DemandEvent& b) { return a.t < b.t; });
  std::size_t next_live = 0;
  std::vector<RowRange> one(1);
  auto apply_liveness_until = [&](Nanoseconds t) {
    while (next_live < liveness.size() && liveness[next_live].t <= t) {
      const auto& ev = liveness[next_live++];
      one[0] = {ev.row, 1};
      engine.oracle.set_liveness(one, ev.kind == DemandKind::kAlloc, ev.t);
    }
  };
  auto advance_to = [&](Nanoseconds t) {
    for (;;) {
      const Nanoseconds r = agent->next_time();
      const Nanoseconds l = next_live < liveness.size() ? liveness[next_live].t : kNever;
      if (l <= t && l <= r) {
        apply_liveness_until(l);
      } else if (r <= t) {
        agent->fire(engine);
      } else {
        break;
      }
    }
  };

  const Nanoseconds period = workload.period_ns();
  const std::uint64_t frames = static_cast<std::uint64_t>((end + period - 1) / period);
  std::vector<DemandEvent> frame;
  for (std::uint64_t f = 0; f < frames; ++f) {
    workload.generate_frame_trace(f, frame);
    for (const auto& ev : frame) {
      if (ev.t >= end) break;
      advance_to(ev.t);
      Nanoseconds t = std::max(ev.t, engine.last_ts());
      if (t < engine.blocked_until) {
        t = engine.blocked_until;
        ++res.deferred_visits;
      }
      engine.demand(ev, t);
      agent->on_demand(engine, ev.row, t);
    }
  }
  advance_to(end - 1);
  agent->finish(engine);

  if (auto* periodic = dynamic_cast<PeriodicRefAgent*>(agent.get())) {
    res.skipped_refs = periodic->skipped;
    if (periodic->self_refresh_refs > 0)
      res.notes.push_back("self-refresh REF slots: " + std::to_string(periodic->self_refresh_refs));
  }

  engine.oracle.finish(end);
  res.violation_count = engine.oracle.violation_count();
  if (res.violation_count > 0) {
    auto v = engine.oracle.violations();
    if (v.size() > options.max_reported_violations) v.resize(options.max_reported_violations);
    res.violations = std::move(v);
  }
  if (options.charge_background) engine.ledger.charge_background(end, topology.capacity_bytes());
  res.energy = engine.ledger;
  return res;
}

SimulationResult simulate_partitioned(const DramTopology& topology,
                                      const std::vector<Partition>& partitions,
                                      const ControllerConfig& controller,
                                      const EnergyConfig& energy,
                                      const SimulationOptions& options) {
  std::vector<int> owner(topology.num_banks, -1);
  for (std::size_t p = 0; p < partitions.size(); ++p) {
    if (!partitions[p].workload)
      throw Error(ErrorCode::kConfigInvalid, "partition " + std::to_string(p) + ": no workload");
    for (auto b : partitions[p].banks) {
      if (b >= topology.num_banks)
        throw Error(ErrorCode::kConfigInvalid, "partition bank beyond the device");
      if (owner[b] >= 0)
        throw Error(ErrorCode::kConfigInvalid, "bank " + std::to_string(b) + " assigned twice");
      owner[b] = static_cast<int>(p);
    }
    for (const auto& r : partitions[p].workload->allocation()) {
      const auto first_bank = r.first / topology.rows_per_bank;
      const auto last_bank = (r.first + r.count - 1) / topology.rows_per_bank;
      for (auto b = first_bank; b <= last_bank; ++b)
        if (owner[b] != static_cast<int>(p))
          throw Error(ErrorCode::kConfigInvalid,
                      "partition " + std::to_string(p) + " allocates outside its banks");
    }
  }

  SimulationOptions sub = options;
  sub.charge_background = false;
  sub.record_commands = true;
  SimulationResult merged;
  merged.policy = controller.label() + "/partitioned";
  merged.mode = "partitioned";
  merged.simulated_ns = static_cast<Nanoseconds>(options.windows) * topology.t_refw_ns;
  merged.explicit_rows_per_window.assign(options.windows, 0);
  merged.implicit_slots_per_window.assign(options.windows, 0);
  merged.energy = EnergyLedger(energy);
  std::vector<std::vector<DramCommand>> streams;
  for (const auto& part : partitions) {
    auto r = simulate(topology, *part.workload, controller, energy, sub);
    merged.energy.merge(r.energy);
    merged.allocated_rows += r.allocated_rows;
    merged.demand_visits += r.demand_visits;
    merged.deferred_visits += r.deferred_visits;
    merged.explicit_refresh_rows += r.explicit_refresh_rows;
    merged.implicit_slots += r.implicit_slots;
    merged.explicit_slots += r.explicit_slots;
    merged.config_words += r.config_words;
    merged.reconfig_latency_ns += r.reconfig_latency_ns;
    merged.demand_outside_paar += r.demand_outside_paar;
    merged.violation_count += r.violation_count;
    merged.violations.insert(merged.violations.end(), r.violations.begin(), r.violations.end());
    for (std::size_t w = 0; w < options.windows; ++w) {
      merged.explicit_rows_per_window[w] += r.explicit_rows_per_window[w];
      merged.implicit_slots_per_window[w] += r.implicit_slots_per_window[w];
    }
    for (auto& n : r.notes) merged.notes.push_back(std::move(n));
    streams.push_back(std::move(r.commands));
  }
  if (options.charge_background)
    merged.energy.charge_background(merged.simulated_ns, topology.capacity_bytes());
  if (options.record_commands) {
    for (auto& s : streams)
      merged.commands.insert(merged.commands.end(), s.begin(), s.end());
    std::stable_sort(merged.commands.begin(), merged.commands.end(),
                     [](const DramCommand& a, const DramCommand& b) {
                       return a.timestamp < b.timestamp;
                     });
  }
  return merged;
}

std::vector<double> refresh_fraction_curve(const std::vector<std::uint64_t>& capacities_bytes,
                                           const EnergyConfig& energy, const PeakDemand& demand) {
  std::vector<double> out;
  for (auto capacity : capacities_bytes) {
    const auto topology = DramTopology::with_capacity(capacity);
    WorkloadDecl decl;
    decl.name = "peak-stream";
    decl.source = SyntheticSpec{SyntheticPattern::kStreaming,
                                std::min<std::uint64_t>(demand.footprint_bytes, capacity)};
    decl.fps = demand.bandwidth_bytes_per_s /
               static_cast<double>(std::get<SyntheticSpec>(decl.source).footprint_bytes);
    Workload workload(decl, topology);
    ControllerConfig controller;
    SimulationOptions options;
    options.windows = demand.windows;
    auto r = simulate(topology, workload, controller, energy, options);
    out.push_back(r.energy.refresh_fraction());
  }
  return out;
}

}  // namespace rtcsim
