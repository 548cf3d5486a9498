// Acceptance runner: one PASS/FAIL line per criterion; exit status 1 if any
// criterion fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "oracles.hpp"
#include "rtcsim/error.hpp"
#include "rtcsim/experiment.hpp"
#include "rtcsim/rate_matcher.hpp"
#include "rtcsim/report.hpp"

using namespace rtcsim;

namespace {

// Tolerances.
constexpr double kSweepBudgetSeconds = 600.0;
constexpr double kLenetRefreshOpReductionMin = 0.95;
constexpr double kLenetEnergySavings = 0.96;
constexpr double kLenetEnergyTol = 0.05;
constexpr double kAlexSavings60 = 0.44;
constexpr double kAlexSavings30 = 0.30;
constexpr double kAlexTol = 0.10;
constexpr double kScalingLo = 0.35;
constexpr double kScalingHi = 0.55;
constexpr double kSmartSavingsLo = 0.20;
constexpr double kSmartSavingsHi = 0.97;
constexpr std::size_t kOracleSequences = 1000;

int failures = 0;

void report(int id, const char* title, bool pass, const std::string& detail) {
  std::printf("%s [%d] %s: %s\n", pass ? "PASS" : "FAIL", id, title, detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

using Key = std::tuple<std::string, std::uint64_t, double, double, std::string>;

Key key_of(const PointResult& r) {
  return {r.workload_name, r.point.capacity_bytes, r.point.fps, r.point.locality, r.point.policy};
}

std::string csv_of(const ExperimentConfig& cfg, const std::vector<PointResult>& r) {
  std::ostringstream out;
  write_csv_report(out, cfg, r);
  return out.str();
}

std::size_t workload_index(const ExperimentConfig& cfg, const std::string& name) {
  for (std::size_t i = 0; i < cfg.workloads.size(); ++i)
    if (cfg.workloads[i].name == name) return i;
  throw Error(ErrorCode::kConfigInvalid, "default config lacks workload " + name);
}

PointResult run_extra(const ExperimentConfig& cfg, const std::string& workload, double gib,
                      double fps, double locality, const std::string& policy) {
  SweepPoint p;
  p.workload = workload_index(cfg, workload);
  p.capacity_bytes = static_cast<std::uint64_t>(gib * static_cast<double>(kGiB));
  p.fps = fps;
  p.locality = locality;
  p.policy = policy;
  auto r = run_point(cfg, p, cfg.simulation);
  if (!r.error.empty()) throw Error(ErrorCode::kConfigInvalid, r.error);
  return r;
}

}  // namespace

int main() {
  const std::filesystem::path config_path =
      std::filesystem::path(RTCSIM_SOURCE_DIR) / "configs" / "default.json";
  ExperimentConfig cfg;
  std::vector<PointResult> first, second;
  double sweep_seconds = 0;
  try {
    cfg = load_experiment_config(config_path);
    const auto t0 = std::chrono::steady_clock::now();
    first = run_sweep(cfg);
    sweep_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    second = run_sweep(cfg);
  } catch (const std::exception& e) {
    std::printf("FAIL [0] default sweep could not run: %s\n", e.what());
    return 1;
  }
  std::map<Key, const PointResult*> by_key;
  for (const auto& r : first) by_key[key_of(r)] = &r;
  auto at = [&](const std::string& w, double gib, double fps, double loc,
                const std::string& policy) -> const PointResult& {
    const auto it = by_key.find(
        {w, static_cast<std::uint64_t>(gib * static_cast<double>(kGiB)), fps, loc, policy});
    if (it == by_key.end()) throw Error(ErrorCode::kConfigInvalid, "missing sweep point");
    return *it->second;
  };

  // 1. Retention safety.
  {
    std::uint64_t violations = 0;
    std::size_t failed = 0;
    for (const auto& r : first) {
      violations += r.sim.violation_count;
      failed += r.error.empty() ? 0 : 1;
    }
    auto mutant = cfg;
    mutant.controller.skip_coverage_check = true;
    mutant.workloads[workload_index(cfg, "lenet")].idle_rows = 8;
    SweepPoint p{0, workload_index(cfg, "lenet"), 2 * kGiB, 60, 1.0, "MinRtc"};
    const auto m = run_point(mutant, p, mutant.simulation);
    const bool pass = first.size() == 216 && failed == 0 && violations == 0 &&
                      m.error.empty() && m.sim.violation_count > 0 &&
                      sweep_seconds < kSweepBudgetSeconds;
    report(1, "retention safety", pass,
           std::to_string(first.size()) + " points, " + std::to_string(failed) + " failed, " +
               std::to_string(violations) + " violations; mutant (coverage check off) caught " +
               std::to_string(m.sim.violation_count) + " violations; sweep " +
               fmt("%.1f", sweep_seconds) + " s");
  }

  // 2. Rate matching against the slot-by-slot credit loop.
  {
    std::uint64_t pairs = 0, mismatches = 0;
    for (std::uint64_t n_r = 1; n_r <= 512; ++n_r)
      for (std::uint64_t n_a = 0; n_a <= n_r + 1; ++n_a) {
        const auto plan = rate_match(n_a, n_r);
        const auto credit = oracle::credit_schedule(n_a, n_r, 2 * n_r);
        ++pairs;
        for (std::uint64_t s = 0; s < credit.size(); ++s)
          if (schedule_window(plan, s) != credit[s]) {
            ++mismatches;
            break;
          }
      }
    const auto half = rate_match(2, 4);
    const bool interleave = half.period == 2 && half.pattern == std::vector<bool>{true, false};
    report(2, "rate matching exactness", mismatches == 0 && interleave,
           std::to_string(pairs) + " (n_a, n_r) pairs, " + std::to_string(mismatches) +
               " mismatches; (2,4) -> " + (interleave ? "implicit,explicit" : "wrong pattern"));
  }

  // 3. Full-RTC with n_a >= n_r issues no explicit refresh after warm-up.
  {
    std::size_t points = 0, bad = 0;
    for (const auto& r : first) {
      const auto& s = r.sim;
      if (r.point.policy != "FullRtc" || s.mode != "rtt" || s.n_a < s.n_r) continue;
      ++points;
      for (std::size_t w = 1; w < s.explicit_rows_per_window.size(); ++w)
        if (s.explicit_rows_per_window[w] != 0) {
          ++bad;
          break;
        }
    }
    report(3, "full-RTC zero explicit refresh", points > 0 && bad == 0,
           std::to_string(points) + " certified points with n_a >= n_r, " + std::to_string(bad) +
               " with explicit REF_ROW after warm-up");
  }

  // 4. PAAR accounting and the LeNet 2 GB reduction.
  {
    std::size_t points = 0, bad = 0;
    for (const auto& r : first) {
      const auto& s = r.sim;
      if (r.point.policy != "FullRtc" || s.mode != "rtt") continue;
      ++points;
      const std::uint64_t region = s.paar.hi - s.paar.lo + 1;
      for (std::size_t w = 0; w < s.explicit_rows_per_window.size(); ++w)
        if (s.explicit_rows_per_window[w] != region - s.implicit_slots_per_window[w]) {
          ++bad;
          break;
        }
    }
    bool lenet_ok = true;
    std::string lenet;
    for (double fps : cfg.fps)
      for (double loc : cfg.locality) {
        const auto& full = at("lenet", 2, fps, loc, "FullRtc").sim;
        const auto& base = at("lenet", 2, fps, loc, "Baseline").sim;
        const double ops = 1.0 - static_cast<double>(full.explicit_refresh_rows) /
                                     static_cast<double>(base.explicit_refresh_rows);
        const double energy = savings(full.energy, base.energy);
        lenet_ok = lenet_ok && ops >= kLenetRefreshOpReductionMin &&
                   std::fabs(energy - kLenetEnergySavings) <= kLenetEnergyTol;
        lenet += fmt(" %gfps", fps) + fmt("/loc%g:", loc) + fmt(" ops %.3f", ops) +
                 fmt(" energy %.3f;", energy);
      }
    report(4, "PAAR row accounting", points > 0 && bad == 0 && lenet_ok,
           std::to_string(points) + " rtt points, " + std::to_string(bad) +
               " windows off (hi-lo+1 - implicit); LeNet 2 GB vs Baseline:" + lenet);
  }

  // 5. RTT rate sensitivity on AlexNet 2 GB.
  try {
    double s60 = 0, s30 = 0;
    for (double fps : {60.0, 30.0}) {
      const auto rtt = run_extra(cfg, "alexnet", 2, fps, 1.0, "FullRtcRttOnly");
      const auto base = run_extra(cfg, "alexnet", 2, fps, 1.0, "Baseline");
      (fps == 60.0 ? s60 : s30) = savings(rtt.sim.energy, base.sim.energy);
    }
    const bool pass = s60 > s30 && std::fabs(s60 - kAlexSavings60) <= kAlexTol &&
                      std::fabs(s30 - kAlexSavings30) <= kAlexTol;
    report(5, "RTT rate sensitivity", pass,
           "AlexNet 2 GB RTT-only savings vs Baseline: 60 fps " + fmt("%.3f", s60) + ", 30 fps " +
               fmt("%.3f", s30));
  } catch (const std::exception& e) {
    report(5, "RTT rate sensitivity", false, e.what());
  }

  // 6. Refresh share grows with capacity.
  {
    const auto curve = refresh_fraction_curve(cfg.capacities_bytes, cfg.energy);
    bool monotone = true;
    std::string values;
    for (std::size_t i = 0; i < curve.size(); ++i) {
      if (i && curve[i] < curve[i - 1]) monotone = false;
      values += fmt(" %g GiB", static_cast<double>(cfg.capacities_bytes[i]) / kGiB) +
                fmt(" %.3f", curve[i]);
    }
    const double top = curve.empty() ? 0 : curve.back();
    const bool has_8g = !cfg.capacities_bytes.empty() && cfg.capacities_bytes.back() == 8 * kGiB;
    report(6, "refresh fraction scaling",
           monotone && has_8g && top >= kScalingLo && top <= kScalingHi,
           "refresh fraction at peak demand:" + values);
  }

  // 7. Full-RTC vs SmartRefresh at every point.
  {
    std::size_t points = 0, worse = 0, out_of_band = 0;
    double lo = 1, hi = 0;
    for (const auto& r : first) {
      if (r.point.policy != "FullRtc") continue;
      const auto& smart = at(r.workload_name, static_cast<double>(r.point.capacity_bytes) / kGiB,
                             r.point.fps, r.point.locality, "SmartRefresh");
      ++points;
      const double s = savings(r.sim.energy, smart.sim.energy);
      lo = std::min(lo, s);
      hi = std::max(hi, s);
      if (r.sim.energy.total_pj() > smart.sim.energy.total_pj()) ++worse;
      if (s < kSmartSavingsLo || s > kSmartSavingsHi) ++out_of_band;
    }
    report(7, "SmartRefresh dominance", points > 0 && worse == 0 && out_of_band == 0,
           std::to_string(points) + " points, " + std::to_string(worse) + " where Full-RTC > Smart, " +
               std::to_string(out_of_band) + " outside band; savings " + fmt("%.3f", lo) + ".." +
               fmt("%.3f", hi));
  }

  // 8. Brute-force equivalences.
  {
    const auto dram = oracle::check_dram_model(2024, kOracleSequences);
    const auto agu = oracle::check_agu(2025, kOracleSequences);
    const auto ret = oracle::check_retention(2026, kOracleSequences);
    const bool pass = dram.mismatches == 0 && agu.mismatches == 0 && ret.mismatches == 0;
    std::string detail = "dram-model " + std::to_string(dram.trials) + "/" +
                         std::to_string(dram.mismatches) + ", covers " +
                         std::to_string(agu.trials) + "/" + std::to_string(agu.mismatches) +
                         ", retention " + std::to_string(ret.trials) + "/" +
                         std::to_string(ret.mismatches) + " (trials/mismatches)";
    for (const auto* o : {&dram, &agu, &ret})
      if (o->mismatches) detail += "; " + o->first_failure;
    report(8, "oracle equivalences", pass, detail);
  }

  // 9. Determinism.
  {
    const auto a = csv_of(cfg, first);
    const auto b = csv_of(cfg, second);
    report(9, "determinism", a == b,
           std::to_string(a.size()) + " vs " + std::to_string(b.size()) + " bytes, " +
               (a == b ? "identical" : "different"));
  }
  return failures == 0 ? 0 : 1;
}
