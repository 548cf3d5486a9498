// Command-line front end; talks to the simulator only through the C API.
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>

#include <CLI11.hpp>

#include "rtcsim/rtcsim.h"

namespace {

enum Exit { kOk = 0, kConfigError = 1, kViolation = 2, kInternal = 3 };

// RTCSIM_LOG: error, warn (default), info, debug.
int log_level() {
  const char* v = std::getenv("RTCSIM_LOG");
  if (!v) return 1;
  if (!std::strcmp(v, "error")) return 0;
  if (!std::strcmp(v, "info")) return 2;
  if (!std::strcmp(v, "debug")) return 3;
  return 1;
}

int exit_for(int status) {
  switch (status) {
    case RTCSIM_OK: return kOk;
    case RTCSIM_E_CONFIG_INVALID:
    case RTCSIM_E_WORKLOAD_INFEASIBLE:
    case RTCSIM_E_FOOTPRINT_EXCEEDS_CAPACITY:
    case RTCSIM_E_TRACE_MISMATCH:
    case RTCSIM_E_AXIS_MISMATCH:
    case RTCSIM_E_UNKNOWN_KIND:
    case RTCSIM_E_OUT_OF_RANGE:
    case RTCSIM_E_IO:
    case RTCSIM_E_INVALID_ARGUMENT:
      return kConfigError;
    default: return kInternal;
  }
}

int report_failure(int status) {
  std::fprintf(stderr, "rtcsim: %s: %s\n", rtcsim_status_name(status), rtcsim_last_error());
  return exit_for(status);
}

void progress(size_t done, size_t total, void*) {
  if (log_level() >= 2) std::fprintf(stderr, "rtcsim: point %zu/%zu done\n", done, total);
}

struct Experiment {
  rtcsim_experiment* handle = nullptr;
  ~Experiment() { rtcsim_experiment_free(handle); }
};

struct Results {
  rtcsim_results* handle = nullptr;
  ~Results() { rtcsim_results_free(handle); }
};

int cmd_simulate(const std::string& config, const std::string& out_dir, const uint64_t* seed,
                 unsigned jobs) {
  Experiment exp;
  if (int s = rtcsim_experiment_load(config.c_str(), &exp.handle)) return report_failure(s);
  if (seed) rtcsim_experiment_set_seed(exp.handle, *seed);
  std::string dir = out_dir;
  if (dir.empty()) {
    char buf[4096];
    rtcsim_experiment_output_dir(exp.handle, buf, sizeof buf);
    dir = buf;
  }
  Results res;
  if (int s = rtcsim_experiment_run(exp.handle, jobs, progress, nullptr, &res.handle))
    return report_failure(s);
  if (int s = rtcsim_results_write(res.handle, dir.c_str())) return report_failure(s);

  const size_t n = rtcsim_results_count(res.handle);
  const uint64_t violations = rtcsim_results_violations(res.handle);
  const size_t failed = rtcsim_results_failed(res.handle);
  if (log_level() >= 1)
    std::fprintf(stderr, "rtcsim: %zu points, %zu failed, %llu retention violations -> %s\n", n,
                 failed, static_cast<unsigned long long>(violations), dir.c_str());
  if (failed > 0) {
    for (size_t i = 0; i < n; ++i) {
      rtcsim_point_summary p;
      rtcsim_results_point(res.handle, i, &p);
      if (p.status != RTCSIM_OK)
        std::fprintf(stderr, "rtcsim: point %llu (%s, %s) failed: %s\n",
                     static_cast<unsigned long long>(p.id), p.workload, p.policy,
                     rtcsim_status_name(p.status));
    }
    return kInternal;
  }
  return violations > 0 ? kViolation : kOk;
}

int cmd_validate(const std::string& config) {
  Experiment exp;
  if (int s = rtcsim_experiment_load(config.c_str(), &exp.handle)) return report_failure(s);
  if (int s = rtcsim_experiment_validate(exp.handle)) return report_failure(s);
  size_t n = 0;
  rtcsim_experiment_point_count(exp.handle, &n);
  std::printf("ok: %zu sweep points\n", n);
  return kOk;
}

int cmd_trace(const std::string& config, size_t point, uint32_t frames, bool commands,
              const std::string& out) {
  Experiment exp;
  if (int s = rtcsim_experiment_load(config.c_str(), &exp.handle)) return report_failure(s);
  if (int s = rtcsim_trace_point(exp.handle, point, frames, commands ? 1 : 0,
                                 out.empty() ? nullptr : out.c_str()))
    return report_failure(s);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"DRAM refresh-policy energy simulator"};
  app.require_subcommand(1);

  std::string config, out_dir;
  uint64_t seed = 0;
  unsigned jobs = 0;
  auto* sim = app.add_subcommand("simulate", "run the sweep and write reports");
  sim->add_option("--config", config, "experiment configuration (JSON)")->required();
  sim->add_option("--out", out_dir, "output directory (default: config output.dir)");
  auto* seed_opt = sim->add_option("--seed", seed, "override the configured seed");
  sim->add_option("--jobs", jobs, "worker threads (0 = all cores)");

  std::string report_a, report_b, metric = "total", policy_a, policy_b, compare_out;
  auto* cmp = app.add_subcommand("compare", "per-point savings 1 - a/b between two reports");
  cmp->add_option("--a", report_a, "report CSV (numerator)")->required();
  cmp->add_option("--b", report_b, "report CSV (reference)")->required();
  cmp->add_option("--metric", metric, "total or refresh")
      ->check(CLI::IsMember({"total", "refresh"}));
  cmp->add_option("--policy-a", policy_a, "only records of this policy from --a");
  cmp->add_option("--policy-b", policy_b, "only records of this policy from --b");
  cmp->add_option("--out", compare_out, "write the table here instead of stdout");

  std::string validate_config;
  auto* val = app.add_subcommand("validate", "check a configuration without running it");
  val->add_option("--config", validate_config, "experiment configuration (JSON)")->required();

  std::string trace_config, trace_out;
  size_t point = 0;
  uint32_t frames = 0;
  bool commands = false;
  auto* tr = app.add_subcommand("trace", "dump the demand trace of one sweep point");
  tr->add_option("--config", trace_config, "experiment configuration (JSON)")->required();
  tr->add_option("--point", point, "sweep point id")->required();
  tr->add_option("--frames", frames, "frames to dump (0 = simulated span)");
  tr->add_flag("--commands", commands, "dump the simulated DRAM command stream instead");
  tr->add_option("--out", trace_out, "write here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  if (*sim) return cmd_simulate(config, out_dir, *seed_opt ? &seed : nullptr, jobs);
  if (*val) return cmd_validate(validate_config);
  if (*tr) return cmd_trace(trace_config, point, frames, commands, trace_out);
  if (*cmp) {
    const int s = rtcsim_compare(report_a.c_str(), report_b.c_str(), metric.c_str(),
                                 policy_a.empty() ? nullptr : policy_a.c_str(),
                                 policy_b.empty() ? nullptr : policy_b.c_str(),
                                 compare_out.empty() ? nullptr : compare_out.c_str());
    return s == RTCSIM_OK ? kOk : report_failure(s);
  }
  return kInternal;
}
