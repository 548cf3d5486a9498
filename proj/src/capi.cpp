#include "rtcsim/rtcsim.h"

#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "rtcsim/error.hpp"
#include "rtcsim/experiment.hpp"
#include "rtcsim/report.hpp"

struct rtcsim_experiment {
  rtcsim::ExperimentConfig config;
};

struct rtcsim_results {
  rtcsim::ExperimentConfig config;
  std::vector<rtcsim::PointResult> points;
};

namespace {

thread_local std::string g_last_error;

int fail(int status, const std::string& message) {
  g_last_error = message;
  return status;
}

template <typename F>
int guarded(F&& body) {
  try {
    g_last_error.clear();
    body();
    return RTCSIM_OK;
  } catch (const rtcsim::Error& e) {
    return fail(static_cast<int>(e.code()), e.what());
  } catch (const std::exception& e) {
    return fail(RTCSIM_E_INTERNAL, e.what());
  } catch (...) {
    return fail(RTCSIM_E_INTERNAL, "unknown failure");
  }
}

void copy_text(char* dst, std::size_t len, const std::string& src) {
  if (len == 0) return;
  const std::size_t n = std::min(len - 1, src.size());
  std::memcpy(dst, src.data(), n);
  dst[n] = '\0';
}

int status_of(const std::string& error) {
  if (error.empty()) return RTCSIM_OK;
  for (int c = 1; c <= static_cast<int>(rtcsim::ErrorCode::kIo); ++c) {
    const std::string name = rtcsim::error_code_name(static_cast<rtcsim::ErrorCode>(c));
    if (error.rfind(name + ":", 0) == 0) return c;
  }
  return RTCSIM_E_INTERNAL;
}

template <typename F>
int with_output(const char* path, F&& write) {
  if (!path || std::strcmp(path, "-") == 0) {
    write(std::cout);
    std::cout.flush();
    return RTCSIM_OK;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw rtcsim::Error(rtcsim::ErrorCode::kIo, std::string("cannot write ") + path);
  write(out);
  return RTCSIM_OK;
}

}  // namespace

extern "C" {

const char* rtcsim_version(void) { return "1.0.0"; }

const char* rtcsim_last_error(void) { return g_last_error.c_str(); }

const char* rtcsim_status_name(int status) {
  if (status == RTCSIM_OK) return "Ok";
  if (status == RTCSIM_E_INVALID_ARGUMENT) return "InvalidArgument";
  if (status == RTCSIM_E_INTERNAL) return "Internal";
  if (status >= 1 && status <= static_cast<int>(rtcsim::ErrorCode::kIo))
    return rtcsim::error_code_name(static_cast<rtcsim::ErrorCode>(status));
  return "Unknown";
}

int rtcsim_experiment_load(const char* config_path, rtcsim_experiment** out) {
  if (!config_path || !out) return fail(RTCSIM_E_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    auto exp = std::make_unique<rtcsim_experiment>();
    exp->config = rtcsim::load_experiment_config(config_path);
    *out = exp.release();
  });
}

void rtcsim_experiment_free(rtcsim_experiment* exp) { delete exp; }

int rtcsim_experiment_set_seed(rtcsim_experiment* exp, uint64_t seed) {
  if (!exp) return fail(RTCSIM_E_INVALID_ARGUMENT, "null experiment");
  exp->config.seed = seed;
  return RTCSIM_OK;
}

int rtcsim_experiment_set_output_dir(rtcsim_experiment* exp, const char* dir) {
  if (!exp || !dir) return fail(RTCSIM_E_INVALID_ARGUMENT, "null argument");
  exp->config.output_dir = dir;
  return RTCSIM_OK;
}

int rtcsim_experiment_validate(const rtcsim_experiment* exp) {
  if (!exp) return fail(RTCSIM_E_INVALID_ARGUMENT, "null experiment");
  return guarded([&] { rtcsim::validate_experiment(exp->config); });
}

int rtcsim_experiment_point_count(const rtcsim_experiment* exp, size_t* out) {
  if (!exp || !out) return fail(RTCSIM_E_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = rtcsim::expand_sweep(exp->config).size(); });
}

int rtcsim_experiment_output_dir(const rtcsim_experiment* exp, char* buf, size_t len) {
  if (!exp || !buf) return fail(RTCSIM_E_INVALID_ARGUMENT, "null argument");
  copy_text(buf, len, exp->config.output_dir.string());
  return RTCSIM_OK;
}

int rtcsim_experiment_run(const rtcsim_experiment* exp, unsigned jobs, rtcsim_progress_fn progress,
                          void* user, rtcsim_results** out) {
  if (!exp || !out) return fail(RTCSIM_E_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    rtcsim::validate_experiment(exp->config);
    auto res = std::make_unique<rtcsim_results>();
    res->config = exp->config;
    const std::size_t total = rtcsim::expand_sweep(exp->config).size();
    std::size_t done = 0;
    rtcsim::ProgressFn fn;
    if (progress)
      fn = [&](const rtcsim::PointResult&) { progress(++done, total, user); };
    res->points = rtcsim::run_sweep(exp->config, jobs, fn);
    *out = res.release();
  });
}

void rtcsim_results_free(rtcsim_results* res) { delete res; }

size_t rtcsim_results_count(const rtcsim_results* res) { return res ? res->points.size() : 0; }

uint64_t rtcsim_results_violations(const rtcsim_results* res) {
  if (!res) return 0;
  uint64_t n = 0;
  for (const auto& p : res->points) n += p.sim.violation_count;
  return n;
}

size_t rtcsim_results_failed(const rtcsim_results* res) {
  if (!res) return 0;
  size_t n = 0;
  for (const auto& p : res->points) n += p.error.empty() ? 0 : 1;
  return n;
}

int rtcsim_results_point(const rtcsim_results* res, size_t index, rtcsim_point_summary* out) {
  if (!res || !out) return fail(RTCSIM_E_INVALID_ARGUMENT, "null argument");
  if (index >= res->points.size()) return fail(RTCSIM_E_OUT_OF_RANGE, "point index out of range");
  const auto& p = res->points[index];
  *out = rtcsim_point_summary{};
  out->id = p.point.id;
  copy_text(out->workload, sizeof out->workload, p.workload_name);
  copy_text(out->policy, sizeof out->policy, p.point.policy);
  copy_text(out->mode, sizeof out->mode, p.sim.mode);
  out->capacity_gib = static_cast<double>(p.point.capacity_bytes) / static_cast<double>(rtcsim::kGiB);
  out->fps = p.point.fps;
  out->locality = p.point.locality;
  out->status = status_of(p.error);
  const auto& e = p.sim.energy;
  out->total_pj = e.total_pj();
  out->refresh_pj = e.category_pj(rtcsim::EnergyCategory::kRefresh);
  out->access_pj = e.category_pj(rtcsim::EnergyCategory::kAccess);
  out->background_pj = e.category_pj(rtcsim::EnergyCategory::kBackground);
  out->counters_pj = e.category_pj(rtcsim::EnergyCategory::kCounters);
  out->explicit_refresh_rows = p.sim.explicit_refresh_rows;
  out->implicit_slots = p.sim.implicit_slots;
  out->explicit_slots = p.sim.explicit_slots;
  out->violations = p.sim.violation_count;
  return RTCSIM_OK;
}

int rtcsim_results_write(const rtcsim_results* res, const char* dir) {
  if (!res || !dir) return fail(RTCSIM_E_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const std::filesystem::path d(dir);
    std::error_code ec;
    std::filesystem::create_directories(d, ec);
    if (ec) throw rtcsim::Error(rtcsim::ErrorCode::kIo, "cannot create " + d.string());
    auto open = [&](const char* name) {
      std::ofstream f(d / name, std::ios::binary);
      if (!f) throw rtcsim::Error(rtcsim::ErrorCode::kIo, "cannot write " + (d / name).string());
      return f;
    };
    {
      auto f = open("report.csv");
      rtcsim::write_csv_report(f, res->config, res->points);
    }
    {
      auto f = open("report.json");
      rtcsim::write_json_report(f, res->config, res->points);
    }
    {
      auto f = open("plot.csv");
      rtcsim::write_plot_csv(f, res->config, res->points);
    }
  });
}

int rtcsim_compare(const char* report_a, const char* report_b, const char* metric,
                   const char* policy_a, const char* policy_b, const char* out_path) {
  if (!report_a || !report_b || !metric) return fail(RTCSIM_E_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    auto read = [](const char* path) {
      std::ifstream in(path);
      if (!in) throw rtcsim::Error(rtcsim::ErrorCode::kIo, std::string("cannot open ") + path);
      return rtcsim::read_csv_report(in);
    };
    rtcsim::CompareOptions opt;
    opt.metric = metric;
    if (policy_a) opt.policy_a = policy_a;
    if (policy_b) opt.policy_b = policy_b;
    const auto rows = rtcsim::compare_reports(read(report_a), read(report_b), opt);
    with_output(out_path, [&](std::ostream& o) { rtcsim::write_compare_csv(o, rows); });
  });
}

int rtcsim_trace_point(const rtcsim_experiment* exp, size_t point, uint32_t frames, int commands,
                       const char* out_path) {
  if (!exp) return fail(RTCSIM_E_INVALID_ARGUMENT, "null experiment");
  return guarded([&] {
    const auto points = rtcsim::expand_sweep(exp->config);
    if (point >= points.size())
      throw rtcsim::Error(rtcsim::ErrorCode::kOutOfRange,
                          "point " + std::to_string(point) + " not in sweep of " +
                              std::to_string(points.size()));
    const auto& p = points[point];
    const auto topology = rtcsim::topology_for(exp->config, p.capacity_bytes);
    const auto workload = rtcsim::build_workload(exp->config, p);
    const rtcsim::Nanoseconds span =
        static_cast<rtcsim::Nanoseconds>(exp->config.simulation.windows) * topology.t_refw_ns;
    if (commands) {
      auto options = exp->config.simulation;
      options.record_commands = true;
      if (frames > 0) {
        const auto needed = static_cast<rtcsim::Nanoseconds>(frames) * workload.period_ns();
        options.windows = static_cast<std::uint32_t>((needed + topology.t_refw_ns - 1) / topology.t_refw_ns);
      }
      const auto r = rtcsim::simulate(topology, workload, rtcsim::controller_for(exp->config, p),
                                      exp->config.energy, options);
      with_output(out_path, [&](std::ostream& o) { rtcsim::write_command_stream(o, r.commands); });
      return;
    }
    std::uint64_t n = frames;
    if (n == 0) n = static_cast<std::uint64_t>((span + workload.period_ns() - 1) / workload.period_ns());
    auto events = workload.liveness_events();
    std::vector<rtcsim::DemandEvent> frame;
    for (std::uint64_t f = 0; f < n; ++f) {
      workload.generate_frame_trace(f, frame);
      events.insert(events.end(), frame.begin(), frame.end());
    }
    std::stable_sort(events.begin(), events.end(),
                     [](const rtcsim::DemandEvent& a, const rtcsim::DemandEvent& b) { return a.t < b.t; });
    with_output(out_path, [&](std::ostream& o) {
      rtcsim::write_trace(o, topology, workload.period_ns(), events);
    });
  });
}

}  // extern "C"
