#include "rtcsim/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "rtcsim/error.hpp"

namespace rtcsim {

namespace {

using json = nlohmann::json;

[[noreturn]] void invalid(const std::string& path, const std::string& why) {
  throw Error(ErrorCode::kConfigInvalid, path + ": " + why);
}

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

void check_keys(const json& obj, const std::string& path,
                std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) invalid(path.empty() ? "<root>" : path, "must be an object");
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }))
      invalid(join(path, key), "unknown field");
  }
}

double number(const json& obj, const char* key, const std::string& path, double def) {
  if (!obj.contains(key)) return def;
  const auto& v = obj.at(key);
  if (!v.is_number()) invalid(join(path, key), "must be a number");
  return v.get<double>();
}

double positive(const json& obj, const char* key, const std::string& path, double def) {
  const double v = number(obj, key, path, def);
  if (!(v > 0.0)) invalid(join(path, key), "must be positive");
  return v;
}

std::uint64_t count(const json& obj, const char* key, const std::string& path,
                    std::uint64_t def) {
  if (!obj.contains(key)) return def;
  const auto& v = obj.at(key);
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
    invalid(join(path, key), "must be a non-negative integer");
  return v.get<std::uint64_t>();
}

bool flag(const json& obj, const char* key, const std::string& path, bool def) {
  if (!obj.contains(key)) return def;
  if (!obj.at(key).is_boolean()) invalid(join(path, key), "must be true or false");
  return obj.at(key).get<bool>();
}

std::string text(const json& obj, const char* key, const std::string& path) {
  if (!obj.contains(key)) invalid(join(path, key), "is required");
  if (!obj.at(key).is_string() || obj.at(key).get<std::string>().empty())
    invalid(join(path, key), "must be a non-empty string");
  return obj.at(key).get<std::string>();
}

std::vector<double> numbers(const json& obj, const char* key, const std::string& path,
                            std::vector<double> def) {
  if (!obj.contains(key)) return def;
  const auto& v = obj.at(key);
  if (!v.is_array() || v.empty()) invalid(join(path, key), "must be a non-empty array");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string p = join(path, key) + "[" + std::to_string(i) + "]";
    if (!v[i].is_number()) invalid(p, "must be a number");
    const double x = v[i].get<double>();
    if (!(x > 0.0)) invalid(p, "must be positive");
    out.push_back(x);
  }
  return out;
}

std::filesystem::path data_dir() {
  if (const char* env = std::getenv("RTCSIM_DATA_DIR"); env && *env) return env;
#ifdef RTCSIM_DATA_DIR
  return RTCSIM_DATA_DIR;
#else
  return {};
#endif
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  if (path.is_absolute()) return path;
  auto local = base / path;
  if (std::filesystem::exists(local)) return local;
  auto data = data_dir();
  if (!data.empty() && std::filesystem::exists(data / path)) return data / path;
  return local;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse_json(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kConfigInvalid, origin + ": " + e.what());
  }
}

EnergyConfig parse_calibration(const json& j, const std::string& path) {
  check_keys(j, path,
             {"provenance", "e_act_pj", "e_pre_pj", "e_rd_burst_pj", "e_wr_burst_pj",
              "p_background_mw_per_gib", "e_counter_update_pj", "e_counter_scan_pj"});
  EnergyConfig e;
  e.e_act_pj = number(j, "e_act_pj", path, e.e_act_pj);
  e.e_pre_pj = number(j, "e_pre_pj", path, e.e_pre_pj);
  e.e_rd_burst_pj = number(j, "e_rd_burst_pj", path, e.e_rd_burst_pj);
  e.e_wr_burst_pj = number(j, "e_wr_burst_pj", path, e.e_wr_burst_pj);
  e.p_background_mw_per_gib = number(j, "p_background_mw_per_gib", path, e.p_background_mw_per_gib);
  e.e_counter_update_pj = number(j, "e_counter_update_pj", path, e.e_counter_update_pj);
  e.e_counter_scan_pj = number(j, "e_counter_scan_pj", path, e.e_counter_scan_pj);
  if (j.contains("provenance")) e.provenance = text(j, "provenance", path);
  try {
    e.validate();
  } catch (const Error& err) {
    invalid(path, err.what());
  }
  return e;
}

SyntheticSpec parse_synthetic(const json& j, const std::string& path) {
  check_keys(j, path, {"pattern", "footprint_bytes", "footprint_mib", "passes", "write_fraction"});
  SyntheticSpec s;
  const auto pattern = text(j, "pattern", path);
  if (pattern == "streaming") s.pattern = SyntheticPattern::kStreaming;
  else if (pattern == "repeated-scan") s.pattern = SyntheticPattern::kRepeatedScan;
  else if (pattern == "random") s.pattern = SyntheticPattern::kRandom;
  else invalid(join(path, "pattern"), "must be streaming, repeated-scan or random");
  if (j.contains("footprint_bytes") == j.contains("footprint_mib"))
    invalid(path, "exactly one of footprint_bytes / footprint_mib is required");
  s.footprint_bytes = j.contains("footprint_bytes")
                          ? count(j, "footprint_bytes", path, 0)
                          : static_cast<std::uint64_t>(positive(j, "footprint_mib", path, 1) *
                                                       1024.0 * 1024.0);
  if (s.footprint_bytes == 0) invalid(join(path, "footprint_bytes"), "must be positive");
  s.passes = static_cast<std::uint32_t>(count(j, "passes", path, 1));
  if (s.passes == 0) invalid(join(path, "passes"), "must be positive");
  s.write_fraction = number(j, "write_fraction", path, 0.0);
  if (!(s.write_fraction >= 0.0 && s.write_fraction <= 1.0))
    invalid(join(path, "write_fraction"), "must be in [0, 1]");
  return s;
}

}  // namespace

EnergyConfig load_calibration(const std::filesystem::path& path) {
  auto j = parse_json(read_file(path), path.string());
  return parse_calibration(j, "calibration");
}

ExperimentConfig parse_experiment_config(const std::string& json_text,
                                         const std::filesystem::path& base_dir) {
  const json root = parse_json(json_text, "config");
  check_keys(root, "", {"topology", "calibration", "workloads", "sweep", "controller",
                        "simulation", "seed", "jobs", "output"});
  ExperimentConfig cfg;
  cfg.echo = root.dump(2);

  if (root.contains("topology")) {
    const auto& t = root.at("topology");
    const std::string p = "topology";
    check_keys(t, p, {"num_banks", "row_size_bytes", "t_refw_ms", "t_refi_ns", "t_rcd_ns",
                      "t_ras_ns", "t_rp_ns", "t_rfc_ns", "burst_bytes"});
    auto& d = cfg.topology;
    d.num_banks = static_cast<std::uint32_t>(count(t, "num_banks", p, d.num_banks));
    d.row_size_bytes = static_cast<std::uint32_t>(count(t, "row_size_bytes", p, d.row_size_bytes));
    d.t_refw_ns = static_cast<Nanoseconds>(
        std::llround(positive(t, "t_refw_ms", p, 64.0) * static_cast<double>(kMillisecond)));
    d.t_refi_ns = static_cast<Nanoseconds>(count(t, "t_refi_ns", p, d.t_refi_ns));
    d.t_rcd_ns = static_cast<Nanoseconds>(count(t, "t_rcd_ns", p, d.t_rcd_ns));
    d.t_ras_ns = static_cast<Nanoseconds>(count(t, "t_ras_ns", p, d.t_ras_ns));
    d.t_rp_ns = static_cast<Nanoseconds>(count(t, "t_rp_ns", p, d.t_rp_ns));
    d.t_rfc_ns = static_cast<Nanoseconds>(count(t, "t_rfc_ns", p, d.t_rfc_ns));
    d.burst_bytes = static_cast<std::uint32_t>(count(t, "burst_bytes", p, d.burst_bytes));
    try {
      d.validate();
    } catch (const Error& e) {
      invalid(p, e.what());
    }
  }

  if (root.contains("calibration")) {
    const auto& c = root.at("calibration");
    if (c.is_string()) {
      const auto path = resolve(base_dir, c.get<std::string>());
      try {
        cfg.energy = load_calibration(path);
      } catch (const Error& e) {
        if (e.code() == ErrorCode::kIo) invalid("calibration", e.what());
        throw;
      }
    } else {
      cfg.energy = parse_calibration(c, "calibration");
    }
  }

  if (!root.contains("workloads")) invalid("workloads", "is required");
  const auto& ws = root.at("workloads");
  if (!ws.is_array() || ws.empty()) invalid("workloads", "must be a non-empty array");
  std::set<std::string> names;
  for (std::size_t i = 0; i < ws.size(); ++i) {
    const std::string p = "workloads[" + std::to_string(i) + "]";
    const auto& w = ws[i];
    check_keys(w, p, {"name", "network", "synthetic", "trace", "base_row", "idle_rows"});
    WorkloadSource src;
    src.name = text(w, "name", p);
    if (!names.insert(src.name).second) invalid(join(p, "name"), "duplicate workload name");
    const int kinds = static_cast<int>(w.contains("network")) +
                      static_cast<int>(w.contains("synthetic")) +
                      static_cast<int>(w.contains("trace"));
    if (kinds != 1) invalid(p, "exactly one of network / synthetic / trace is required");
    if (w.contains("network")) {
      src.kind = "network";
      src.path = resolve(base_dir, text(w, "network", p));
    } else if (w.contains("trace")) {
      src.kind = "trace";
      src.path = resolve(base_dir, text(w, "trace", p));
    } else {
      src.kind = "synthetic";
      src.synthetic = parse_synthetic(w.at("synthetic"), join(p, "synthetic"));
    }
    src.base_row = count(w, "base_row", p, 0);
    src.idle_rows = count(w, "idle_rows", p, 0);
    cfg.workloads.push_back(std::move(src));
  }

  if (root.contains("sweep")) {
    const auto& s = root.at("sweep");
    const std::string p = "sweep";
    check_keys(s, p, {"capacities_gib", "fps", "locality", "policies"});
    if (s.contains("capacities_gib")) {
      cfg.capacities_bytes.clear();
      for (double gib : numbers(s, "capacities_gib", p, {}))
        cfg.capacities_bytes.push_back(
            static_cast<std::uint64_t>(std::llround(gib * static_cast<double>(kGiB))));
    }
    cfg.fps = numbers(s, "fps", p, cfg.fps);
    cfg.locality = numbers(s, "locality", p, cfg.locality);
    for (std::size_t i = 0; i < cfg.locality.size(); ++i) {
      const double inv = 1.0 / cfg.locality[i];
      if (cfg.locality[i] > 1.0 || std::fabs(inv - std::round(inv)) > 1e-9)
        invalid(p + ".locality[" + std::to_string(i) + "]", "must be 1/k for a positive integer k");
    }
    if (s.contains("policies")) {
      const auto& ps = s.at("policies");
      if (!ps.is_array() || ps.empty()) invalid(join(p, "policies"), "must be a non-empty array");
      cfg.policies.clear();
      for (std::size_t i = 0; i < ps.size(); ++i) {
        const std::string pp = p + ".policies[" + std::to_string(i) + "]";
        if (!ps[i].is_string()) invalid(pp, "must be a string");
        try {
          parse_policy(ps[i].get<std::string>());
        } catch (const Error& e) {
          invalid(pp, e.what());
        }
        cfg.policies.push_back(ps[i].get<std::string>());
      }
    }
  }
  for (std::size_t i = 0; i < cfg.capacities_bytes.size(); ++i) {
    try {
      topology_for(cfg, cfg.capacities_bytes[i]);
    } catch (const Error& e) {
      invalid("sweep.capacities_gib[" + std::to_string(i) + "]", e.what());
    }
  }

  if (root.contains("controller")) {
    const auto& c = root.at("controller");
    const std::string p = "controller";
    check_keys(c, p, {"smart_bits", "agu_max_segments", "pasr_idle_threshold_ns",
                      "config_word_ns", "min_rtc_rate_gate", "skip_coverage_check"});
    auto& k = cfg.controller;
    k.smart_bits = static_cast<std::uint32_t>(count(c, "smart_bits", p, k.smart_bits));
    k.agu_max_segments = count(c, "agu_max_segments", p, k.agu_max_segments);
    k.pasr_idle_threshold_ns =
        static_cast<Nanoseconds>(count(c, "pasr_idle_threshold_ns", p, k.pasr_idle_threshold_ns));
    k.config_word_ns = static_cast<Nanoseconds>(count(c, "config_word_ns", p, k.config_word_ns));
    k.min_rtc_rate_gate = flag(c, "min_rtc_rate_gate", p, k.min_rtc_rate_gate);
    k.skip_coverage_check = flag(c, "skip_coverage_check", p, k.skip_coverage_check);
    try {
      k.validate();
    } catch (const Error& e) {
      throw Error(ErrorCode::kConfigInvalid, e.what());
    }
  }

  if (root.contains("simulation")) {
    const auto& s = root.at("simulation");
    const std::string p = "simulation";
    check_keys(s, p, {"windows", "t_ret_ms"});
    cfg.simulation.windows = static_cast<std::uint32_t>(count(s, "windows", p, 8));
    if (cfg.simulation.windows == 0) invalid(join(p, "windows"), "must be positive");
    if (s.contains("t_ret_ms"))
      cfg.simulation.t_ret_ns = static_cast<Nanoseconds>(
          std::llround(positive(s, "t_ret_ms", p, 64.0) * static_cast<double>(kMillisecond)));
  }

  cfg.seed = count(root, "seed", "", cfg.seed);
  cfg.jobs = static_cast<unsigned>(count(root, "jobs", "", 0));
  if (root.contains("output")) {
    const auto& o = root.at("output");
    check_keys(o, "output", {"dir"});
    cfg.output_dir = resolve(base_dir, text(o, "dir", "output"));
  } else {
    cfg.output_dir = base_dir / "out";
  }
  return cfg;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  return parse_experiment_config(read_file(path), path.parent_path());
}

std::vector<SweepPoint> expand_sweep(const ExperimentConfig& config) {
  std::vector<SweepPoint> out;
  for (std::size_t w = 0; w < config.workloads.size(); ++w)
    for (auto cap : config.capacities_bytes)
      for (double fps : config.fps)
        for (double loc : config.locality)
          for (const auto& pol : config.policies)
            out.push_back({out.size(), w, cap, fps, loc, pol});
  return out;
}

DramTopology topology_for(const ExperimentConfig& config, std::uint64_t capacity_bytes) {
  DramTopology t = config.topology;
  const std::uint64_t per_row_all_banks =
      static_cast<std::uint64_t>(t.num_banks) * t.row_size_bytes;
  if (per_row_all_banks == 0 || capacity_bytes == 0 || capacity_bytes % per_row_all_banks != 0)
    throw Error(ErrorCode::kConfigInvalid,
                "capacity must be a positive multiple of num_banks x row_size_bytes");
  t.rows_per_bank = capacity_bytes / per_row_all_banks;
  t.validate();
  return t;
}

Workload build_workload(const ExperimentConfig& config, const SweepPoint& point) {
  const auto& src = config.workloads.at(point.workload);
  const auto topology = topology_for(config, point.capacity_bytes);
  WorkloadDecl decl;
  decl.name = src.name;
  decl.fps = point.fps;
  decl.locality = point.locality;
  decl.base_row = src.base_row;
  decl.idle_rows = src.idle_rows;
  decl.seed = config.seed;
  if (src.kind == "network") {
    decl.source = load_network(src.path);
  } else if (src.kind == "trace") {
    std::ifstream in(src.path);
    if (!in) throw Error(ErrorCode::kIo, "cannot open trace " + src.path.string());
    decl.source = read_trace(in, topology);
  } else {
    decl.source = src.synthetic;
  }
  try {
    return Workload(std::move(decl), topology);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kFootprintExceedsCapacity)
      throw Error(ErrorCode::kWorkloadInfeasible, e.what());
    throw;
  }
}

ControllerConfig controller_for(const ExperimentConfig& config, const SweepPoint& point) {
  ControllerConfig c = config.controller;
  const auto sel = parse_policy(point.policy);
  c.policy = sel.policy;
  c.rtt = sel.rtt;
  c.paar_enabled = sel.paar;
  return c;
}

void validate_experiment(const ExperimentConfig& config) {
  for (std::size_t w = 0; w < config.workloads.size(); ++w)
    for (auto cap : config.capacities_bytes)
      for (double fps : config.fps)
        for (double loc : config.locality) {
          SweepPoint p{0, w, cap, fps, loc, config.policies.front()};
          const std::string where = "workloads[" + std::to_string(w) + "] (" +
                                    config.workloads[w].name + ") at " +
                                    std::to_string(cap / kGiB) + " GiB";
          try {
            build_workload(config, p);
          } catch (const Error& e) {
            if (e.code() == ErrorCode::kWorkloadInfeasible) throw Error(e.code(), where + ": " + e.what());
            throw Error(ErrorCode::kConfigInvalid, where + ": " + e.what());
          }
        }
}

PointResult run_point(const ExperimentConfig& config, const SweepPoint& point,
                      const SimulationOptions& options) {
  PointResult r;
  r.point = point;
  r.workload_name = config.workloads.at(point.workload).name;
  try {
    const auto topology = topology_for(config, point.capacity_bytes);
    const auto workload = build_workload(config, point);
    r.sim = simulate(topology, workload, controller_for(config, point), config.energy, options);
  } catch (const Error& e) {
    r.error = std::string(error_code_name(e.code())) + ": " + e.what();
  } catch (const std::exception& e) {
    r.error = std::string("Internal: ") + e.what();
  }
  return r;
}

std::vector<PointResult> run_sweep(const ExperimentConfig& config, unsigned jobs,
                                   const ProgressFn& progress) {
  const auto points = expand_sweep(config);
  std::vector<PointResult> results(points.size());
  if (jobs == 0) jobs = config.jobs;
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(1, points.size())));

  std::atomic<std::size_t> next{0};
  std::mutex progress_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= points.size()) return;
      results[i] = run_point(config, points[i], config.simulation);
      if (progress) {
        std::lock_guard<std::mutex> lock(progress_mutex);
        progress(results[i]);
      }
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return results;
}

}  // namespace rtcsim
