#include "rtcsim/report.hpp"

#include <cinttypes>
#include <cstdio>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "rtcsim/error.hpp"

namespace rtcsim {

namespace {

using json = nlohmann::json;

std::string fixed3(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string axis(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::string gib(std::uint64_t bytes) {
  return axis(static_cast<double>(bytes) / static_cast<double>(kGiB));
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c == '\n' ? ' ' : c;
  }
  return out + "\"";
}

std::string join_notes(const std::vector<std::string>& notes) {
  std::string out;
  for (const auto& n : notes) {
    if (!out.empty()) out += "; ";
    out += n;
  }
  return out;
}

const char* kAssumptions[] = {
    "access unit = one 8-byte burst; a row visit is one RD/WR command of row_size/8 bursts",
    "energy covers DRAM-side categories only (refresh, access, background, counters)",
    "default calibration is derived data, not a measurement",
};

std::vector<std::string> record_values(const PointResult& r, const ExperimentConfig& config) {
  const auto& s = r.sim;
  const auto& e = s.energy;
  const auto& c = e.counts();
  std::uint64_t rd = 0, wr = 0, refreshed = 0;
  for (const auto& cat : c.by_category) {
    rd += cat.rd_bursts;
    wr += cat.wr_bursts;
    refreshed += cat.refreshed_rows;
  }
  const bool ok = r.error.empty();
  auto pj = [&](EnergyCategory cat) { return ok ? fixed3(e.category_pj(cat)) : ""; };
  auto n = [&](std::uint64_t v) { return ok ? std::to_string(v) : std::string(); };
  return {
      std::to_string(r.point.id),
      r.workload_name,
      gib(r.point.capacity_bytes),
      axis(r.point.fps),
      axis(r.point.locality),
      r.point.policy,
      ok ? s.mode : "",
      ok ? "ok" : r.error,
      ok ? fixed3(e.total_pj()) : "",
      pj(EnergyCategory::kRefresh),
      pj(EnergyCategory::kAccess),
      pj(EnergyCategory::kBackground),
      pj(EnergyCategory::kCounters),
      ok ? fixed6(e.refresh_fraction()) : "",
      n(c.count(CommandKind::kAct)),
      n(c.count(CommandKind::kPre)),
      n(c.count(CommandKind::kRd)),
      n(c.count(CommandKind::kWr)),
      n(c.count(CommandKind::kRef)),
      n(c.count(CommandKind::kRefRow)),
      n(rd),
      n(wr),
      n(refreshed),
      n(c.counter_updates),
      n(c.counter_scans),
      n(s.demand_visits),
      n(s.deferred_visits),
      n(s.explicit_refresh_rows),
      n(s.implicit_slots),
      n(s.explicit_slots),
      n(s.n_a),
      n(s.n_r),
      n(s.agu_segments),
      ok ? (s.rtt_certified ? "1" : "0") : "",
      ok ? (s.not_affine ? "1" : "0") : "",
      n(static_cast<std::uint64_t>(s.reconfig_latency_ns)),
      n(s.demand_outside_paar),
      n(s.violation_count),
      n(s.allocated_rows),
      n(static_cast<std::uint64_t>(s.simulated_ns)),
      hex64(config.energy.hash()),
      join_notes(s.notes),
  };
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        cur += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(std::move(cur));
  return out;
}

}  // namespace

const std::vector<std::string>& report_columns() {
  static const std::vector<std::string> cols = {
      "point_id",        "workload",         "capacity_gib",     "fps",
      "locality",        "policy",           "mode",             "status",
      "total_pj",        "refresh_pj",       "access_pj",        "background_pj",
      "counters_pj",     "refresh_fraction", "n_act",            "n_pre",
      "n_rd",            "n_wr",             "n_ref",            "n_ref_row",
      "rd_bursts",       "wr_bursts",        "refreshed_rows",   "counter_updates",
      "counter_scans",   "demand_visits",    "deferred_visits",  "explicit_refresh_rows",
      "implicit_slots",  "explicit_slots",   "n_a",              "n_r",
      "agu_segments",    "rtt_certified",    "not_affine",       "reconfig_latency_ns",
      "demand_outside_paar", "violations",   "allocated_rows",   "simulated_ns",
      "calibration_hash", "notes",
  };
  return cols;
}

void write_csv_report(std::ostream& out, const ExperimentConfig& config,
                      const std::vector<PointResult>& results) {
  out << "# rtcsim report v1; calibration " << hex64(config.energy.hash()) << " ("
      << config.energy.provenance << "); seed " << config.seed << '\n';
  for (const char* a : kAssumptions) out << "# " << a << '\n';
  const auto& cols = report_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << '\n';
  for (const auto& r : results) {
    const auto vals = record_values(r, config);
    for (std::size_t i = 0; i < vals.size(); ++i) out << (i ? "," : "") << csv_field(vals[i]);
    out << '\n';
  }
}

void write_json_report(std::ostream& out, const ExperimentConfig& config,
                       const std::vector<PointResult>& results) {
  json root;
  root["format"] = "rtcsim-report v1";
  root["seed"] = config.seed;
  root["assumptions"] = json::array();
  for (const char* a : kAssumptions) root["assumptions"].push_back(a);
  const auto& e = config.energy;
  root["calibration"] = {{"hash", hex64(e.hash())},
                         {"provenance", e.provenance},
                         {"e_act_pj", e.e_act_pj},
                         {"e_pre_pj", e.e_pre_pj},
                         {"e_rd_burst_pj", e.e_rd_burst_pj},
                         {"e_wr_burst_pj", e.e_wr_burst_pj},
                         {"p_background_mw_per_gib", e.p_background_mw_per_gib},
                         {"e_counter_update_pj", e.e_counter_update_pj},
                         {"e_counter_scan_pj", e.e_counter_scan_pj}};
  root["config"] = json::parse(config.echo.empty() ? "{}" : config.echo);
  json points = json::array();
  for (const auto& r : results) {
    json p;
    p["id"] = r.point.id;
    p["workload"] = r.workload_name;
    p["capacity_gib"] = static_cast<double>(r.point.capacity_bytes) / static_cast<double>(kGiB);
    p["fps"] = r.point.fps;
    p["locality"] = r.point.locality;
    p["policy"] = r.point.policy;
    if (!r.error.empty()) {
      p["status"] = r.error;
      points.push_back(std::move(p));
      continue;
    }
    const auto& s = r.sim;
    const auto& led = s.energy;
    const auto& c = led.counts();
    p["status"] = "ok";
    p["mode"] = s.mode;
    json energy;
    energy["total_pj"] = led.total_pj();
    for (int i = 0; i < kEnergyCategoryCount; ++i) {
      const auto cat = static_cast<EnergyCategory>(i);
      energy[std::string(energy_category_name(cat)) + "_pj"] = led.category_pj(cat);
    }
    energy["refresh_fraction"] = led.refresh_fraction();
    p["energy"] = energy;
    json cmds;
    for (int i = 0; i < kCommandKindCount; ++i)
      cmds[command_kind_name(static_cast<CommandKind>(i))] = c.commands[i];
    cmds["counter_updates"] = c.counter_updates;
    cmds["counter_scans"] = c.counter_scans;
    p["commands"] = cmds;
    p["slots"] = {{"implicit", s.implicit_slots},
                  {"explicit", s.explicit_slots},
                  {"implicit_per_window", s.implicit_slots_per_window},
                  {"n_a", s.n_a},
                  {"n_r", s.n_r}};
    p["refresh"] = {{"explicit_rows", s.explicit_refresh_rows},
                    {"explicit_rows_per_window", s.explicit_rows_per_window},
                    {"skipped_refs", s.skipped_refs}};
    p["rtc"] = {{"rtt_certified", s.rtt_certified},
                {"not_affine", s.not_affine}, {"smart_counters", s.smart_counters},
                {"agu_segments", s.agu_segments},
                {"config_words", s.config_words},
                {"reconfig_latency_ns", s.reconfig_latency_ns},
                {"paar", {{"enabled", s.paar.enabled}, {"lo", s.paar.lo}, {"hi", s.paar.hi}}},
                {"demand_outside_paar", s.demand_outside_paar}};
    p["demand"] = {{"visits", s.demand_visits}, {"deferred", s.deferred_visits}};
    json viol = json::array();
    for (const auto& v : s.violations)
      viol.push_back({{"row", v.row}, {"gap_ns", v.gap_ns}, {"at_ns", v.at}});
    p["retention"] = {{"violations", s.violation_count}, {"first", viol}};
    p["notes"] = s.notes;
    points.push_back(std::move(p));
  }
  root["points"] = std::move(points);
  out << root.dump(2) << '\n';
}

void write_plot_csv(std::ostream& out, const ExperimentConfig& config,
                    const std::vector<PointResult>& results) {
  out << "figure,workload,capacity_gib,fps,locality,policy,metric,value\n";
  std::map<std::string, double> baseline, smart;
  auto key = [](const PointResult& r) {
    return r.workload_name + "|" + std::to_string(r.point.capacity_bytes) + "|" +
           axis(r.point.fps) + "|" + axis(r.point.locality);
  };
  for (const auto& r : results) {
    if (!r.error.empty()) continue;
    if (r.point.policy == "Baseline") baseline[key(r)] = r.sim.energy.total_pj();
    if (r.point.policy == "SmartRefresh") smart[key(r)] = r.sim.energy.total_pj();
  }
  for (const auto& r : results) {
    if (!r.error.empty()) continue;
    const std::string prefix = r.workload_name + "," + gib(r.point.capacity_bytes) + "," +
                               axis(r.point.fps) + "," + axis(r.point.locality) + "," +
                               r.point.policy + ",";
    const auto& e = r.sim.energy;
    auto line = [&](const char* fig, const std::string& metric, double v) {
      out << fig << ',' << prefix << metric << ',' << fixed6(v) << '\n';
    };
    for (int i = 0; i < kEnergyCategoryCount; ++i) {
      const auto cat = static_cast<EnergyCategory>(i);
      line("breakdown", std::string(energy_category_name(cat)) + "_pj", e.category_pj(cat));
    }
    line("breakdown", "total_pj", e.total_pj());
    if (auto it = baseline.find(key(r)); it != baseline.end())
      line("savings", "savings_vs_baseline", savings(e.total_pj(), it->second));
    if (auto it = smart.find(key(r)); it != smart.end())
      line("savings", "savings_vs_smart", savings(e.total_pj(), it->second));
  }
  const auto curve = refresh_fraction_curve(config.capacities_bytes, config.energy);
  for (std::size_t i = 0; i < curve.size(); ++i)
    out << "scaling,peak-stream," << gib(config.capacities_bytes[i]) << ",,,Baseline,"
        << "refresh_fraction," << fixed6(curve[i]) << '\n';
}

std::vector<ReportRecord> read_csv_report(std::istream& in) {
  std::vector<ReportRecord> out;
  std::vector<std::string> header;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    auto fields = split_csv_line(line);
    if (header.empty()) {
      header = std::move(fields);
      continue;
    }
    if (fields.size() != header.size())
      throw Error(ErrorCode::kConfigInvalid,
                  "report line " + std::to_string(lineno) + ": expected " +
                      std::to_string(header.size()) + " fields, got " + std::to_string(fields.size()));
    ReportRecord rec;
    for (std::size_t i = 0; i < header.size(); ++i) rec[header[i]] = fields[i];
    out.push_back(std::move(rec));
  }
  if (header.empty()) throw Error(ErrorCode::kConfigInvalid, "report has no header");
  return out;
}

std::vector<CompareRow> compare_reports(const std::vector<ReportRecord>& a,
                                        const std::vector<ReportRecord>& b,
                                        const CompareOptions& options) {
  std::string column;
  if (options.metric == "total") column = "total_pj";
  else if (options.metric == "refresh") column = "refresh_pj";
  else throw Error(ErrorCode::kConfigInvalid, "metric: must be total or refresh");

  auto field = [](const ReportRecord& r, const char* k) -> const std::string& {
    auto it = r.find(k);
    if (it == r.end())
      throw Error(ErrorCode::kConfigInvalid, std::string("report lacks column ") + k);
    return it->second;
  };
  auto filter = [&](const std::vector<ReportRecord>& recs, const std::optional<std::string>& pol) {
    std::vector<const ReportRecord*> out;
    for (const auto& r : recs)
      if (!pol || field(r, "policy") == *pol) out.push_back(&r);
    return out;
  };
  const auto fa = filter(a, options.policy_a);
  const auto fb = filter(b, options.policy_b);
  std::set<std::string> pa, pb;
  for (auto* r : fa) pa.insert(field(*r, "policy"));
  for (auto* r : fb) pb.insert(field(*r, "policy"));
  bool with_policy;
  if (pa == pb) with_policy = true;
  else if (pa.size() == 1 && pb.size() == 1) with_policy = false;
  else
    throw Error(ErrorCode::kAxisMismatch,
                "policy sets differ and are not single policies; select with policy filters");

  auto key = [&](const ReportRecord& r) {
    std::string k = field(r, "workload") + "|" + field(r, "capacity_gib") + "|" +
                    field(r, "fps") + "|" + field(r, "locality");
    if (with_policy) k += "|" + field(r, "policy");
    return k;
  };
  std::map<std::string, const ReportRecord*> ma, mb;
  for (auto* r : fa)
    if (!ma.emplace(key(*r), r).second)
      throw Error(ErrorCode::kAxisMismatch, "report A has duplicate point " + key(*r));
  for (auto* r : fb)
    if (!mb.emplace(key(*r), r).second)
      throw Error(ErrorCode::kAxisMismatch, "report B has duplicate point " + key(*r));
  for (const auto& [k, r] : ma)
    if (!mb.count(k)) throw Error(ErrorCode::kAxisMismatch, "point " + k + " missing from report B");
  for (const auto& [k, r] : mb)
    if (!ma.count(k)) throw Error(ErrorCode::kAxisMismatch, "point " + k + " missing from report A");

  std::vector<CompareRow> rows;
  for (const auto& [k, ra] : ma) {
    const auto* rb = mb.at(k);
    CompareRow row;
    row.workload = field(*ra, "workload");
    row.capacity_gib = field(*ra, "capacity_gib");
    row.fps = field(*ra, "fps");
    row.locality = field(*ra, "locality");
    row.policy_a = field(*ra, "policy");
    row.policy_b = field(*rb, "policy");
    if (field(*ra, "status") != "ok" || field(*rb, "status") != "ok")
      throw Error(ErrorCode::kConfigInvalid, "point " + k + " did not run in both reports");
    row.a = std::stod(field(*ra, column.c_str()));
    row.b = std::stod(field(*rb, column.c_str()));
    row.savings = savings(row.a, row.b);
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_compare_csv(std::ostream& out, const std::vector<CompareRow>& rows) {
  out << "workload,capacity_gib,fps,locality,policy_a,policy_b,a,b,savings\n";
  for (const auto& r : rows)
    out << csv_field(r.workload) << ',' << r.capacity_gib << ',' << r.fps << ',' << r.locality
        << ',' << r.policy_a << ',' << r.policy_b << ',' << fixed3(r.a) << ',' << fixed3(r.b)
        << ',' << fixed6(r.savings) << '\n';
}

void write_command_stream(std::ostream& out, const std::vector<DramCommand>& commands) {
  for (const auto& c : commands)
    out << c.timestamp << ' ' << command_kind_name(c.kind) << ' ' << c.target.bank << ' '
        << c.target.row << ' ' << c.bursts << '\n';
}

ReplaySummary replay_commands(const DramTopology& topology, const PaarBounds& paar,
                              const std::vector<bool>& bank_mask,
                              const std::vector<DramCommand>& commands) {
  DramModel model(topology);
  model.set_paar(paar);
  model.set_bank_mask(bank_mask);
  EnergyLedger ledger;
  ReplaySummary out;
  for (const auto& c : commands) {
    auto eff = model.apply(c);
    const bool refresh = c.kind == CommandKind::kRef || c.kind == CommandKind::kRefRow;
    ledger.charge(c, refresh ? EnergyCategory::kRefresh : EnergyCategory::kAccess,
                  eff.row_count());
    out.replenished_rows += eff.row_count();
  }
  out.counts = ledger.counts();
  return out;
}

}  // namespace rtcsim
