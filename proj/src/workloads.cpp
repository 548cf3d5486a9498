#include "rtcsim/workloads.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

#include "rtcsim/error.hpp"

namespace rtcsim {

namespace {

std::uint64_t rows_for(std::uint64_t bytes, std::uint32_t row_size) {
  return (bytes + row_size - 1) / row_size;
}

void push_range(std::vector<RowRange>& out, RowIndex first, std::uint64_t count) {
  if (count == 0) return;
  if (!out.empty() && out.back().first + out.back().count == first)
    out.back().count += count;
  else
    out.push_back({first, count});
}

LayerKind parse_layer_kind(const std::string& s, const std::string& where) {
  if (s == "conv") return LayerKind::kConv;
  if (s == "pool") return LayerKind::kPool;
  if (s == "classifier") return LayerKind::kClassifier;
  throw Error(ErrorCode::kConfigInvalid, where + ": unknown layer kind '" + s + "'");
}

}  // namespace

std::uint64_t NetworkSpec::weight_bytes() const {
  std::uint64_t n = 0;
  for (const auto& l : layers) n += l.weight_bytes;
  return n;
}

std::uint64_t NetworkSpec::max_live_fmap_bytes() const {
  std::uint64_t m = 0;
  for (const auto& l : layers) m = std::max(m, l.input_fmap_bytes + l.output_fmap_bytes);
  return m;
}

std::uint64_t NetworkSpec::footprint_bytes() const {
  return weight_bytes() + max_live_fmap_bytes();
}

NetworkSpec parse_network(std::istream& in, const std::string& origin) {
  NetworkSpec net;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    const std::string where = origin + ":" + std::to_string(lineno);
    if (first == "network") {
      if (!(ls >> net.name)) throw Error(ErrorCode::kConfigInvalid, where + ": missing network name");
      continue;
    }
    CnnLayerSpec layer;
    layer.name = first;
    std::string kind;
    long long in_b = -1, w_b = -1, out_b = -1;
    if (!(ls >> kind >> in_b >> w_b >> out_b))
      throw Error(ErrorCode::kConfigInvalid, where + ": expected '<name> <kind> <in> <weights> <out>'");
    if (in_b < 0 || w_b < 0 || out_b < 0)
      throw Error(ErrorCode::kConfigInvalid, where + ": byte sizes must be >= 0");
    layer.kind = parse_layer_kind(kind, where);
    layer.input_fmap_bytes = static_cast<std::uint64_t>(in_b);
    layer.weight_bytes = static_cast<std::uint64_t>(w_b);
    layer.output_fmap_bytes = static_cast<std::uint64_t>(out_b);
    net.layers.push_back(std::move(layer));
  }
  if (net.layers.empty()) throw Error(ErrorCode::kConfigInvalid, origin + ": network has no layers");
  if (net.name.empty()) net.name = origin;
  return net;
}

NetworkSpec load_network(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open network file " + path.string());
  return parse_network(in, path.string());
}

const char* demand_kind_tag(DemandKind kind) {
  switch (kind) {
    case DemandKind::kRead: return "R";
    case DemandKind::kWrite: return "W";
    case DemandKind::kAlloc: return "ALLOC";
    case DemandKind::kFree: return "FREE";
  }
  return "?";
}

Nanoseconds WorkloadDecl::period_ns() const {
  return static_cast<Nanoseconds>(std::llround(1e9 / fps));
}

std::uint32_t WorkloadDecl::read_passes() const {
  return static_cast<std::uint32_t>(std::llround(1.0 / locality));
}

Workload::Workload(WorkloadDecl decl, const DramTopology& topology)
    : decl_(std::move(decl)), topology_(topology) {
  if (!(decl_.locality > 0.0 && decl_.locality <= 1.0))
    throw Error(ErrorCode::kConfigInvalid, decl_.name + ": locality must be in (0, 1]");
  const double inv = 1.0 / decl_.locality;
  if (std::fabs(inv - std::round(inv)) > 1e-9)
    throw Error(ErrorCode::kConfigInvalid, decl_.name + ": locality must be 1/k for integer k");

  if (const auto* trace = std::get_if<TraceFile>(&decl_.source)) {
    if (trace->period_ns <= 0)
      throw Error(ErrorCode::kConfigInvalid, decl_.name + ": trace period must be positive");
    period_ns_ = trace->period_ns;
  } else {
    if (!(decl_.fps > 0.0))
      throw Error(ErrorCode::kConfigInvalid, decl_.name + ": fps must be positive");
    period_ns_ = decl_.period_ns();
  }

  std::visit(
      [this](const auto& src) {
        using T = std::decay_t<decltype(src)>;
        if constexpr (std::is_same_v<T, NetworkSpec>) layout_network(src);
        else if constexpr (std::is_same_v<T, SyntheticSpec>) layout_synthetic(src);
        else layout_trace(src);
      },
      decl_.source);

  if (!allocation_.empty()) {
    const RowIndex end = allocation_.back().first + allocation_.back().count;
    if (end > topology_.total_rows())
      throw Error(ErrorCode::kFootprintExceedsCapacity,
                  decl_.name + ": allocation needs rows up to " + std::to_string(end) +
                      " but the device has " + std::to_string(topology_.total_rows()));
  }
}

void Workload::layout_network(const NetworkSpec& net) {
  const auto row_size = topology_.row_size_bytes;
  const auto passes = decl_.read_passes();
  RowIndex next = decl_.base_row;

  std::vector<RowIndex> weight_base(net.layers.size());
  std::vector<std::uint64_t> weight_rows(net.layers.size());
  for (std::size_t i = 0; i < net.layers.size(); ++i) {
    weight_rows[i] = rows_for(net.layers[i].weight_bytes, row_size);
    weight_base[i] = next;
    next += weight_rows[i];
  }
  std::uint64_t arena = 0;
  for (const auto& l : net.layers)
    arena = std::max(arena, rows_for(l.input_fmap_bytes, row_size) +
                                rows_for(l.output_fmap_bytes, row_size));
  const RowIndex arena_base = next;
  next += arena;
  push_range(allocation_, decl_.base_row, next - decl_.base_row);
  push_range(allocation_, next, decl_.idle_rows);

  // Even layers read from the arena head and write to its tail; odd layers
  // the reverse, so a layer's input is where its predecessor wrote.
  auto head = [&](std::uint64_t rows) { return VisitStream{arena_base, 1, rows, false}; };
  auto tail = [&](std::uint64_t rows) {
    return VisitStream{arena_base + arena - rows, 1, rows, false};
  };
  auto add = [&](VisitStream s, bool write) {
    if (s.count == 0) return;
    s.write = write;
    streams_.push_back(s);
  };

  const auto& first = net.layers.front();
  add(head(rows_for(first.input_fmap_bytes, row_size)), true);  // frame arrives
  for (std::size_t i = 0; i < net.layers.size(); ++i) {
    const auto& l = net.layers[i];
    const auto in_rows = rows_for(l.input_fmap_bytes, row_size);
    const auto out_rows = rows_for(l.output_fmap_bytes, row_size);
    const bool even = i % 2 == 0;
    for (std::uint32_t p = 0; p < passes; ++p) {
      add({weight_base[i], 1, weight_rows[i], false}, false);
      add(even ? head(in_rows) : tail(in_rows), false);
    }
    add(even ? tail(out_rows) : head(out_rows), true);
  }
}

void Workload::layout_synthetic(const SyntheticSpec& spec) {
  const auto rows = rows_for(spec.footprint_bytes, topology_.row_size_bytes);
  if (rows == 0) throw Error(ErrorCode::kConfigInvalid, decl_.name + ": empty synthetic footprint");
  if (!(spec.write_fraction >= 0.0 && spec.write_fraction <= 1.0))
    throw Error(ErrorCode::kConfigInvalid, decl_.name + ": write_fraction must be in [0, 1]");
  push_range(allocation_, decl_.base_row, rows);
  push_range(allocation_, decl_.base_row + rows, decl_.idle_rows);
  const auto passes = decl_.read_passes();
  if (spec.pattern == SyntheticPattern::kRandom) {
    visits_per_iteration_ = rows * passes;
    return;
  }
  const std::uint32_t scans =
      spec.pattern == SyntheticPattern::kRepeatedScan ? std::max<std::uint32_t>(1, spec.passes) : 1;
  for (std::uint32_t s = 0; s < scans * passes; ++s)
    streams_.push_back({decl_.base_row, 1, rows, false});
  const auto write_rows =
      static_cast<std::uint64_t>(std::ceil(spec.write_fraction * static_cast<double>(rows)));
  if (write_rows > 0) streams_.push_back({decl_.base_row, 1, write_rows, true});
}

void Workload::layout_trace(const TraceFile& trace) {
  std::vector<RowIndex> rows;
  for (const auto& e : trace.events)
    if (e.kind == DemandKind::kAlloc) rows.push_back(e.row);
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  for (auto r : rows) push_range(allocation_, r, 1);
  for (const auto& e : trace.events) {
    if (e.t >= period_ns_) break;
    if (e.kind == DemandKind::kRead || e.kind == DemandKind::kWrite) {
      ++visits_per_iteration_;
      if (e.kind == DemandKind::kWrite) ++write_visits_;
    }
  }
}

std::uint64_t Workload::allocated_rows() const {
  std::uint64_t n = 0;
  for (const auto& r : allocation_) n += r.count;
  return n;
}

RowIndex Workload::allocated_lo() const {
  return allocation_.empty() ? 0 : allocation_.front().first;
}

RowIndex Workload::allocated_hi() const {
  return allocation_.empty() ? 0 : allocation_.back().first + allocation_.back().count - 1;
}

std::vector<DemandEvent> Workload::liveness_events() const {
  std::vector<DemandEvent> out;
  if (const auto* trace = std::get_if<TraceFile>(&decl_.source)) {
    for (const auto& e : trace->events)
      if (e.kind == DemandKind::kAlloc || e.kind == DemandKind::kFree) out.push_back(e);
    return out;
  }
  for (const auto& r : allocation_)
    for (std::uint64_t i = 0; i < r.count; ++i)
      out.push_back({0, DemandKind::kAlloc, r.first + i});
  return out;
}

std::uint64_t Workload::visits_per_iteration() const {
  if (!streams_.empty()) {
    std::uint64_t n = 0;
    for (const auto& s : streams_) n += s.count;
    return n;
  }
  return visits_per_iteration_;
}

std::uint64_t Workload::write_visits_per_iteration() const {
  if (!streams_.empty()) {
    std::uint64_t n = 0;
    for (const auto& s : streams_)
      if (s.write) n += s.count;
    return n;
  }
  return write_visits_;
}

std::uint64_t Workload::read_visits_per_iteration() const {
  return visits_per_iteration() - write_visits_per_iteration();
}

std::uint64_t Workload::rows_accessed_per_window() const {
  const auto v = static_cast<unsigned __int128>(visits_per_iteration());
  return static_cast<std::uint64_t>(v * static_cast<std::uint64_t>(topology_.t_refw_ns) /
                                    static_cast<std::uint64_t>(period_ns_));
}

void Workload::frame_rows(std::uint64_t frame, std::vector<DemandEvent>& out) const {
  out.clear();
  if (const auto* trace = std::get_if<TraceFile>(&decl_.source)) {
    const Nanoseconds begin = static_cast<Nanoseconds>(frame) * period_ns_;
    const Nanoseconds end = begin + period_ns_;
    auto it = std::lower_bound(trace->events.begin(), trace->events.end(), begin,
                               [](const DemandEvent& e, Nanoseconds t) { return e.t < t; });
    for (; it != trace->events.end() && it->t < end; ++it)
      if (it->kind == DemandKind::kRead || it->kind == DemandKind::kWrite) out.push_back(*it);
    return;
  }
  if (const auto* syn = std::get_if<SyntheticSpec>(&decl_.source);
      syn && syn->pattern == SyntheticPattern::kRandom) {
    const auto rows = allocation_.front().count - decl_.idle_rows;
    std::mt19937_64 rng(decl_.seed ^ (0x9e3779b97f4a7c15ull * (frame + 1)));
    out.reserve(visits_per_iteration_);
    for (std::uint64_t i = 0; i < visits_per_iteration_; ++i)
      out.push_back({0, DemandKind::kRead, decl_.base_row + rng() % rows});
  } else {
    out.reserve(visits_per_iteration());
    for (const auto& s : streams_)
      for (std::uint64_t k = 0; k < s.count; ++k)
        out.push_back({0, s.write ? DemandKind::kWrite : DemandKind::kRead,
                       static_cast<RowIndex>(static_cast<std::int64_t>(s.base) +
                                             s.stride * static_cast<std::int64_t>(k))});
  }
  // Uniform pacing across the frame.
  const auto n = static_cast<std::uint64_t>(out.size());
  const Nanoseconds begin = static_cast<Nanoseconds>(frame) * period_ns_;
  for (std::uint64_t i = 0; i < n; ++i)
    out[i].t = begin + static_cast<Nanoseconds>(
                           static_cast<unsigned __int128>(i) * static_cast<std::uint64_t>(period_ns_) / n);
}

void Workload::generate_frame_trace(std::uint64_t frame, std::vector<DemandEvent>& out) const {
  frame_rows(frame, out);
}

std::vector<DemandEvent> Workload::generate_frame_trace(std::uint64_t frame) const {
  std::vector<DemandEvent> out;
  frame_rows(frame, out);
  return out;
}

AguDerivation Workload::derive_agu_program(std::size_t max_segments, RowIndex region_lo,
                                           std::uint64_t region_size) const {
  AguDerivation result;
  result.n_a = rows_accessed_per_window();
  std::vector<DemandEvent> f0, f1;
  frame_rows(0, f0);
  frame_rows(1, f1);
  if (f0.empty()) {
    result.reason = "iteration has no row visits";
    return result;
  }
  if (f0.size() != f1.size() ||
      !std::equal(f0.begin(), f0.end(), f1.begin(),
                  [](const DemandEvent& a, const DemandEvent& b) { return a.row == b.row; })) {
    result.reason = "access pattern differs between iterations";
    return result;
  }
  AguProgram program;
  program.repeat = true;
  program.region_lo = region_lo;
  program.region_size = region_size;
  for (std::size_t i = 0; i < f0.size(); ++i) {
    const RowIndex row = f0[i].row;
    if (row < region_lo || row >= region_lo + region_size) {
      result.reason = "visit outside the refresh region";
      return result;
    }
    auto& segs = program.segments;
    if (!segs.empty()) {
      auto& s = segs.back();
      const auto last = static_cast<std::int64_t>(s.base) +
                        s.stride * static_cast<std::int64_t>(s.count - 1);
      const auto delta = static_cast<std::int64_t>(row) - last;
      if (s.count == 1 && delta != 0) {
        s.stride = delta;
        ++s.count;
        continue;
      }
      if (s.count > 1 && delta == s.stride) {
        ++s.count;
        continue;
      }
    }
    if (segs.size() == max_segments) {
      result.reason = "needs more than " + std::to_string(max_segments) + " affine segments";
      return result;
    }
    segs.push_back({row, 1, 1});
  }
  result.program = std::move(program);
  return result;
}

void write_trace(std::ostream& out, const DramTopology& topology, Nanoseconds period_ns,
                 const std::vector<DemandEvent>& events) {
  out << "# rtcsim-trace v1 topology=" << hex64(topology.hash()) << " period_ns=" << period_ns
      << '\n';
  for (const auto& e : events) {
    const auto addr = to_address(topology, e.row);
    out << e.t << ' ' << demand_kind_tag(e.kind) << ' ' << addr.bank << ' ' << addr.row << '\n';
  }
}

TraceFile read_trace(std::istream& in, const DramTopology& topology) {
  TraceFile trace;
  std::string line;
  if (!std::getline(in, line) || line.rfind("# rtcsim-trace v1", 0) != 0)
    throw Error(ErrorCode::kConfigInvalid, "trace: missing '# rtcsim-trace v1' header");
  {
    std::istringstream hs(line.substr(17));
    std::string tok;
    bool have_topo = false;
    while (hs >> tok) {
      if (tok.rfind("topology=", 0) == 0) {
        trace.topology_hash = std::stoull(tok.substr(9), nullptr, 16);
        have_topo = true;
      } else if (tok.rfind("period_ns=", 0) == 0) {
        trace.period_ns = std::stoll(tok.substr(10));
      }
    }
    if (!have_topo) throw Error(ErrorCode::kConfigInvalid, "trace: header lacks topology hash");
    if (trace.topology_hash != topology.hash())
      throw Error(ErrorCode::kTraceMismatch,
                  "trace: topology hash " + hex64(trace.topology_hash) +
                      " does not match the configured device " + hex64(topology.hash()));
  }
  int lineno = 1;
  Nanoseconds prev = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    long long t = 0;
    std::string kind;
    std::uint64_t bank = 0, row = 0;
    if (!(ls >> t >> kind >> bank >> row))
      throw Error(ErrorCode::kConfigInvalid, "trace:" + std::to_string(lineno) + ": malformed record");
    DemandEvent e;
    e.t = t;
    if (kind == "R") e.kind = DemandKind::kRead;
    else if (kind == "W") e.kind = DemandKind::kWrite;
    else if (kind == "ALLOC") e.kind = DemandKind::kAlloc;
    else if (kind == "FREE") e.kind = DemandKind::kFree;
    else throw Error(ErrorCode::kConfigInvalid, "trace:" + std::to_string(lineno) + ": unknown kind " + kind);
    if (t < prev)
      throw Error(ErrorCode::kConfigInvalid, "trace:" + std::to_string(lineno) + ": timestamps decrease");
    prev = t;
    e.row = to_global(topology, {static_cast<std::uint32_t>(bank), row});
    trace.events.push_back(e);
  }
  return trace;
}

}  // namespace rtcsim
