#include "fenc/workloads.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include "json.hpp"

namespace fenc {

using nlohmann::json;

std::uint64_t WorkloadSpec::total_weight_bits() const {
  return std::accumulate(layers.begin(), layers.end(), std::uint64_t{0},
                         [](std::uint64_t acc, const LayerTraffic& l) { return acc + l.weight_bits; });
}

std::uint64_t WorkloadSpec::total_output_bits() const {
  return std::accumulate(layers.begin(), layers.end(), std::uint64_t{0},
                         [](std::uint64_t acc, const LayerTraffic& l) { return acc + l.output_bits; });
}

namespace {

std::uint64_t bit_count(const json& layer, const char* key, const std::string& where) {
  if (!layer.contains(key)) throw WorkloadError(where + ": missing '" + key + "'");
  const json& v = layer.at(key);
  if (!v.is_number_integer()) throw WorkloadError(where + ": '" + key + "' must be an integer");
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  const auto n = v.get<std::int64_t>();
  if (n < 0) throw WorkloadError(where + ": '" + key + "' must be >= 0");
  return static_cast<std::uint64_t>(n);
}

}  // namespace

WorkloadSpec parse_workload(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw WorkloadError(std::string("workload parse error: ") + e.what());
  }
  if (!doc.is_object()) throw WorkloadError("workload: top level must be an object");
  if (!doc.contains("name") || !doc["name"].is_string()) throw WorkloadError("workload: missing string 'name'");
  if (!doc.contains("layers") || !doc["layers"].is_array()) throw WorkloadError("workload: missing array 'layers'");

  WorkloadSpec spec;
  spec.name = doc["name"].get<std::string>();
  for (std::size_t i = 0; i < doc["layers"].size(); ++i) {
    const json& l = doc["layers"][i];
    const std::string where = spec.name + " layer " + std::to_string(i);
    if (!l.is_object()) throw WorkloadError(where + ": must be an object");
    LayerTraffic layer;
    layer.name = l.value("name", "layer" + std::to_string(i));
    layer.weight_bits = bit_count(l, "weight_bits", where);
    layer.output_bits = bit_count(l, "output_bits", where);
    spec.layers.push_back(std::move(layer));
  }
  return spec;
}

WorkloadSpec load_workload(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw WorkloadError("cannot open workload file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_workload(buf.str());
}

std::vector<WorkloadSpec> load_workload_dir(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) throw WorkloadError("not a directory: " + dir.string());
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  std::vector<WorkloadSpec> specs;
  for (const auto& f : files) specs.push_back(load_workload(f));
  return specs;
}

TrafficMode parse_traffic_mode(std::string_view s) {
  if (s == "all-layers") return TrafficMode::AllLayers;
  if (s == "final-layer") return TrafficMode::FinalLayer;
  throw std::invalid_argument("unknown traffic mode '" + std::string(s) + "'");
}

std::string_view to_string(TrafficMode m) { return m == TrafficMode::AllLayers ? "all-layers" : "final-layer"; }

SchemeLatency scheme_latency(const WorkloadSpec& spec, const Scheme& scheme, TrafficMode mode) {
  const std::uint64_t weight_bits = spec.total_weight_bits();
  const std::uint64_t output_bits = mode == TrafficMode::AllLayers
                                        ? spec.total_output_bits()
                                        : (spec.layers.empty() ? 0 : spec.layers.back().output_bits);
  SchemeLatency out;
  if (const auto* ins = std::get_if<InSitu>(&scheme)) {
    const std::uint64_t w = ins->cfg.word_bits;
    out.dec_cycles = static_cast<double>(dec_latency(ins->cfg, (weight_bits + w - 1) / w));
    out.enc_cycles = static_cast<double>(enc_latency(ins->cfg, (output_bits + w - 1) / w));
  } else {
    // AES operates on fixed 128-bit blocks.
    const auto& aes = std::get<AesBaseline>(scheme).costs;
    constexpr std::uint64_t w = 128;
    out.dec_cycles = static_cast<double>((weight_bits + w - 1) / w) * aes.dec_cycles;
    out.enc_cycles = static_cast<double>((output_bits + w - 1) / w) * aes.enc_cycles;
  }
  out.total_cycles = out.enc_cycles + out.dec_cycles;
  return out;
}

double latency_reduction(const SchemeLatency& ours, const SchemeLatency& reference) {
  if (reference.total_cycles == 0.0) return 0.0;
  return 1.0 - ours.total_cycles / reference.total_cycles;
}

ReductionReport reduction_report(const std::vector<WorkloadSpec>& specs, const PerfConfig& cfg,
                                 const BaselineCosts& baseline, TrafficMode mode) {
  if (specs.empty()) throw std::invalid_argument("reduction_report: no workloads");
  ReductionReport report;
  double sum = 0.0;
  for (const auto& spec : specs) {
    const SchemeLatency ours = scheme_latency(spec, InSitu{cfg}, mode);
    const SchemeLatency ref = scheme_latency(spec, AesBaseline{baseline}, mode);
    WorkloadReduction w{spec.name, ref.total_cycles, ours.total_cycles, latency_reduction(ours, ref)};
    sum += w.reduction;
    report.workloads.push_back(std::move(w));
  }
  report.average_reduction = sum / static_cast<double>(specs.size());
  return report;
}

}  // namespace fenc
