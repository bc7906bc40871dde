#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "fenc/perfmodel.hpp"

namespace fenc {

struct LayerTraffic {
  std::string name;
  std::uint64_t weight_bits = 0;
  std::uint64_t output_bits = 0;
};

struct WorkloadSpec {
  std::string name;
  std::vector<LayerTraffic> layers;

  std::uint64_t total_weight_bits() const;
  std::uint64_t total_output_bits() const;
};

/// Raised for unreadable, malformed, or schema-violating workload files.
class WorkloadError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

WorkloadSpec parse_workload(const std::string& json_text);
WorkloadSpec load_workload(const std::filesystem::path& path);
/// Every *.json in `dir`, sorted by file name.
std::vector<WorkloadSpec> load_workload_dir(const std::filesystem::path& dir);

/// Which layer outputs are encrypted on store.
enum class TrafficMode { AllLayers, FinalLayer };
TrafficMode parse_traffic_mode(std::string_view s);
std::string_view to_string(TrafficMode m);

struct InSitu {
  PerfConfig cfg;
};
struct AesBaseline {
  BaselineCosts costs;
};
using Scheme = std::variant<InSitu, AesBaseline>;

struct SchemeLatency {
  double enc_cycles = 0.0;
  double dec_cycles = 0.0;
  double total_cycles = 0.0;
};

/// Weights are decrypted once per inference; outputs are encrypted once on store.
SchemeLatency scheme_latency(const WorkloadSpec& spec, const Scheme& scheme, TrafficMode mode = TrafficMode::AllLayers);

/// 1 - ours / reference. A zero-traffic reference yields 0.
double latency_reduction(const SchemeLatency& ours, const SchemeLatency& reference);

struct WorkloadReduction {
  std::string name;
  double aes_cycles = 0.0;
  double insitu_cycles = 0.0;
  double reduction = 0.0;
};

struct ReductionReport {
  std::vector<WorkloadReduction> workloads;
  double average_reduction = 0.0;
};

ReductionReport reduction_report(const std::vector<WorkloadSpec>& specs, const PerfConfig& cfg,
                                 const BaselineCosts& baseline, TrafficMode mode = TrafficMode::AllLayers);

}  // namespace fenc
