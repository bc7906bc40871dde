#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>

#include "json.hpp"

#include "fenc/array.hpp"
#include "fenc/device.hpp"
#include "fenc/perfmodel.hpp"
#include "fenc/workloads.hpp"

namespace fenc {

/// Raised for unreadable or invalid configuration and data files.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GlobalConfig {
  DeviceParams device{};
  ArrayConfig array{};
  PerfConfig perf{};
  BaselineCosts baseline{};
  TrafficMode traffic = TrafficMode::AllLayers;
  std::uint64_t seed = 1;

  void validate() const;
};

void to_json(nlohmann::json& j, const DeviceParams& p);
void from_json(const nlohmann::json& j, DeviceParams& p);
void to_json(nlohmann::json& j, const ArrayConfig& c);
void from_json(const nlohmann::json& j, ArrayConfig& c);
void to_json(nlohmann::json& j, const PerfConfig& c);
void from_json(const nlohmann::json& j, PerfConfig& c);
void to_json(nlohmann::json& j, const BaselineCosts& b);
void from_json(const nlohmann::json& j, BaselineCosts& b);
void to_json(nlohmann::json& j, const GlobalConfig& g);
void from_json(const nlohmann::json& j, GlobalConfig& g);

/// Missing fields keep their defaults. The array's device section is the
/// top-level "device" object.
GlobalConfig parse_config(const std::string& json_text);
GlobalConfig load_config(const std::filesystem::path& path);

/// Explicit path if given, else $FENC_CONFIG if set, else defaults.
GlobalConfig resolve_config(const std::optional<std::filesystem::path>& explicit_path);

}  // namespace fenc
