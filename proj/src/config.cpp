#include "fenc/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "fenc/cipher.hpp"

namespace fenc {

using nlohmann::json;

void GlobalConfig::validate() const {
  device.validate();
  array.validate();
  perf.validate();
}

void to_json(json& j, const DeviceParams& p) {
  j = json{{"vth_low", p.vth_low},
           {"vth_high", p.vth_high},
           {"i_on", p.i_on},
           {"i_off", p.i_off},
           {"vth_sigma", p.vth_sigma},
           {"write_pulse_volts", p.write_pulse_volts},
           {"write_pulse_seconds", p.write_pulse_seconds}};
  if (const auto* s = std::get_if<Sigmoid>(&p.slope)) {
    j["slope_mode"] = "sigmoid";
    j["volts_per_decade"] = s->volts_per_decade;
  } else {
    j["slope_mode"] = "hard-switch";
  }
}

void from_json(const json& j, DeviceParams& p) {
  const DeviceParams d;
  p.vth_low = j.value("vth_low", d.vth_low);
  p.vth_high = j.value("vth_high", d.vth_high);
  p.i_on = j.value("i_on", d.i_on);
  p.i_off = j.value("i_off", d.i_off);
  p.vth_sigma = j.value("vth_sigma", d.vth_sigma);
  p.write_pulse_volts = j.value("write_pulse_volts", d.write_pulse_volts);
  p.write_pulse_seconds = j.value("write_pulse_seconds", d.write_pulse_seconds);
  const std::string mode = j.value("slope_mode", std::string("hard-switch"));
  if (mode == "hard-switch") {
    p.slope = HardSwitch{};
  } else if (mode == "sigmoid") {
    p.slope = Sigmoid{j.value("volts_per_decade", Sigmoid{}.volts_per_decade)};
  } else {
    throw ConfigError("device: unknown slope_mode '" + mode + "'");
  }
}

void to_json(json& j, const ArrayConfig& c) {
  j = json{{"rows", c.rows},
           {"cols", c.cols},
           {"topology", to_string(c.topology)},
           {"device", c.device},
           {"read", {{"v_r", c.read.v_r}, {"v_r1", c.read.v_r1}, {"v_r2", c.read.v_r2}}},
           {"sense_threshold", c.sense_threshold},
           {"num_sense_amps", c.num_sense_amps},
           {"block_rows", c.block_rows}};
}

void from_json(const json& j, ArrayConfig& c) {
  const ArrayConfig d;
  c.rows = j.value("rows", d.rows);
  c.cols = j.value("cols", d.cols);
  c.topology = parse_topology(j.value("topology", std::string(to_string(d.topology))));
  c.device = j.contains("device") ? j.at("device").get<DeviceParams>() : DeviceParams{};
  if (j.contains("read")) {
    const json& r = j.at("read");
    c.read.v_r = r.value("v_r", d.read.v_r);
    c.read.v_r1 = r.value("v_r1", d.read.v_r1);
    c.read.v_r2 = r.value("v_r2", d.read.v_r2);
  } else {
    c.read = d.read;
  }
  c.sense_threshold = j.contains("sense_threshold") ? j.at("sense_threshold").get<double>()
                                                    : default_sense_threshold(c.device);
  c.num_sense_amps = j.value("num_sense_amps", d.num_sense_amps);
  c.block_rows = j.value("block_rows", c.rows);
}

void to_json(json& j, const PerfConfig& c) {
  j = json{{"word_bits", c.word_bits},
           {"freq_hz", c.freq_hz},
           {"num_sense_amps", c.num_sense_amps},
           {"array_rows", c.array_rows},
           {"array_cols", c.array_cols},
           {"enc_cycles_per_word", c.enc_cycles_per_word},
           {"key_granularity", to_string(c.key_granularity)}};
}

void from_json(const json& j, PerfConfig& c) {
  const PerfConfig d;
  c.word_bits = j.value("word_bits", d.word_bits);
  c.freq_hz = j.value("freq_hz", d.freq_hz);
  c.num_sense_amps = j.value("num_sense_amps", d.num_sense_amps);
  c.array_rows = j.value("array_rows", d.array_rows);
  c.array_cols = j.value("array_cols", d.array_cols);
  c.enc_cycles_per_word = j.value("enc_cycles_per_word", d.enc_cycles_per_word);
  c.key_granularity = parse_granularity(j.value("key_granularity", std::string(to_string(d.key_granularity))));
}

void to_json(json& j, const BaselineCosts& b) {
  j = json{{"enc_cycles", b.enc_cycles},
           {"dec_cycles", b.dec_cycles},
           {"throughput_mbps", b.throughput_mbps},
           {"power_mw", b.power_mw},
           {"area_mm2", b.area_mm2}};
}

void from_json(const json& j, BaselineCosts& b) {
  const BaselineCosts d;
  b.enc_cycles = j.value("enc_cycles", d.enc_cycles);
  b.dec_cycles = j.value("dec_cycles", d.dec_cycles);
  b.throughput_mbps = j.value("throughput_mbps", d.throughput_mbps);
  b.power_mw = j.value("power_mw", d.power_mw);
  b.area_mm2 = j.value("area_mm2", d.area_mm2);
}

void to_json(json& j, const GlobalConfig& g) {
  json array = g.array;
  array.erase("device");
  j = json{{"seed", g.seed},
           {"device", g.device},
           {"array", array},
           {"perf", g.perf},
           {"baseline", g.baseline},
           {"workloads", {{"traffic", to_string(g.traffic)}}}};
}

void from_json(const json& j, GlobalConfig& g) {
  g = GlobalConfig{};
  g.seed = j.value("seed", g.seed);
  if (j.contains("device")) g.device = j.at("device").get<DeviceParams>();
  json array = j.value("array", json::object());
  array["device"] = g.device;
  g.array = array.get<ArrayConfig>();
  if (j.contains("perf")) g.perf = j.at("perf").get<PerfConfig>();
  if (j.contains("baseline")) g.baseline = j.at("baseline").get<BaselineCosts>();
  if (j.contains("workloads"))
    g.traffic = parse_traffic_mode(j.at("workloads").value("traffic", std::string("all-layers")));
}

GlobalConfig parse_config(const std::string& json_text) {
  GlobalConfig g;
  try {
    g = json::parse(json_text).get<GlobalConfig>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  try {
    g.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return g;
}

GlobalConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

GlobalConfig resolve_config(const std::optional<std::filesystem::path>& explicit_path) {
  if (explicit_path) return load_config(*explicit_path);
  if (const char* env = std::getenv("FENC_CONFIG"); env && *env) return load_config(env);
  return GlobalConfig{};
}

}  // namespace fenc
