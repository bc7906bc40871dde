#include "fenc/io.hpp"

#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>
#include <system_error>

#include <fmt/format.h>

#include "fenc/config.hpp"

namespace fenc {

using nlohmann::json;

namespace {

json device_json(const FeFetDevice& d) { return json{{"state", to_string(d.state)}, {"vth", d.vth_effective}}; }

FeFetDevice device_from(const json& j) {
  return FeFetDevice{parse_vth_state(j.at("state").get<std::string>()), j.at("vth").get<double>()};
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

int hex_value(char ch) {
  if (ch >= '0' && ch <= '9') return ch - '0';
  const char lower = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  if (lower >= 'a' && lower <= 'f') return lower - 'a' + 10;
  return -1;
}

// Shortest round-trip representation.
std::string num(double v) { return fmt::format("{}", v); }

}  // namespace

json dump_array(const MemoryArray& array) {
  json cells = json::array();
  for (std::size_t r = 0; r < array.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < array.cols(); ++c) {
      const Cell& cl = array.cell(r, c);
      row.push_back(json{{"top", device_json(cl.top)}, {"bottom", device_json(cl.bottom)}});
    }
    cells.push_back(std::move(row));
  }
  return json{{"schema_version", kSchemaVersion}, {"config", array.config()}, {"cells", std::move(cells)}};
}

MemoryArray load_array(const json& doc) {
  try {
    if (doc.value("schema_version", 0) != kSchemaVersion) throw ConfigError("array dump: unsupported schema_version");
    MemoryArray array(doc.at("config").get<ArrayConfig>());
    const json& cells = doc.at("cells");
    if (cells.size() != array.rows()) throw ConfigError("array dump: row count does not match config");
    for (std::size_t r = 0; r < array.rows(); ++r) {
      if (cells[r].size() != array.cols()) throw ConfigError("array dump: column count does not match config");
      for (std::size_t c = 0; c < array.cols(); ++c) {
        Cell& cl = array.cell_mut(r, c);
        cl.top = device_from(cells[r][c].at("top"));
        cl.bottom = device_from(cells[r][c].at("bottom"));
      }
    }
    return array;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("array dump: ") + e.what());
  }
}

json vth_map(const MemoryArray& array) {
  json map = json::array();
  for (std::size_t r = 0; r < array.rows(); ++r) {
    json top = json::array();
    json bottom = json::array();
    for (std::size_t c = 0; c < array.cols(); ++c) {
      top.push_back(array.cell(r, c).top.vth_effective);
      bottom.push_back(array.cell(r, c).bottom.vth_effective);
    }
    map.push_back(std::move(top));
    map.push_back(std::move(bottom));
  }
  return map;
}

KeyStore parse_key_file(const std::string& text, const KeyShape& shape) {
  std::istringstream in(text);
  std::string line;
  std::optional<KeyGranularity> granularity;
  std::vector<std::string> lines;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (!granularity) {
      const std::string prefix = "granularity:";
      if (line.rfind(prefix, 0) != 0) throw ConfigError("key file: first line must be 'granularity: <g>'");
      try {
        granularity = parse_granularity(trim(line.substr(prefix.size())));
      } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("key file: ") + e.what());
      }
      continue;
    }
    lines.push_back(line);
  }
  if (!granularity) throw ConfigError("key file: missing granularity header");

  const std::size_t expected_lines = *granularity == KeyGranularity::PerBit   ? shape.rows
                                     : *granularity == KeyGranularity::PerRow ? shape.rows
                                                                              : shape.num_blocks();
  if (lines.size() != expected_lines)
    throw ConfigError(fmt::format("key file: expected {} key lines, found {}", expected_lines, lines.size()));

  Bits bits;
  if (*granularity == KeyGranularity::PerBit) {
    const std::size_t digits = (shape.cols + 3) / 4;
    bits.reserve(shape.rows * shape.cols);
    for (std::size_t r = 0; r < lines.size(); ++r) {
      if (lines[r].size() != digits)
        throw ConfigError(fmt::format("key file: line {} needs {} hex digits", r + 1, digits));
      for (std::size_t c = 0; c < digits * 4; ++c) {
        const int v = hex_value(lines[r][c / 4]);
        if (v < 0) throw ConfigError(fmt::format("key file: bad hex digit on line {}", r + 1));
        const std::uint8_t bit = (v >> (3 - c % 4)) & 1;
        if (c < shape.cols)
          bits.push_back(bit);
        else if (bit)
          throw ConfigError(fmt::format("key file: nonzero pad bit on line {}", r + 1));
      }
    }
  } else {
    for (std::size_t i = 0; i < lines.size(); ++i) {
      if (lines[i] != "0" && lines[i] != "1")
        throw ConfigError(fmt::format("key file: line {} must be 0 or 1", i + 1));
      bits.push_back(lines[i] == "1" ? 1 : 0);
    }
  }
  return KeyStore(*granularity, shape, std::move(bits));
}

KeyStore load_key_file(const std::filesystem::path& path, const KeyShape& shape) {
  return parse_key_file(read_text_file(path), shape);
}

std::string format_key_file(const KeyStore& keys) {
  std::string out = fmt::format("granularity: {}\n", to_string(keys.granularity()));
  const KeyShape& shape = keys.shape();
  if (keys.granularity() != KeyGranularity::PerBit) {
    for (auto b : keys.bits()) out += b ? "1\n" : "0\n";
    return out;
  }
  static constexpr char kHex[] = "0123456789ABCDEF";
  const std::size_t digits = (shape.cols + 3) / 4;
  for (std::size_t r = 0; r < shape.rows; ++r) {
    for (std::size_t d = 0; d < digits; ++d) {
      int v = 0;
      for (std::size_t k = 0; k < 4; ++k) {
        const std::size_t c = d * 4 + k;
        v = (v << 1) | (c < shape.cols ? keys.bits()[r * shape.cols + c] : 0);
      }
      out += kHex[v];
    }
    out += '\n';
  }
  return out;
}

BitMatrix parse_bit_matrix(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<Bits> rows;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    Bits row;
    for (char ch : line) {
      if (ch == '0' || ch == '1')
        row.push_back(ch == '1' ? 1 : 0);
      else if (!(ch == ' ' || ch == '\t' || ch == ',' || ch == '\r'))
        throw ConfigError(fmt::format("bit matrix: unexpected character '{}'", ch));
    }
    if (!row.empty()) rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ConfigError("bit matrix: no data rows");
  const std::size_t cols = rows.front().size();
  Bits data;
  for (const auto& r : rows) {
    if (r.size() != cols) throw ConfigError("bit matrix: rows have different lengths");
    data.insert(data.end(), r.begin(), r.end());
  }
  return BitMatrix(rows.size(), cols, std::move(data));
}

BitMatrix load_bit_matrix(const std::filesystem::path& path) { return parse_bit_matrix(read_text_file(path)); }

json bits_to_json(const BitMatrix& m) {
  json out = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(static_cast<int>(m(r, c)));
    out.push_back(std::move(row));
  }
  return out;
}

json to_json(const AttackReport& r) {
  return json{{"schema_version", kSchemaVersion},
              {"scenario", r.scenario},
              {"trials", r.trials},
              {"accuracy_mean", r.accuracy_mean},
              {"accuracy_std", r.accuracy_std},
              {"per_trial", r.per_trial},
              {"key_agreement", r.key_agreement}};
}

std::string to_csv(const AttackReport& r) {
  std::string out = "trial,accuracy,key_agreement\n";
  for (std::size_t i = 0; i < r.per_trial.size(); ++i)
    out += fmt::format("{},{},{}\n", i, num(r.per_trial[i]), num(r.key_agreement[i]));
  return out;
}

namespace {

json scheme_json(const SchemeFigures& f) {
  json j{{"enc_latency_cycles", f.enc_latency_cycles},
         {"dec_latency_cycles", f.dec_latency_cycles},
         {"enc_throughput_mbps", f.enc_throughput_mbps},
         {"dec_throughput_mbps", f.dec_throughput_mbps},
         {"power_mw", f.power_mw},
         {"area_mm2", f.area_mm2}};
  if (f.overhead_negligible) j["note"] = "power and area negligible (XOR logic only)";
  return j;
}

}  // namespace

json to_json(const ComparisonReport& r) {
  return json{{"schema_version", kSchemaVersion},
              {"schemes", {{r.ours.name, scheme_json(r.ours)}, {r.baseline.name, scheme_json(r.baseline)}}},
              {"dec_latency_single_phase_cycles", r.dec_latency_single_phase_cycles},
              {"ratios", {{"enc_speedup", r.enc_speedup}, {"dec_speedup", r.dec_speedup}}}};
}

std::string to_csv(const ComparisonReport& r) {
  std::string out = fmt::format("metric,{},{}\n", r.ours.name, r.baseline.name);
  auto row = [&out](const char* metric, double a, double b) { out += fmt::format("{},{},{}\n", metric, num(a), num(b)); };
  row("enc_latency_cycles", r.ours.enc_latency_cycles, r.baseline.enc_latency_cycles);
  row("dec_latency_cycles", r.ours.dec_latency_cycles, r.baseline.dec_latency_cycles);
  row("enc_throughput_mbps", r.ours.enc_throughput_mbps, r.baseline.enc_throughput_mbps);
  row("dec_throughput_mbps", r.ours.dec_throughput_mbps, r.baseline.dec_throughput_mbps);
  row("power_mw", r.ours.power_mw, r.baseline.power_mw);
  row("area_mm2", r.ours.area_mm2, r.baseline.area_mm2);
  row("enc_speedup", r.enc_speedup, 1.0);
  row("dec_speedup", r.dec_speedup, 1.0);
  out += fmt::format("dec_latency_single_phase_cycles,{},\n", num(r.dec_latency_single_phase_cycles));
  return out;
}

json to_json(const ReductionReport& r, TrafficMode mode) {
  json rows = json::array();
  for (const auto& w : r.workloads)
    rows.push_back(json{{"workload", w.name},
                        {"aes_cycles", w.aes_cycles},
                        {"insitu_cycles", w.insitu_cycles},
                        {"reduction", w.reduction}});
  return json{{"schema_version", kSchemaVersion},
              {"traffic", to_string(mode)},
              {"workloads", std::move(rows)},
              {"average_reduction", r.average_reduction}};
}

std::string to_csv(const ReductionReport& r) {
  std::string out = "workload,aes_cycles,insitu_cycles,reduction\n";
  for (const auto& w : r.workloads)
    out += fmt::format("{},{},{},{}\n", w.name, num(w.aes_cycles), num(w.insitu_cycles), num(w.reduction));
  return out;
}

json to_json(const std::vector<BerPoint>& sweep) {
  json rows = json::array();
  for (const auto& p : sweep)
    rows.push_back(json{{"sigma", p.sigma}, {"cells", p.cells}, {"errors", p.errors}, {"ber", p.ber()}});
  return json{{"schema_version", kSchemaVersion}, {"sweep", std::move(rows)}};
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write " + tmp.string());
    out << contents;
    if (!out.flush()) throw ConfigError("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw ConfigError("cannot rename to " + path.string() + ": " + ec.message());
  }
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace fenc
