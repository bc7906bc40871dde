#include "cli.hpp"

#include <cctype>
#include <cmath>
#include <filesystem>
#include <optional>
#include <stdexcept>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "fenc/cipher.hpp"
#include "fenc/config.hpp"
#include "fenc/io.hpp"
#include "fenc/perfmodel.hpp"
#include "fenc/threat.hpp"
#include "fenc/variability.hpp"
#include "fenc/workloads.hpp"

namespace fenc::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::optional<fs::path> config_path;
  std::optional<std::uint64_t> seed;
  std::optional<fs::path> out_dir;
  std::string format = "json";
};

struct Output {
  std::string json_text;
  std::string csv_text;
};

void emit(const Globals& g, const std::string& stem, const Output& o, std::ostream& out) {
  const std::string& body = g.format == "csv" ? o.csv_text : o.json_text;
  if (!g.out_dir) {
    out << body;
    return;
  }
  fs::create_directories(*g.out_dir);
  const fs::path path = *g.out_dir / (stem + "." + g.format);
  write_file_atomic(path, body);
  out << "wrote " << path.string() << "\n";
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

struct RoundtripOpts {
  std::optional<fs::path> pt_file;
  std::string pattern = "checkerboard";
  std::optional<fs::path> key_file;
  bool random_keys = false;
  std::size_t rows = 4;
  std::size_t cols = 7;
  std::optional<std::string> topology;
  std::string granularity = "per-bit";
  std::string attack = "none";
  std::optional<fs::path> dump_path;
};

int cmd_roundtrip(const Globals& g, const GlobalConfig& cfg, const RoundtripOpts& o, std::ostream& out) {
  if (o.pt_file && o.pt_file->empty()) throw UsageError("--pt requires a path");
  if (o.key_file && o.random_keys) throw UsageError("--keys and --random-keys are mutually exclusive");

  BitMatrix pt;
  if (o.pt_file) {
    try {
      pt = load_bit_matrix(*o.pt_file);
    } catch (const ConfigError& e) {
      throw UsageError(std::string("plaintext: ") + e.what());
    }
  } else if (o.pattern == "checkerboard") {
    pt = BitMatrix::checkerboard(o.rows, o.cols);
  } else if (o.pattern == "uniform") {
    Rng rng = trial_rng(cfg.seed, 0);
    pt = BitMatrix(o.rows, o.cols);
    std::bernoulli_distribution coin(0.5);
    for (std::size_t r = 0; r < pt.rows(); ++r)
      for (std::size_t c = 0; c < pt.cols(); ++c) pt(r, c) = coin(rng) ? 1 : 0;
  } else {
    throw UsageError("unknown --pattern '" + o.pattern + "'");
  }

  ArrayConfig acfg = cfg.array;
  acfg.rows = pt.rows();
  acfg.cols = pt.cols();
  acfg.block_rows = pt.rows();
  if (o.topology) acfg.topology = parse_topology(*o.topology);
  const KeyShape shape = KeyShape::of(acfg);

  Rng rng = trial_rng(cfg.seed, 1);
  const KeyStore keys = o.key_file ? load_key_file(*o.key_file, shape)
                                   : KeyStore::random(parse_granularity(o.granularity), shape, rng);

  MemoryArray array(acfg);
  const WriteReport wr = encrypt_write(array, 0, pt, keys, rng, cfg.perf.enc_cycles_per_word);
  const ReadReport rd = decrypt_read(array, 0, array.rows(), keys);
  const double acc = accuracy(rd.bits, pt);
  const BitMatrix key_map = keys.expand();
  const BitMatrix ct(pt.rows(), pt.cols(), xor_block(pt.data(), key_map.data()));

  json report{{"schema_version", kSchemaVersion},
              {"command", "roundtrip"},
              {"topology", to_string(acfg.topology)},
              {"granularity", to_string(keys.granularity())},
              {"seed", cfg.seed},
              {"pt", bits_to_json(pt)},
              {"keys", bits_to_json(key_map)},
              {"ct", bits_to_json(ct)},
              {"vth_map", vth_map(array)},
              {"recovered", bits_to_json(rd.bits)},
              {"accuracy", acc},
              {"write", {{"cycles", wr.cycles}, {"erase_steps", wr.erase_steps}, {"program_steps", wr.program_steps}}},
              {"read_cycles", rd.cycles}};

  bool ok = acc == 1.0;
  std::string csv = fmt::format("metric,value\naccuracy,{}\nread_cycles,{}\nwrite_cycles,{}\n", acc, rd.cycles, wr.cycles);

  if (o.attack != "none") {
    const ScenarioKind kind = parse_scenario(o.attack);
    KeyStore guess = keys;
    if (kind == ScenarioKind::AllZeroKeys) {
      guess = KeyStore::zeros(keys.granularity(), shape);
    } else if (kind == ScenarioKind::RandomKeys) {
      Rng guess_rng = trial_rng(cfg.seed, 2);
      guess = KeyStore::random(keys.granularity(), shape, guess_rng);
    }
    const BitMatrix seen = attack_readout(array, guess);
    const double attack_acc = accuracy(seen, pt);
    const double expected = accuracy(guess.expand(), key_map);
    report["attack"] = json{{"scenario", to_string(kind)},
                            {"keys", bits_to_json(guess.expand())},
                            {"recovered", bits_to_json(seen)},
                            {"accuracy", attack_acc},
                            {"expected_accuracy", expected}};
    csv += fmt::format("attack_accuracy,{}\nattack_expected_accuracy,{}\n", attack_acc, expected);
    ok = ok && attack_acc == expected;
  }
  if (o.dump_path) write_file_atomic(*o.dump_path, dump(dump_array(array)));

  emit(g, "roundtrip", {dump(report), csv}, out);
  return ok ? kOk : kFailure;
}

struct AttackOpts {
  std::string scenario = "random";
  std::size_t trials = 1000;
  std::string pt_pattern = "uniform";
  std::size_t rows = 1;
  std::size_t cols = 128;
  std::string granularity = "per-bit";
  std::optional<std::string> topology;
};

int cmd_attack(const Globals& g, const GlobalConfig& cfg, const AttackOpts& o, std::ostream& out) {
  if (o.trials < 1) throw UsageError("--trials must be >= 1");
  TrialConfig tc;
  tc.array = cfg.array;
  tc.array.rows = o.rows;
  tc.array.cols = o.cols;
  tc.array.block_rows = o.rows;
  if (o.topology) tc.array.topology = parse_topology(*o.topology);
  tc.granularity = parse_granularity(o.granularity);
  tc.pattern = parse_pt_pattern(o.pt_pattern);

  const ScenarioKind kind = parse_scenario(o.scenario);
  const AttackScenario scenario{kind, cfg.seed + 1};
  const AttackReport r = run_trials(tc, scenario, o.trials, cfg.seed);

  bool ok = true;
  for (std::size_t i = 0; i < r.trials; ++i) ok = ok && r.per_trial[i] == r.key_agreement[i];
  if (kind == ScenarioKind::CorrectKeys) ok = ok && r.accuracy_mean == 1.0;

  emit(g, "attack", {dump(to_json(r)), to_csv(r)}, out);
  return ok ? kOk : kFailure;
}

struct PerfOpts {
  std::optional<std::size_t> sa;
  std::optional<std::string> freq;
  std::optional<std::size_t> word_bits;
  std::optional<std::string> granularity;
  std::optional<std::size_t> enc_cycles;
};

int cmd_perf(const Globals& g, const GlobalConfig& cfg, const PerfOpts& o, std::ostream& out) {
  PerfConfig pc = cfg.perf;
  if (o.sa) pc.num_sense_amps = *o.sa;
  if (o.freq) pc.freq_hz = parse_frequency(*o.freq);
  if (o.word_bits) pc.word_bits = *o.word_bits;
  if (o.granularity) pc.key_granularity = parse_granularity(*o.granularity);
  if (o.enc_cycles) pc.enc_cycles_per_word = *o.enc_cycles;
  const ComparisonReport r = compare(pc, cfg.baseline);
  emit(g, "perf", {dump(to_json(r)), to_csv(r)}, out);
  return kOk;
}

struct WorkloadOpts {
  fs::path dir = "workloads";
  std::optional<std::string> traffic;
};

int cmd_workloads(const Globals& g, const GlobalConfig& cfg, const WorkloadOpts& o, std::ostream& out) {
  if (!fs::is_directory(o.dir)) throw UsageError("workload directory not found: " + o.dir.string());
  const std::vector<WorkloadSpec> specs = load_workload_dir(o.dir);
  if (specs.empty()) throw UsageError("no workload descriptors (*.json) in " + o.dir.string());
  const TrafficMode mode = o.traffic ? parse_traffic_mode(*o.traffic) : cfg.traffic;
  const ReductionReport r = reduction_report(specs, cfg.perf, cfg.baseline, mode);
  emit(g, "workloads", {dump(to_json(r, mode)), to_csv(r)}, out);
  return kOk;
}

struct BerOpts {
  std::vector<double> sigmas{0.0, 0.05, 0.1, 0.2, 0.4};
  std::size_t cells = 10000;
  std::string granularity = "per-bit";
  std::optional<std::string> topology;
};

int cmd_ber(const Globals& g, const GlobalConfig& cfg, const BerOpts& o, std::ostream& out) {
  ArrayConfig base = cfg.array;
  if (o.topology) base.topology = parse_topology(*o.topology);
  const auto sweep = sweep_ber(base, parse_granularity(o.granularity), o.sigmas, o.cells, cfg.seed);
  std::string csv = "sigma,cells,errors,ber\n";
  for (const auto& p : sweep) csv += fmt::format("{},{},{},{}\n", p.sigma, p.cells, p.errors, p.ber());
  emit(g, "ber", {dump(to_json(sweep)), csv}, out);
  return kOk;
}

}  // namespace

double parse_frequency(const std::string& text) {
  std::size_t pos = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad frequency '" + text + "'");
  }
  std::string unit;
  for (char ch : text.substr(pos))
    if (!std::isspace(static_cast<unsigned char>(ch))) unit += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  double scale = 1.0;
  if (unit.empty() || unit == "hz") scale = 1.0;
  else if (unit == "khz") scale = 1e3;
  else if (unit == "mhz") scale = 1e6;
  else if (unit == "ghz") scale = 1e9;
  else throw std::invalid_argument("bad frequency unit in '" + text + "'");
  if (!(value > 0.0) || !std::isfinite(value)) throw std::invalid_argument("frequency must be positive");
  return value * scale;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"In-situ XOR encryption simulator for FeFET memory arrays", "fenc"};
  app.require_subcommand(1);

  Globals g;
  app.add_option("--config", g.config_path, "JSON config file (fallback: $FENC_CONFIG)");
  app.add_option("--seed", g.seed, "Master random seed (overrides config)");
  app.add_option("--out", g.out_dir, "Write reports into this directory instead of stdout");
  app.add_option("--format", g.format, "Report format")->check(CLI::IsMember({"json", "csv"}));

  RoundtripOpts rt;
  auto* roundtrip = app.add_subcommand("roundtrip", "Encrypt a plaintext into an array and read it back");
  auto* pt_opt = roundtrip->add_option("--pt", rt.pt_file, "Plaintext bit-matrix file");
  roundtrip->add_option("--pattern", rt.pattern, "Generated plaintext when --pt is absent")
      ->check(CLI::IsMember({"checkerboard", "uniform"}))
      ->excludes(pt_opt);
  auto* keys_opt = roundtrip->add_option("--keys", rt.key_file, "Key file");
  roundtrip->add_flag("--random-keys", rt.random_keys, "Draw random keys from the seed (default)")->excludes(keys_opt);
  roundtrip->add_option("--rows", rt.rows, "Cell rows of the generated plaintext");
  roundtrip->add_option("--cols", rt.cols, "Columns of the generated plaintext");
  roundtrip->add_option("--topology", rt.topology, "AND, NAND or NOR");
  roundtrip->add_option("--granularity", rt.granularity, "Key granularity for random keys");
  roundtrip->add_option("--attack", rt.attack, "Also read back with guessed keys")
      ->check(CLI::IsMember({"none", "all-zero", "random", "correct"}));
  roundtrip->add_option("--dump", rt.dump_path, "Write the final array state as JSON");

  AttackOpts at;
  auto* attack = app.add_subcommand("attack", "Stolen-array readout statistics under guessed keys");
  attack->add_option("--scenario", at.scenario)->check(CLI::IsMember({"correct", "all-zero", "random"}));
  attack->add_option("--trials", at.trials);
  attack->add_option("--pt-pattern", at.pt_pattern)->check(CLI::IsMember({"uniform", "checkerboard"}));
  attack->add_option("--rows", at.rows);
  attack->add_option("--cols", at.cols);
  attack->add_option("--granularity", at.granularity);
  attack->add_option("--topology", at.topology);

  PerfOpts pf;
  auto* perf = app.add_subcommand("perf", "Latency/throughput comparison against the AES baseline");
  perf->add_option("--sa", pf.sa, "Number of sense amplifiers");
  perf->add_option("--freq", pf.freq, "Clock frequency, e.g. 25MHz");
  perf->add_option("--word-bits", pf.word_bits);
  perf->add_option("--granularity", pf.granularity);
  perf->add_option("--enc-cycles", pf.enc_cycles, "Encryption cycles per word");

  WorkloadOpts wl;
  auto* workloads = app.add_subcommand("workloads", "Latency reduction over neural-network workloads");
  workloads->add_option("--dir", wl.dir, "Directory of workload descriptors");
  workloads->add_option("--traffic", wl.traffic)->check(CLI::IsMember({"all-layers", "final-layer"}));

  BerOpts bo;
  auto* ber = app.add_subcommand("ber", "Decryption bit error rate versus V_TH variability");
  ber->add_option("--sigmas", bo.sigmas, "V_TH sigma values in volts");
  ber->add_option("--cells", bo.cells);
  ber->add_option("--granularity", bo.granularity);
  ber->add_option("--topology", bo.topology);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  }

  try {
    GlobalConfig cfg = resolve_config(g.config_path);
    if (g.seed) cfg.seed = *g.seed;
    if (roundtrip->parsed()) return cmd_roundtrip(g, cfg, rt, out);
    if (attack->parsed()) return cmd_attack(g, cfg, at, out);
    if (perf->parsed()) return cmd_perf(g, cfg, pf, out);
    if (workloads->parsed()) return cmd_workloads(g, cfg, wl, out);
    if (ber->parsed()) return cmd_ber(g, cfg, bo, out);
  } catch (const UsageError& e) {
    err << "fenc: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "fenc: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "fenc: " << e.what() << "\n";
    return kFailure;
  }
  return kUsage;
}

}  // namespace fenc::cli
