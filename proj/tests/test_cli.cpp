#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "fenc/io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = fenc::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  explicit TempDir(const char* name) : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

const std::string kWorkloads = (fs::path(FENC_SOURCE_DIR) / "workloads").string();

}  // namespace

TEST_CASE("roundtrip on the 4x7 checkerboard with random keys") {
  const Run r = run({"--seed", "3", "roundtrip"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["accuracy"] == 1.0);
  CHECK(j["pt"].size() == 4);
  CHECK(j["pt"][0].size() == 7);
  CHECK(j["vth_map"].size() == 8);
  CHECK(j["recovered"] == j["pt"]);
  CHECK(j["read_cycles"] == 4 * 2);  // 7 columns, 16 SAs, two phases per row
  for (std::size_t r2 = 0; r2 < 4; ++r2)
    for (std::size_t c = 0; c < 7; ++c)
      CHECK(j["ct"][r2][c].get<int>() == (j["pt"][r2][c].get<int>() ^ j["keys"][r2][c].get<int>()));
}

TEST_CASE("roundtrip with an all-zero attacker recovers the zero-key fraction") {
  const Run r = run({"--seed", "8", "roundtrip", "--attack", "all-zero"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  int zeros = 0;
  for (const auto& row : j["keys"])
    for (const auto& k : row) zeros += k.get<int>() == 0;
  CHECK(j["attack"]["accuracy"].get<double>() == doctest::Approx(zeros / 28.0));
  CHECK(j["attack"]["recovered"] == j["ct"]);
}

TEST_CASE("roundtrip from files, every topology") {
  TempDir dir("fenc_cli_files");
  std::ofstream(dir.path / "pt.txt") << "1100\n0110\n";
  std::ofstream(dir.path / "keys.txt") << "granularity: per-bit\nF\n3\n";
  std::ofstream(dir.path / "empty.txt") << "";
  for (const char* topo : {"AND", "NAND", "NOR"}) {
    const Run r = run({"roundtrip", "--pt", (dir.path / "pt.txt").string(), "--keys", (dir.path / "keys.txt").string(),
                       "--topology", topo, "--dump", (dir.path / "array.json").string()});
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["ct"] == json::parse("[[0,0,1,1],[0,1,0,1]]"));
    CHECK(j["topology"] == topo);
    const fenc::MemoryArray a = fenc::load_array(json::parse(fenc::read_text_file(dir.path / "array.json")));
    CHECK(a.rows() == 2);
  }
  CHECK(run({"roundtrip", "--pt", (dir.path / "empty.txt").string()}).code == 2);
  CHECK(run({"roundtrip", "--pt", (dir.path / "pt.txt").string(), "--pattern", "uniform"}).code == 2);
  CHECK(run({"roundtrip", "--keys", (dir.path / "keys.txt").string(), "--random-keys"}).code == 2);
}

TEST_CASE("attack scenarios") {
  const json correct = json::parse(run({"attack", "--scenario", "correct", "--trials", "10"}).out);
  CHECK(correct["accuracy_mean"] == 1.0);
  for (const char* sc : {"random", "all-zero"}) {
    const Run r = run({"--seed", "5", "attack", "--scenario", sc, "--trials", "1000"});
    REQUIRE(r.code == 0);
    const double mean = json::parse(r.out)["accuracy_mean"].get<double>();
    CHECK(mean == doctest::Approx(0.5).epsilon(0.04));
  }
  const Run csv = run({"--format", "csv", "attack", "--trials", "3"});
  CHECK(csv.out.rfind("trial,accuracy,key_agreement\n0,", 0) == 0);
}

TEST_CASE("perf matches the golden table and scales with the options") {
  CHECK(run({"perf"}).out == fenc::read_text_file(fs::path(FENC_GOLDEN_DIR) / "perf_default.json"));
  CHECK(run({"--format", "csv", "perf"}).out == fenc::read_text_file(fs::path(FENC_GOLDEN_DIR) / "perf_default.csv"));

  const json wide = json::parse(run({"perf", "--sa", "128", "--granularity", "per-block"}).out);
  CHECK(wide["schemes"]["in_situ"]["dec_latency_cycles"] == 1.0);
  CHECK(wide["dec_latency_single_phase_cycles"] == 1.0);

  const json fast = json::parse(run({"perf", "--freq", "50MHz"}).out);
  CHECK(fast["schemes"]["in_situ"]["enc_throughput_mbps"] == 1280.0);
  CHECK(fast["schemes"]["in_situ"]["dec_throughput_mbps"] == 800.0);
  CHECK(fast["schemes"]["aes_baseline"]["enc_throughput_mbps"] == 28.32);

  CHECK(run({"perf", "--freq", "fast"}).code == 2);
}

TEST_CASE("workloads") {
  const Run r = run({"workloads", "--dir", kWorkloads});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["workloads"].size() == 6);
  CHECK(j["average_reduction"].get<double>() == doctest::Approx(0.90).epsilon(0.034));
  CHECK(run({"--format", "csv", "workloads", "--dir", kWorkloads}).out ==
        fenc::read_text_file(fs::path(FENC_GOLDEN_DIR) / "workloads_default.csv"));

  TempDir dir("fenc_cli_workloads");
  CHECK(run({"workloads", "--dir", dir.path.string()}).code == 2);
  std::ofstream(dir.path / "balanced.json") << R"({"name": "balanced", "layers": [{"weight_bits": 128, "output_bits": 128}]})";
  const json one = json::parse(run({"workloads", "--dir", dir.path.string()}).out);
  CHECK(one["average_reduction"].get<double>() == doctest::Approx(0.910).epsilon(1e-3));
  CHECK(run({"workloads", "--dir", (dir.path / "nope").string()}).code == 2);
}

TEST_CASE("outputs are deterministic and written atomically") {
  TempDir dir("fenc_cli_out");
  const std::vector<std::string> args{"--seed", "17", "--out", dir.path.string(), "attack", "--trials", "20"};
  REQUIRE(run(args).code == 0);
  const std::string first = fenc::read_text_file(dir.path / "attack.json");
  REQUIRE(run(args).code == 0);
  CHECK(fenc::read_text_file(dir.path / "attack.json") == first);
  CHECK_FALSE(fs::exists(dir.path / "attack.json.tmp"));
  CHECK(run({"--seed", "17", "roundtrip"}).out == run({"--seed", "17", "roundtrip"}).out);
  CHECK(run({"--seed", "17", "roundtrip"}).out != run({"--seed", "18", "roundtrip"}).out);
}

TEST_CASE("config file and usage errors") {
  TempDir dir("fenc_cli_config");
  std::ofstream(dir.path / "cfg.json") << R"({"perf": {"num_sense_amps": 32}})";
  const json j = json::parse(run({"--config", (dir.path / "cfg.json").string(), "perf"}).out);
  CHECK(j["schemes"]["in_situ"]["dec_latency_cycles"] == 8.0);
  CHECK(run({"--config", (dir.path / "missing.json").string(), "perf"}).code == 1);
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"--format", "xml", "perf"}).code == 2);
}

TEST_CASE("ber sweep") {
  const json j = json::parse(run({"ber", "--sigmas", "0", "0.2", "--cells", "2000"}).out);
  CHECK(j["sweep"][0]["errors"] == 0);
  CHECK(j["sweep"][1]["errors"].get<int>() > 0);
}

TEST_CASE("frequency parsing") {
  CHECK(fenc::cli::parse_frequency("25MHz") == 25e6);
  CHECK(fenc::cli::parse_frequency("50 mhz") == 50e6);
  CHECK(fenc::cli::parse_frequency("2.5e7") == 25e6);
  CHECK(fenc::cli::parse_frequency("1GHz") == 1e9);
  CHECK_THROWS_AS(fenc::cli::parse_frequency("-5MHz"), std::invalid_argument);
  CHECK_THROWS_AS(fenc::cli::parse_frequency("5 furlongs"), std::invalid_argument);
}
