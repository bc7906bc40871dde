// Acceptance suite: one PASS/FAIL line per criterion. Exit status is nonzero
// if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "fenc/array.hpp"
#include "fenc/cipher.hpp"
#include "fenc/io.hpp"
#include "fenc/perfmodel.hpp"
#include "fenc/threat.hpp"
#include "fenc/variability.hpp"
#include "fenc/workloads.hpp"
#include "oracle.hpp"

using namespace fenc;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && pass) detail = "failed: " + what;
    pass = pass && cond;
  }
};

constexpr Topology kTopologies[] = {Topology::AND, Topology::NAND, Topology::NOR};
constexpr KeyGranularity kGranularities[] = {KeyGranularity::PerBit, KeyGranularity::PerRow, KeyGranularity::PerBlock};

BitMatrix random_bits(std::size_t rows, std::size_t cols, Rng& rng) {
  BitMatrix m(rows, cols);
  std::bernoulli_distribution coin(0.5);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = coin(rng) ? 1 : 0;
  return m;
}

void encrypt_all(MemoryArray& a, const BitMatrix& pt, const KeyStore& keys, Rng& rng) {
  const std::size_t br = a.config().block_rows;
  for (std::size_t start = 0; start < pt.rows(); start += br) {
    const std::size_t n = std::min(br, pt.rows() - start);
    BitMatrix part(n, pt.cols());
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < pt.cols(); ++c) part(r, c) = pt(start + r, c);
    encrypt_write(a, start, part, keys, rng);
  }
}

bool complementary(const MemoryArray& a, std::size_t first, std::size_t count) {
  for (std::size_t r = first; r < first + count; ++r)
    for (std::size_t c = 0; c < a.cols(); ++c)
      if ((a.cell(r, c).top.state == VthState::LVT) == (a.cell(r, c).bottom.state == VthState::LVT)) return false;
  return true;
}

double sig3(double v) {
  const double scale = std::pow(10.0, 2 - std::floor(std::log10(std::abs(v))));
  return std::round(v * scale) / scale;
}

// 1. Round trip: exhaustive on 2x2, 10,000 random 16x16 cases, under 10 s.
Outcome roundtrip() {
  Outcome o;
  Rng rng(1001);
  std::size_t exhaustive = 0;
  for (Topology t : kTopologies)
    for (KeyGranularity g : kGranularities)
      for (std::size_t block_rows : {1u, 2u}) {
        ArrayConfig cfg = ArrayConfig::make(2, 2, t);
        cfg.block_rows = block_rows;
        const KeyShape shape = KeyShape::of(cfg);
        const std::size_t nk = KeyStore::bits_needed(g, shape);
        for (unsigned p = 0; p < 16; ++p)
          for (unsigned k = 0; k < (1u << nk); ++k) {
            BitMatrix pt(2, 2);
            for (std::size_t i = 0; i < 4; ++i) pt(i / 2, i % 2) = (p >> i) & 1u;
            Bits kb(nk);
            for (std::size_t i = 0; i < nk; ++i) kb[i] = (k >> i) & 1u;
            const KeyStore keys(g, shape, kb);
            MemoryArray a(cfg);
            encrypt_all(a, pt, keys, rng);
            o.require(decrypt_read(a, 0, 2, keys).bits == pt, "exhaustive 2x2 case");
            ++exhaustive;
          }
      }
  for (int i = 0; i < 10000; ++i) {
    ArrayConfig cfg = ArrayConfig::make(16, 16, kTopologies[i % 3]);
    cfg.block_rows = (i / 3) % 2 ? 4 : 16;
    const KeyGranularity g = kGranularities[(i / 6) % 3];
    const BitMatrix pt = random_bits(16, 16, rng);
    const KeyStore keys = KeyStore::random(g, KeyShape::of(cfg), rng);
    MemoryArray a(cfg);
    encrypt_all(a, pt, keys, rng);
    o.require(decrypt_read(a, 0, 16, keys).bits == pt, "random 16x16 case " + std::to_string(i));
  }
  if (o.pass) o.detail = std::to_string(exhaustive) + " exhaustive + 10000 random cases, 0 errors";
  return o;
}

// 2. Readout algebra against the bit-wise oracle, plus the single-instance figures.
Outcome readout_algebra() {
  Outcome o;
  Rng rng(2002);
  std::uniform_int_distribution<std::size_t> dim(1, 12);
  for (int i = 0; i < 1000; ++i) {
    ArrayConfig cfg = ArrayConfig::make(dim(rng), dim(rng), kTopologies[i % 3]);
    const KeyShape shape = KeyShape::of(cfg);
    const BitMatrix pt = random_bits(cfg.rows, cfg.cols, rng);
    const KeyStore key = KeyStore::random(KeyGranularity::PerBit, shape, rng);
    const KeyStore guess = KeyStore::random(KeyGranularity::PerBit, shape, rng);
    MemoryArray a(cfg);
    encrypt_write(a, 0, pt, key, rng);
    o.require(attack_readout(a, guess).data() == oracle::readout(pt.data(), key.bits(), guess.bits()),
              "instance " + std::to_string(i));
  }

  const auto model = oracle::fair_fraction(28);
  const double observed = 9.0 / 28.0;
  o.require(std::abs(observed - model.mean) <= 3 * model.sd, "9/28 inside Binomial(28, 1/2) 3-sigma band");

  // All-zero guess on 4x7 checkerboards whose true keys are half zeros.
  const KeyShape shape{4, 7, 4};
  for (int i = 0; i < 200; ++i) {
    Bits k(28, 0);
    std::fill(k.begin(), k.begin() + 14, 1);
    std::shuffle(k.begin(), k.end(), rng);
    const KeyStore keys(KeyGranularity::PerBit, shape, k);
    MemoryArray a(ArrayConfig::make(4, 7, Topology::AND));
    const BitMatrix pt = BitMatrix::checkerboard(4, 7);
    encrypt_write(a, 0, pt, keys, rng);
    o.require(accuracy(attack_readout(a, KeyStore::zeros(KeyGranularity::PerBit, shape)), pt) == 0.5,
              "all-zero guess with 14/28 zero keys");
  }
  if (o.pass)
    o.detail = "1000/1000 oracle matches; 9/28 = " + std::to_string(observed).substr(0, 6) + " within [" +
               std::to_string(model.mean - 3 * model.sd).substr(0, 6) + ", " +
               std::to_string(model.mean + 3 * model.sd).substr(0, 6) + "]; all-zero guess = 0.5 on 200 instances";
  return o;
}

// 3. Attack statistics on 128-bit blocks.
Outcome attack_statistics() {
  Outcome o;
  TrialConfig cfg;  // 1 x 128 AND array, per-bit keys, uniform PT
  const AttackReport correct = run_trials(cfg, AttackScenario::correct(), 1000, 3003);
  o.require(correct.accuracy_mean == 1.0, "correct keys mean == 1.0");
  for (double a : correct.per_trial) o.require(a == 1.0, "correct keys per-trial == 1.0");
  const AttackReport zero = run_trials(cfg, AttackScenario::all_zero(), 1000, 3004);
  const AttackReport rnd = run_trials(cfg, AttackScenario::random(77), 1000, 3005);
  o.require(std::abs(zero.accuracy_mean - 0.5) <= 0.02, "all-zero mean within 0.5 +- 0.02");
  o.require(std::abs(rnd.accuracy_mean - 0.5) <= 0.02, "random mean within 0.5 +- 0.02");
  if (o.pass)
    o.detail = "correct 1.0, all-zero " + std::to_string(zero.accuracy_mean) + ", random " +
               std::to_string(rnd.accuracy_mean);
  return o;
}

// 4. Performance table under defaults, 3 significant figures, golden-file checked.
Outcome performance_table() {
  Outcome o;
  const ComparisonReport r = compare(PerfConfig{}, BaselineCosts{});
  PerfConfig block;
  block.key_granularity = KeyGranularity::PerBlock;
  o.require(sig3(r.ours.enc_latency_cycles) == 5, "enc latency 5");
  o.require(sig3(r.ours.dec_latency_cycles) == 16, "dec latency 16 (per-bit)");
  o.require(dec_latency(block) == 8 && sig3(r.dec_latency_single_phase_cycles) == 8, "dec latency 8 (per-block)");
  o.require(sig3(r.ours.enc_throughput_mbps) == 640, "enc throughput 640");
  o.require(sig3(r.ours.dec_throughput_mbps) == 400, "dec throughput 400");
  o.require(sig3(r.enc_speedup) == 22.6, "enc speedup 22.6");
  o.require(sig3(r.dec_speedup) == 14.1, "dec speedup 14.1");
  const fs::path golden(FENC_GOLDEN_DIR);
  o.require(to_csv(r) == read_text_file(golden / "perf_default.csv"), "CSV golden file");
  o.require(to_json(r) == nlohmann::json::parse(read_text_file(golden / "perf_default.json")), "JSON golden file");
  if (o.pass) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "enc %g / dec %g (per-bit) %g (per-block) cycles, %g / %g Mbps, %.3g x / %.3g x",
                  r.ours.enc_latency_cycles, r.ours.dec_latency_cycles, r.dec_latency_single_phase_cycles,
                  r.ours.enc_throughput_mbps, r.ours.dec_throughput_mbps, r.enc_speedup, r.dec_speedup);
    o.detail = buf;
  }
  return o;
}

// 5. Workload study over the six shipped descriptors.
Outcome workload_study() {
  Outcome o;
  const auto specs = load_workload_dir(fs::path(FENC_SOURCE_DIR) / "workloads");
  o.require(specs.size() == 6, "six shipped descriptors");
  const ReductionReport r = reduction_report(specs, PerfConfig{}, BaselineCosts{});
  o.require(std::abs(r.average_reduction - 0.90) <= 0.03, "average reduction within 0.90 +- 0.03");
  std::string per;
  for (const auto& w : r.workloads) {
    o.require(w.reduction >= 0.863 && w.reduction <= 0.957, w.name + " inside [0.863, 0.957]");
    per += " " + w.name + "=" + std::to_string(w.reduction).substr(0, 5);
  }
  if (o.pass) o.detail = "average " + std::to_string(r.average_reduction).substr(0, 6) + ";" + per;
  return o;
}

// 6. Device and array properties.
Outcome device_array_properties() {
  Outcome o;
  Rng rng(6006);
  std::uniform_real_distribution<double> volts(-1.0, 3.0);
  DeviceParams hard;
  hard.vth_sigma = 0.1;
  DeviceParams soft = hard;
  soft.slope = Sigmoid{0.1};
  std::size_t devices = 0;
  for (const DeviceParams& p : {hard, soft})
    for (Pulse pulse : {Pulse::Positive, Pulse::Negative})
      for (int d = 0; d < 8; ++d, ++devices) {
        const FeFetDevice dev = program(FeFetDevice{}, pulse, p, rng);
        for (int i = 0; i < 1000; ++i) {
          double v1 = volts(rng), v2 = volts(rng);
          if (v1 > v2) std::swap(v1, v2);
          o.require(drain_current(dev, v1, p) <= drain_current(dev, v2, p), "drain current monotone");
        }
      }

  std::size_t writes = 0;
  std::uniform_int_distribution<std::size_t> dim(1, 10);
  for (int i = 0; i < 2000; ++i) {
    ArrayConfig cfg = ArrayConfig::make(dim(rng), dim(rng), kTopologies[i % 3]);
    cfg.block_rows = std::min(cfg.rows, dim(rng));
    const KeyStore keys = KeyStore::random(kGranularities[i % 3], KeyShape::of(cfg), rng);
    MemoryArray a(cfg);
    for (std::size_t start = 0; start < cfg.rows; start += cfg.block_rows) {
      const std::size_t n = std::min(cfg.block_rows, cfg.rows - start);
      encrypt_write(a, start, random_bits(n, cfg.cols, rng), keys, rng);
      o.require(complementary(a, start, n), "complementary cells after encrypt_write");
      ++writes;
    }
  }

  for (std::size_t cols = 1; cols <= 64; ++cols)
    for (std::size_t sa = 1; sa <= 64; ++sa)
      for (unsigned phases : {1u, 2u}) {
        ArrayConfig cfg = ArrayConfig::make(1, cols, Topology::AND);
        cfg.num_sense_amps = sa;
        const MemoryArray a(cfg);
        const std::vector<BiasPattern> biases(cols, BiasPattern{0.6, 0.0});
        o.require(a.sense_row(0, biases, phases).cycles == oracle::sense_cycles(cols, sa, phases), "sense cycles");
      }
  if (o.pass)
    o.detail = std::to_string(devices) + " devices x 1000 voltage pairs monotone; " + std::to_string(writes) +
               " writes complementary; 64x64x2 sense-cycle grid exact";
  return o;
}

// 7. Variability robustness.
Outcome variability() {
  Outcome o;
  const std::vector<double> sigmas{0.05, 0.1, 0.2, 0.4};
  std::string detail;
  for (Topology t : kTopologies) {
    const ArrayConfig base = ArrayConfig::make(1, 100, t);
    o.require(measure_ber(base, KeyGranularity::PerBit, 0.0, 10000, 7007).errors == 0,
              std::string(to_string(t)) + " BER at sigma 0");
    const auto sweep = sweep_ber(base, KeyGranularity::PerBit, sigmas, 10000, 7100);
    detail += std::string(" ") + std::string(to_string(t)) + ":";
    for (std::size_t i = 0; i < sweep.size(); ++i) {
      detail += " " + std::to_string(sweep[i].ber()).substr(0, 6);
      if (i == 0) continue;
      const double p0 = sweep[i - 1].ber(), p1 = sweep[i].ber();
      const double sd = std::sqrt((p0 * (1 - p0) + p1 * (1 - p1)) / 10000.0);
      o.require(p1 >= p0 - 3 * sd, "BER nondecreasing in sigma (3 sigma)");
    }
  }
  if (o.pass) o.detail = "BER(0) = 0; sweep {0.05, 0.1, 0.2, 0.4} V:" + detail;
  return o;
}

struct Criterion {
  const char* name;
  std::function<Outcome()> check;
  double time_limit_s;  // 0 = no limit
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"1 round-trip correctness", roundtrip, 10.0},
      {"2 readout algebra oracle", readout_algebra, 0.0},
      {"3 attack statistics", attack_statistics, 30.0},
      {"4 performance table", performance_table, 0.0},
      {"5 workload study", workload_study, 5.0},
      {"6 device/array properties", device_array_properties, 0.0},
      {"7 variability robustness", variability, 0.0},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.time_limit_s > 0 && secs >= c.time_limit_s) {
      o.pass = false;
      o.detail += " (runtime over " + std::to_string(c.time_limit_s) + " s)";
    }
    std::printf("[%s] %-28s %7.3fs  %s\n", o.pass ? "PASS" : "FAIL", c.name, secs, o.detail.c_str());
    failures += !o.pass;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
