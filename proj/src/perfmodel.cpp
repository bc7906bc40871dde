#include "fenc/perfmodel.hpp"

#include <stdexcept>

#include "fenc/array.hpp"

namespace fenc {

void PerfConfig::validate() const {
  if (word_bits < 1 || num_sense_amps < 1 || array_rows < 1 || array_cols < 1 || enc_cycles_per_word < 1)
    throw std::invalid_argument("perf: all counts must be >= 1");
  if (!(freq_hz > 0.0)) throw std::invalid_argument("perf: frequency must be positive");
}

std::uint64_t enc_latency(const PerfConfig& cfg, std::uint64_t words) { return words * cfg.enc_cycles_per_word; }

std::uint64_t dec_latency(const PerfConfig& cfg, std::uint64_t words) {
  return words * sense_cycles(cfg.word_bits, cfg.num_sense_amps, read_phases(cfg.key_granularity));
}

double throughput_mbps(double word_bits, double cycles_per_word, double freq_hz) {
  if (!(cycles_per_word > 0.0)) throw std::invalid_argument("throughput: cycles per word must be positive");
  return word_bits * freq_hz / cycles_per_word / 1e6;
}

SchemeFigures in_situ_figures(const PerfConfig& cfg) {
  cfg.validate();
  const auto word = static_cast<double>(cfg.word_bits);
  const auto steady_dec = static_cast<double>(sense_cycles(cfg.word_bits, cfg.num_sense_amps, 1));
  SchemeFigures f;
  f.name = "in_situ";
  f.enc_latency_cycles = static_cast<double>(enc_latency(cfg));
  f.dec_latency_cycles = static_cast<double>(dec_latency(cfg));
  f.enc_throughput_mbps = throughput_mbps(word, f.enc_latency_cycles, cfg.freq_hz);
  f.dec_throughput_mbps = throughput_mbps(word, steady_dec, cfg.freq_hz);
  f.power_mw = 0.0;
  f.area_mm2 = 0.0;
  f.overhead_negligible = true;
  return f;
}

SchemeFigures aes_figures(const BaselineCosts& b) {
  SchemeFigures f;
  f.name = "aes_baseline";
  f.enc_latency_cycles = b.enc_cycles;
  f.dec_latency_cycles = b.dec_cycles;
  f.enc_throughput_mbps = b.throughput_mbps;
  f.dec_throughput_mbps = b.throughput_mbps;
  f.power_mw = b.power_mw;
  f.area_mm2 = b.area_mm2;
  return f;
}

ComparisonReport compare(const SchemeFigures& ours, const SchemeFigures& baseline) {
  ComparisonReport r;
  r.ours = ours;
  r.baseline = baseline;
  r.dec_latency_single_phase_cycles = ours.dec_latency_cycles;
  r.enc_speedup = ours.enc_throughput_mbps / baseline.enc_throughput_mbps;
  r.dec_speedup = ours.dec_throughput_mbps / baseline.dec_throughput_mbps;
  return r;
}

ComparisonReport compare(const PerfConfig& cfg, const BaselineCosts& baseline) {
  ComparisonReport r = compare(in_situ_figures(cfg), aes_figures(baseline));
  r.dec_latency_single_phase_cycles = static_cast<double>(sense_cycles(cfg.word_bits, cfg.num_sense_amps, 1));
  return r;
}

}  // namespace fenc
