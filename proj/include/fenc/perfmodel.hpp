#pragma once

#include <cstdint>
#include <string>

#include "fenc/cipher.hpp"

namespace fenc {

struct PerfConfig {
  std::uint64_t word_bits = 128;
  double freq_hz = 25e6;
  std::uint64_t num_sense_amps = 16;
  std::uint64_t array_rows = 128;
  std::uint64_t array_cols = 128;
  std::uint64_t enc_cycles_per_word = 5;  // calibrated, not derived from micro-steps
  KeyGranularity key_granularity = KeyGranularity::PerBit;

  void validate() const;
};

/// Published figures of the reference AES accelerator.
struct BaselineCosts {
  double enc_cycles = 115.5;
  double dec_cycles = 117.0;
  double throughput_mbps = 28.32;
  double power_mw = 0.031;
  double area_mm2 = 0.00309;
};

struct SchemeFigures {
  std::string name;
  double enc_latency_cycles = 0.0;
  double dec_latency_cycles = 0.0;
  double enc_throughput_mbps = 0.0;
  double dec_throughput_mbps = 0.0;
  double power_mw = 0.0;
  double area_mm2 = 0.0;
  /// Power/area are below what the model resolves (XOR gates only).
  bool overhead_negligible = false;
};

struct ComparisonReport {
  SchemeFigures ours;
  SchemeFigures baseline;
  /// Single-phase decryption latency, the steady state behind dec throughput.
  double dec_latency_single_phase_cycles = 0.0;
  double enc_speedup = 0.0;  // ours / baseline throughput
  double dec_speedup = 0.0;
};

/// Encryption latency for `words` words.
std::uint64_t enc_latency(const PerfConfig& cfg, std::uint64_t words = 1);

/// ceil(word_bits / num_sense_amps) * phases per word; phases from key granularity.
std::uint64_t dec_latency(const PerfConfig& cfg, std::uint64_t words = 1);

/// word_bits * freq_hz / cycles_per_word, in Mbit/s.
double throughput_mbps(double word_bits, double cycles_per_word, double freq_hz);

SchemeFigures in_situ_figures(const PerfConfig& cfg);
SchemeFigures aes_figures(const BaselineCosts& baseline);

ComparisonReport compare(const SchemeFigures& ours, const SchemeFigures& baseline);
ComparisonReport compare(const PerfConfig& cfg, const BaselineCosts& baseline);

}  // namespace fenc
