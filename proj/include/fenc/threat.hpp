#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "fenc/array.hpp"
#include "fenc/bits.hpp"
#include "fenc/cipher.hpp"

namespace fenc {

enum class ScenarioKind { CorrectKeys, AllZeroKeys, RandomKeys };

/// Key guess an attacker applies when reading a stolen array.
struct AttackScenario {
  ScenarioKind kind = ScenarioKind::CorrectKeys;
  std::uint64_t seed = 0;  // RandomKeys only

  static AttackScenario correct() { return {ScenarioKind::CorrectKeys, 0}; }
  static AttackScenario all_zero() { return {ScenarioKind::AllZeroKeys, 0}; }
  static AttackScenario random(std::uint64_t seed) { return {ScenarioKind::RandomKeys, seed}; }
};

std::string_view to_string(ScenarioKind k);
/// "correct", "all-zero", "random".
ScenarioKind parse_scenario(std::string_view s);

enum class PtPattern { Uniform, Checkerboard };
PtPattern parse_pt_pattern(std::string_view s);
std::string_view to_string(PtPattern p);

struct TrialConfig {
  ArrayConfig array = ArrayConfig::make(1, 128, Topology::AND);
  KeyGranularity granularity = KeyGranularity::PerBit;
  PtPattern pattern = PtPattern::Uniform;
};

struct AttackReport {
  std::string scenario;
  std::size_t trials = 0;
  double accuracy_mean = 0.0;
  double accuracy_std = 0.0;  // population standard deviation over trials
  std::vector<double> per_trial;
  /// Fraction of cells whose guessed key bit equals the true key bit.
  std::vector<double> key_agreement;
};

/// Full-array readout using the guessed keys in place of the true ones.
BitMatrix attack_readout(const MemoryArray& array, const KeyStore& keys_guess);

/// Fraction of matching bits. Throws std::invalid_argument on shape mismatch.
double accuracy(const BitMatrix& recovered, const BitMatrix& pt);

/// Independent random stream for trial `index` of a run seeded by `master_seed`.
Rng trial_rng(std::uint64_t master_seed, std::uint64_t index);

/// Runs `n_trials` stolen-array readouts with fresh PT and true keys per trial.
/// Results depend only on (config, scenario, master_seed), not execution order.
AttackReport run_trials(const TrialConfig& config, const AttackScenario& scenario, std::size_t n_trials,
                        std::uint64_t master_seed);

}  // namespace fenc
