#include "fenc/threat.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace fenc {

std::string_view to_string(ScenarioKind k) {
  switch (k) {
    case ScenarioKind::CorrectKeys: return "correct";
    case ScenarioKind::AllZeroKeys: return "all-zero";
    case ScenarioKind::RandomKeys: return "random";
  }
  return "?";
}

ScenarioKind parse_scenario(std::string_view s) {
  if (s == "correct") return ScenarioKind::CorrectKeys;
  if (s == "all-zero" || s == "all-0") return ScenarioKind::AllZeroKeys;
  if (s == "random") return ScenarioKind::RandomKeys;
  throw std::invalid_argument("unknown attack scenario '" + std::string(s) + "'");
}

PtPattern parse_pt_pattern(std::string_view s) {
  if (s == "uniform") return PtPattern::Uniform;
  if (s == "checkerboard") return PtPattern::Checkerboard;
  throw std::invalid_argument("unknown plaintext pattern '" + std::string(s) + "'");
}

std::string_view to_string(PtPattern p) { return p == PtPattern::Uniform ? "uniform" : "checkerboard"; }

BitMatrix attack_readout(const MemoryArray& array, const KeyStore& keys_guess) {
  return decrypt_read(array, 0, array.rows(), keys_guess).bits;
}

double accuracy(const BitMatrix& recovered, const BitMatrix& pt) {
  if (recovered.rows() != pt.rows() || recovered.cols() != pt.cols())
    throw std::invalid_argument("accuracy: shape mismatch");
  if (pt.size() == 0) throw std::invalid_argument("accuracy: empty matrices");
  std::size_t same = 0;
  for (std::size_t i = 0; i < pt.size(); ++i) same += recovered.data()[i] == pt.data()[i];
  return static_cast<double>(same) / static_cast<double>(pt.size());
}

Rng trial_rng(std::uint64_t master_seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(master_seed), static_cast<std::uint32_t>(master_seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return Rng(seq);
}

namespace {

BitMatrix make_pt(const TrialConfig& cfg, Rng& rng) {
  if (cfg.pattern == PtPattern::Checkerboard) return BitMatrix::checkerboard(cfg.array.rows, cfg.array.cols);
  BitMatrix pt(cfg.array.rows, cfg.array.cols);
  std::bernoulli_distribution coin(0.5);
  for (std::size_t r = 0; r < pt.rows(); ++r)
    for (std::size_t c = 0; c < pt.cols(); ++c) pt(r, c) = coin(rng) ? 1 : 0;
  return pt;
}

}  // namespace

AttackReport run_trials(const TrialConfig& config, const AttackScenario& scenario, std::size_t n_trials,
                        std::uint64_t master_seed) {
  if (n_trials < 1) throw std::invalid_argument("run_trials: need at least one trial");
  config.array.validate();
  const KeyShape shape = KeyShape::of(config.array);

  AttackReport report;
  report.scenario = std::string(to_string(scenario.kind));
  report.trials = n_trials;
  report.per_trial.reserve(n_trials);
  report.key_agreement.reserve(n_trials);

  for (std::size_t t = 0; t < n_trials; ++t) {
    Rng rng = trial_rng(master_seed, t);
    const BitMatrix pt = make_pt(config, rng);
    const KeyStore truth = KeyStore::random(config.granularity, shape, rng);
    MemoryArray array(config.array);
    encrypt_write(array, 0, pt, truth, rng);

    KeyStore guess = truth;
    if (scenario.kind == ScenarioKind::AllZeroKeys) {
      guess = KeyStore::zeros(config.granularity, shape);
    } else if (scenario.kind == ScenarioKind::RandomKeys) {
      Rng guess_rng = trial_rng(scenario.seed ^ 0x9e3779b97f4a7c15ULL, t);
      guess = KeyStore::random(config.granularity, shape, guess_rng);
    }

    report.per_trial.push_back(accuracy(attack_readout(array, guess), pt));
    report.key_agreement.push_back(accuracy(guess.expand(), truth.expand()));
  }

  const double n = static_cast<double>(n_trials);
  report.accuracy_mean = std::accumulate(report.per_trial.begin(), report.per_trial.end(), 0.0) / n;
  double ss = 0.0;
  for (double a : report.per_trial) ss += (a - report.accuracy_mean) * (a - report.accuracy_mean);
  report.accuracy_std = std::sqrt(ss / n);
  return report;
}

}  // namespace fenc
