#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "fenc/array.hpp"
#include "fenc/cipher.hpp"

namespace fenc {

struct BerPoint {
  double sigma = 0.0;
  std::size_t cells = 0;
  std::size_t errors = 0;
  double ber() const { return cells ? static_cast<double>(errors) / static_cast<double>(cells) : 0.0; }
};

/// Bit error rate of correct-key decryption over a population of `cells`
/// cells whose V_TH carries Gaussian variability `sigma`. The population is
/// laid out as rows of `base.cols` cells; `base.rows` is ignored.
BerPoint measure_ber(const ArrayConfig& base, KeyGranularity granularity, double sigma, std::size_t cells,
                     std::uint64_t seed);

std::vector<BerPoint> sweep_ber(const ArrayConfig& base, KeyGranularity granularity,
                                const std::vector<double>& sigmas, std::size_t cells, std::uint64_t seed);

}  // namespace fenc
