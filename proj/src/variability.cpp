#include "fenc/variability.hpp"

#include <stdexcept>

#include "fenc/threat.hpp"

namespace fenc {

BerPoint measure_ber(const ArrayConfig& base, KeyGranularity granularity, double sigma, std::size_t cells,
                     std::uint64_t seed) {
  if (cells == 0) throw std::invalid_argument("measure_ber: empty population");
  ArrayConfig cfg = base;
  cfg.device.vth_sigma = sigma;
  cfg.rows = (cells + cfg.cols - 1) / cfg.cols;
  cfg.block_rows = cfg.rows;

  Rng rng(seed);
  MemoryArray array(cfg);
  BitMatrix pt(cfg.rows, cfg.cols);
  std::bernoulli_distribution coin(0.5);
  for (std::size_t r = 0; r < pt.rows(); ++r)
    for (std::size_t c = 0; c < pt.cols(); ++c) pt(r, c) = coin(rng) ? 1 : 0;
  const KeyStore keys = KeyStore::random(granularity, KeyShape::of(cfg), rng);
  encrypt_write(array, 0, pt, keys, rng);
  const BitMatrix out = decrypt_read(array, 0, cfg.rows, keys).bits;

  BerPoint p{sigma, 0, 0};
  for (std::size_t i = 0; i < cells; ++i) {
    p.errors += out.data()[i] != pt.data()[i];
    ++p.cells;
  }
  return p;
}

std::vector<BerPoint> sweep_ber(const ArrayConfig& base, KeyGranularity granularity,
                                const std::vector<double>& sigmas, std::size_t cells, std::uint64_t seed) {
  std::vector<BerPoint> out;
  out.reserve(sigmas.size());
  for (std::size_t i = 0; i < sigmas.size(); ++i)
    out.push_back(measure_ber(base, granularity, sigmas[i], cells, seed + i));
  return out;
}

}  // namespace fenc
