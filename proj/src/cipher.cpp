#include "fenc/cipher.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fenc {

std::string_view to_string(KeyGranularity g) {
  switch (g) {
    case KeyGranularity::PerBit: return "per-bit";
    case KeyGranularity::PerRow: return "per-row";
    case KeyGranularity::PerBlock: return "per-block";
  }
  return "?";
}

KeyGranularity parse_granularity(std::string_view s) {
  if (s == "per-bit" || s == "bit") return KeyGranularity::PerBit;
  if (s == "per-row" || s == "row") return KeyGranularity::PerRow;
  if (s == "per-block" || s == "block") return KeyGranularity::PerBlock;
  throw std::invalid_argument("unknown key granularity '" + std::string(s) + "'");
}

std::size_t KeyStore::bits_needed(KeyGranularity granularity, const KeyShape& shape) {
  switch (granularity) {
    case KeyGranularity::PerBit: return shape.rows * shape.cols;
    case KeyGranularity::PerRow: return shape.rows;
    case KeyGranularity::PerBlock: return shape.num_blocks();
  }
  return 0;
}

KeyStore::KeyStore(KeyGranularity granularity, KeyShape shape, Bits bits)
    : granularity_(granularity), shape_(shape), bits_(std::move(bits)) {
  if (shape_.rows < 1 || shape_.cols < 1 || shape_.block_rows < 1)
    throw std::invalid_argument("key store: empty address space");
  const std::size_t need = bits_needed(granularity_, shape_);
  if (bits_.size() != need)
    throw std::invalid_argument("key store: " + std::string(to_string(granularity_)) + " keys need " +
                                std::to_string(need) + " bits, got " + std::to_string(bits_.size()));
  if (std::any_of(bits_.begin(), bits_.end(), [](std::uint8_t b) { return b > 1; }))
    throw std::invalid_argument("key store: key bits must be 0 or 1");
}

KeyStore KeyStore::zeros(KeyGranularity granularity, const KeyShape& shape) {
  return KeyStore(granularity, shape, Bits(bits_needed(granularity, shape), 0));
}

KeyStore KeyStore::random(KeyGranularity granularity, const KeyShape& shape, Rng& rng) {
  Bits bits(bits_needed(granularity, shape));
  std::bernoulli_distribution coin(0.5);
  for (auto& b : bits) b = coin(rng) ? 1 : 0;
  return KeyStore(granularity, shape, std::move(bits));
}

KeyStore KeyStore::unencrypted(const KeyShape& shape) {
  KeyStore ks = zeros(KeyGranularity::PerBlock, shape);
  ks.encrypted_ = false;
  return ks;
}

std::uint8_t KeyStore::key_bit_for(std::size_t row, std::size_t col) const {
  if (row >= shape_.rows || col >= shape_.cols) throw std::out_of_range("key lookup outside address space");
  switch (granularity_) {
    case KeyGranularity::PerBit: return bits_[row * shape_.cols + col];
    case KeyGranularity::PerRow: return bits_[row];
    case KeyGranularity::PerBlock: return bits_[row / shape_.block_rows];
  }
  return 0;
}

BitMatrix KeyStore::expand() const {
  BitMatrix m(shape_.rows, shape_.cols);
  for (std::size_t r = 0; r < shape_.rows; ++r)
    for (std::size_t c = 0; c < shape_.cols; ++c) m(r, c) = key_bit_for(r, c);
  return m;
}

Bits xor_block(std::span<const std::uint8_t> data, std::span<const std::uint8_t> key_bits) {
  if (data.size() != key_bits.size())
    throw std::invalid_argument("xor_block: length mismatch (" + std::to_string(data.size()) + " vs " +
                                std::to_string(key_bits.size()) + ")");
  Bits out(data.size());
  std::transform(data.begin(), data.end(), key_bits.begin(), out.begin(),
                 [](std::uint8_t a, std::uint8_t b) -> std::uint8_t { return (a ^ b) & 1u; });
  return out;
}

CellEncoding encode_cell(std::uint8_t ct_bit) {
  if (ct_bit & 1u) return {1, VthState::HVT, VthState::LVT};
  return {0, VthState::LVT, VthState::HVT};
}

BiasPattern read_bias_for_key(std::uint8_t key_bit, Topology topology, const DeviceParams& params,
                              const ReadVoltages& v) {
  if (topology == Topology::NAND) {
    if (!(v.v_r1 > params.vth_high && params.vth_high > v.v_r2 && v.v_r2 > params.vth_low))
      throw std::invalid_argument("NAND read requires v_r1 > vth_high > v_r2 > vth_low");
    return key_bit ? BiasPattern{v.v_r2, v.v_r1} : BiasPattern{v.v_r1, v.v_r2};
  }
  if (!(params.vth_low < v.v_r && v.v_r < params.vth_high))
    throw std::invalid_argument("AND/NOR read requires vth_low < v_r < vth_high");
  return key_bit ? BiasPattern{v.v_r, 0.0} : BiasPattern{0.0, v.v_r};
}

namespace {

void check_keys(const MemoryArray& array, const KeyStore& keys) {
  if (!(keys.shape() == KeyShape::of(array.config())))
    throw std::invalid_argument("key store shape does not match the array address space");
}

}  // namespace

WriteReport encrypt_write(MemoryArray& array, std::size_t start_row, const BitMatrix& pt, const KeyStore& keys,
                          Rng& rng, std::uint64_t enc_cycles_per_row) {
  check_keys(array, keys);
  const ArrayConfig& cfg = array.config();
  if (pt.rows() == 0) throw std::invalid_argument("encrypt_write: empty plaintext");
  if (pt.cols() != cfg.cols)
    throw std::invalid_argument("encrypt_write: plaintext must span all " + std::to_string(cfg.cols) + " columns");
  if (start_row + pt.rows() > cfg.rows) throw std::out_of_range("encrypt_write: region exceeds array rows");
  const std::size_t block = cfg.block_of(start_row);
  if (cfg.block_of(start_row + pt.rows() - 1) != block)
    throw std::invalid_argument("encrypt_write: region spans multiple erase blocks; split the write");

  const std::uint64_t erase_before = array.erase_steps();
  const std::uint64_t program_before = array.program_steps();

  std::vector<ProgramTarget> targets;
  targets.reserve(pt.size());
  for (std::size_t r = 0; r < pt.rows(); ++r) {
    const std::size_t row = start_row + r;
    for (std::size_t c = 0; c < pt.cols(); ++c) {
      const std::uint8_t ct = (pt(r, c) ^ keys.key_bit_for(row, c)) & 1u;
      const CellEncoding enc = encode_cell(ct);
      targets.push_back({row, c, enc.top_state == VthState::LVT ? Which::Top : Which::Bottom});
    }
  }

  array.erase_block(block, rng);
  array.program_selected(targets, rng);
  array.end_write();

  return WriteReport{pt.rows() * enc_cycles_per_row, array.erase_steps() - erase_before,
                     array.program_steps() - program_before};
}

ReadReport decrypt_read(const MemoryArray& array, std::size_t start_row, std::size_t num_rows, const KeyStore& keys) {
  check_keys(array, keys);
  const ArrayConfig& cfg = array.config();
  if (start_row + num_rows > cfg.rows) throw std::out_of_range("decrypt_read: extent exceeds array rows");

  const BiasPattern bias0 = read_bias_for_key(0, cfg.topology, cfg.device, cfg.read);
  const BiasPattern bias1 = read_bias_for_key(1, cfg.topology, cfg.device, cfg.read);
  const BiasPattern idle{};
  const unsigned phases = read_phases(keys.granularity());

  ReadReport out{BitMatrix(num_rows, cfg.cols), 0};
  std::vector<BiasPattern> biases(cfg.cols);
  for (std::size_t r = 0; r < num_rows; ++r) {
    const std::size_t row = start_row + r;
    if (phases == 1) {
      const BiasPattern& b = keys.key_bit_for(row, 0) ? bias1 : bias0;
      std::fill(biases.begin(), biases.end(), b);
      const SenseResult s = array.sense_row(row, biases, 1);
      for (std::size_t c = 0; c < cfg.cols; ++c) out.bits(r, c) = s.bits[c];
      out.cycles += s.cycles;
      continue;
    }
    // Phase 1 senses key-1 columns, phase 2 key-0 columns; results merge in a buffer.
    for (std::uint8_t key : {std::uint8_t{1}, std::uint8_t{0}}) {
      for (std::size_t c = 0; c < cfg.cols; ++c)
        biases[c] = keys.key_bit_for(row, c) == key ? (key ? bias1 : bias0) : idle;
      const SenseResult s = array.sense_row(row, biases, 1);
      for (std::size_t c = 0; c < cfg.cols; ++c)
        if (keys.key_bit_for(row, c) == key) out.bits(r, c) = s.bits[c];
      out.cycles += s.cycles;
    }
  }
  return out;
}

}  // namespace fenc
