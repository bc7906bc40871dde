#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

#include "fenc/array.hpp"
#include "fenc/bits.hpp"

namespace fenc {

enum class KeyGranularity { PerBit, PerRow, PerBlock };

std::string_view to_string(KeyGranularity g);
/// Accepts "per-bit", "per-row", "per-block" (also "bit", "row", "block").
KeyGranularity parse_granularity(std::string_view s);

/// Number of sensing phases a row read needs at this granularity.
inline unsigned read_phases(KeyGranularity g) { return g == KeyGranularity::PerBit ? 2 : 1; }

/// Address space a key store covers.
struct KeyShape {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t block_rows = 1;

  static KeyShape of(const ArrayConfig& cfg) { return {cfg.rows, cfg.cols, cfg.block_rows}; }
  std::size_t num_blocks() const { return (rows + block_rows - 1) / block_rows; }
  friend bool operator==(const KeyShape&, const KeyShape&) = default;
};

/// Key bits at bit, row, or block granularity. Immutable once built.
class KeyStore {
 public:
  KeyStore(KeyGranularity granularity, KeyShape shape, Bits bits);

  static std::size_t bits_needed(KeyGranularity granularity, const KeyShape& shape);
  static KeyStore zeros(KeyGranularity granularity, const KeyShape& shape);
  static KeyStore random(KeyGranularity granularity, const KeyShape& shape, Rng& rng);
  /// Marker for blocks stored without encryption. Reads behave as key 0.
  static KeyStore unencrypted(const KeyShape& shape);

  KeyGranularity granularity() const { return granularity_; }
  const KeyShape& shape() const { return shape_; }
  const Bits& bits() const { return bits_; }
  bool encrypted() const { return encrypted_; }

  /// Key bit governing cell (row, col).
  std::uint8_t key_bit_for(std::size_t row, std::size_t col) const;

  /// Key bits expanded to one per cell over the full address space.
  BitMatrix expand() const;

 private:
  KeyGranularity granularity_;
  KeyShape shape_;
  Bits bits_;
  bool encrypted_ = true;
};

/// Target states of the two FeFETs storing one ciphertext bit.
struct CellEncoding {
  std::uint8_t ct_bit = 0;
  VthState top_state = VthState::LVT;
  VthState bottom_state = VthState::HVT;

  friend bool operator==(const CellEncoding&, const CellEncoding&) = default;
};

/// Element-wise XOR. Throws std::invalid_argument on length mismatch.
Bits xor_block(std::span<const std::uint8_t> data, std::span<const std::uint8_t> key_bits);

/// 0 -> (LVT, HVT), 1 -> (HVT, LVT).
CellEncoding encode_cell(std::uint8_t ct_bit);

/// Key-dependent read bias. Throws std::invalid_argument when the read
/// voltages do not sit inside the memory window required by the topology.
BiasPattern read_bias_for_key(std::uint8_t key_bit, Topology topology, const DeviceParams& params,
                              const ReadVoltages& voltages);

struct WriteReport {
  std::uint64_t cycles = 0;  // calibrated: rows written * enc_cycles_per_row
  std::uint64_t erase_steps = 0;
  std::uint64_t program_steps = 0;
};

struct ReadReport {
  BitMatrix bits;
  std::uint64_t cycles = 0;
};

/// Encrypts `pt` into rows [start_row, start_row + pt.rows()). The region must
/// fall inside one erase block and span every column. The whole block is
/// erased first, so other rows of that block are left erased.
WriteReport encrypt_write(MemoryArray& array, std::size_t start_row, const BitMatrix& pt, const KeyStore& keys,
                          Rng& rng, std::uint64_t enc_cycles_per_row = 5);

/// Reads `num_rows` rows starting at `start_row` with key-dependent biases.
/// Per-bit keys take two sensing phases per row (key-1 columns, then key-0
/// columns, merged); row and block keys take one.
ReadReport decrypt_read(const MemoryArray& array, std::size_t start_row, std::size_t num_rows, const KeyStore& keys);

}  // namespace fenc
