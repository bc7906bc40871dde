#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "fenc/bits.hpp"
#include "fenc/device.hpp"

namespace fenc {

enum class Topology { AND, NAND, NOR };

std::string_view to_string(Topology t);
Topology parse_topology(std::string_view s);

/// Gate voltages used for decryption reads.
/// AND/NOR use `v_r` (vth_low < v_r < vth_high).
/// NAND uses the pair v_r1 > vth_high > v_r2 > vth_low.
struct ReadVoltages {
  double v_r = 0.6;
  double v_r1 = 2.0;
  double v_r2 = 0.9;
};

/// Gate voltages applied to the two FeFETs of a cell during one read step.
struct BiasPattern {
  double top_gate = 0.0;
  double bottom_gate = 0.0;

  friend bool operator==(const BiasPattern&, const BiasPattern&) = default;
};

/// Geometric mean of i_on and 2 * i_off.
double default_sense_threshold(const DeviceParams& device);

struct ArrayConfig {
  std::size_t rows = 128;  // logical rows (2-FeFET cells per column)
  std::size_t cols = 128;
  Topology topology = Topology::AND;
  DeviceParams device{};
  ReadVoltages read{};
  double sense_threshold = default_sense_threshold(DeviceParams{});
  std::size_t num_sense_amps = 16;
  std::size_t block_rows = 128;  // logical rows per erase block

  /// Config with the sense threshold derived from `device`.
  static ArrayConfig make(std::size_t rows, std::size_t cols, Topology topology, DeviceParams device = {});

  std::size_t num_blocks() const { return (rows + block_rows - 1) / block_rows; }
  std::size_t block_of(std::size_t row) const { return row / block_rows; }

  void validate() const;
};

struct Cell {
  FeFetDevice top;
  FeFetDevice bottom;

  friend bool operator==(const Cell&, const Cell&) = default;
};

enum class Which { Top, Bottom };

struct ProgramTarget {
  std::size_t row = 0;
  std::size_t col = 0;
  Which which = Which::Top;
};

struct SenseResult {
  Bits bits;
  std::uint64_t cycles = 0;
};

/// ceil(cols / num_sense_amps) * phases.
std::uint64_t sense_cycles(std::size_t cols, std::size_t num_sense_amps, unsigned phases);

/// Grid of 2-FeFET cells. Writes follow the block-erase / selective-program
/// sequence: a block must be erased in the current write transaction before
/// any of its devices can be programmed.
class MemoryArray {
 public:
  /// All devices start at the nominal HVT state.
  explicit MemoryArray(ArrayConfig config);

  const ArrayConfig& config() const { return config_; }
  std::size_t rows() const { return config_.rows; }
  std::size_t cols() const { return config_.cols; }

  const Cell& cell(std::size_t row, std::size_t col) const;
  /// Direct state access, used when restoring a dumped array.
  Cell& cell_mut(std::size_t row, std::size_t col);

  /// Resets every device of the block to HVT and opens it for programming.
  void erase_block(std::size_t block, Rng& rng);

  /// Programs each target device to LVT. Non-targeted devices are untouched.
  /// All targets are range- and erase-checked before any device changes.
  void program_selected(std::span<const ProgramTarget> targets, Rng& rng);

  /// Closes the current write transaction on every block.
  void end_write();

  double read_cell_current(std::size_t row, std::size_t col, const BiasPattern& bias) const;

  /// Senses one logical row; bits[c] = current(c) > sense_threshold.
  SenseResult sense_row(std::size_t row, std::span<const BiasPattern> biases, unsigned phases) const;

  /// Micro-step counters: one erase step per erase_block call, one program
  /// step per distinct (row, device) wordline touched in a program_selected call.
  std::uint64_t erase_steps() const { return erase_steps_; }
  std::uint64_t program_steps() const { return program_steps_; }

 private:
  void check_index(std::size_t row, std::size_t col) const;

  ArrayConfig config_;
  std::vector<Cell> cells_;
  std::vector<bool> erased_open_;
  std::uint64_t erase_steps_ = 0;
  std::uint64_t program_steps_ = 0;
};

}  // namespace fenc
