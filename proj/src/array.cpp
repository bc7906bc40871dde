#include "fenc/array.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>

namespace fenc {

std::string_view to_string(Topology t) {
  switch (t) {
    case Topology::AND: return "AND";
    case Topology::NAND: return "NAND";
    case Topology::NOR: return "NOR";
  }
  return "?";
}

Topology parse_topology(std::string_view s) {
  std::string upper(s);
  std::transform(upper.begin(), upper.end(), upper.begin(), [](unsigned char ch) { return std::toupper(ch); });
  if (upper == "AND") return Topology::AND;
  if (upper == "NAND") return Topology::NAND;
  if (upper == "NOR") return Topology::NOR;
  throw std::invalid_argument("unknown topology '" + std::string(s) + "'");
}

double default_sense_threshold(const DeviceParams& device) {
  return std::sqrt(device.i_on * 2.0 * device.i_off);
}

ArrayConfig ArrayConfig::make(std::size_t rows, std::size_t cols, Topology topology, DeviceParams device) {
  ArrayConfig cfg;
  cfg.rows = rows;
  cfg.cols = cols;
  cfg.topology = topology;
  cfg.block_rows = rows;
  cfg.sense_threshold = default_sense_threshold(device);
  cfg.device = std::move(device);
  return cfg;
}

void ArrayConfig::validate() const {
  device.validate();
  if (rows < 1 || cols < 1) throw std::invalid_argument("array: rows and cols must be >= 1");
  if (num_sense_amps < 1) throw std::invalid_argument("array: num_sense_amps must be >= 1");
  if (block_rows < 1) throw std::invalid_argument("array: block_rows must be >= 1");
  if (!(device.i_off < sense_threshold && sense_threshold < device.i_on))
    throw std::invalid_argument("array: sense_threshold must lie strictly between i_off and i_on");
}

std::uint64_t sense_cycles(std::size_t cols, std::size_t num_sense_amps, unsigned phases) {
  if (num_sense_amps == 0) throw std::invalid_argument("sense_cycles: need at least one sense amplifier");
  return static_cast<std::uint64_t>((cols + num_sense_amps - 1) / num_sense_amps) * phases;
}

MemoryArray::MemoryArray(ArrayConfig config) : config_(std::move(config)) {
  config_.validate();
  const Cell erased{FeFetDevice::nominal(VthState::HVT, config_.device),
                    FeFetDevice::nominal(VthState::HVT, config_.device)};
  cells_.assign(config_.rows * config_.cols, erased);
  erased_open_.assign(config_.num_blocks(), false);
}

void MemoryArray::check_index(std::size_t row, std::size_t col) const {
  if (row >= config_.rows || col >= config_.cols)
    throw std::out_of_range("cell (" + std::to_string(row) + ", " + std::to_string(col) + ") outside " +
                            std::to_string(config_.rows) + "x" + std::to_string(config_.cols) + " array");
}

const Cell& MemoryArray::cell(std::size_t row, std::size_t col) const {
  check_index(row, col);
  return cells_[row * config_.cols + col];
}

Cell& MemoryArray::cell_mut(std::size_t row, std::size_t col) {
  check_index(row, col);
  return cells_[row * config_.cols + col];
}

void MemoryArray::erase_block(std::size_t block, Rng& rng) {
  if (block >= config_.num_blocks())
    throw std::out_of_range("erase block " + std::to_string(block) + " of " + std::to_string(config_.num_blocks()));
  const std::size_t first = block * config_.block_rows;
  const std::size_t last = std::min(config_.rows, first + config_.block_rows);
  for (std::size_t r = first; r < last; ++r) {
    for (std::size_t c = 0; c < config_.cols; ++c) {
      Cell& cl = cells_[r * config_.cols + c];
      cl.top = program(cl.top, Pulse::Negative, config_.device, rng);
      cl.bottom = program(cl.bottom, Pulse::Negative, config_.device, rng);
    }
  }
  erased_open_[block] = true;
  ++erase_steps_;
}

void MemoryArray::program_selected(std::span<const ProgramTarget> targets, Rng& rng) {
  for (const auto& t : targets) {
    check_index(t.row, t.col);
    if (!erased_open_[config_.block_of(t.row)])
      throw std::logic_error("program target in row " + std::to_string(t.row) +
                             " belongs to a block not erased in this write transaction");
  }
  std::set<std::pair<std::size_t, Which>> wordlines;
  for (const auto& t : targets) {
    Cell& cl = cells_[t.row * config_.cols + t.col];
    FeFetDevice& dev = t.which == Which::Top ? cl.top : cl.bottom;
    dev = program(dev, Pulse::Positive, config_.device, rng);
    wordlines.emplace(t.row, t.which);
  }
  program_steps_ += wordlines.size();
}

void MemoryArray::end_write() { std::fill(erased_open_.begin(), erased_open_.end(), false); }

double MemoryArray::read_cell_current(std::size_t row, std::size_t col, const BiasPattern& bias) const {
  const Cell& cl = cell(row, col);
  const double top = drain_current(cl.top, bias.top_gate, config_.device);
  const double bottom = drain_current(cl.bottom, bias.bottom_gate, config_.device);
  if (config_.topology == Topology::NAND) return std::min(top, bottom);
  return top + bottom;
}

SenseResult MemoryArray::sense_row(std::size_t row, std::span<const BiasPattern> biases, unsigned phases) const {
  if (biases.size() != config_.cols)
    throw std::invalid_argument("sense_row: expected " + std::to_string(config_.cols) + " biases, got " +
                                std::to_string(biases.size()));
  if (phases != 1 && phases != 2) throw std::invalid_argument("sense_row: phases must be 1 or 2");
  SenseResult out;
  out.bits.resize(config_.cols);
  for (std::size_t c = 0; c < config_.cols; ++c)
    out.bits[c] = read_cell_current(row, c, biases[c]) > config_.sense_threshold ? 1 : 0;
  out.cycles = sense_cycles(config_.cols, config_.num_sense_amps, phases);
  return out;
}

}  // namespace fenc
