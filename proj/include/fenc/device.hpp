#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <variant>

namespace fenc {

/// Seeded random source shared by every stochastic operation.
using Rng = std::mt19937_64;

/// Programmed threshold-voltage state of a FeFET.
enum class VthState { LVT, HVT };

/// Write-pulse polarity. Positive pulses program LVT, negative pulses HVT.
enum class Pulse { Positive, Negative };

std::string_view to_string(VthState s);
VthState parse_vth_state(std::string_view s);

/// Ideal switch: full on-current above V_TH, off-current otherwise.
struct HardSwitch {};

/// Exponential subthreshold region below V_TH, `volts_per_decade` of gate
/// swing per decade of current, clamped to [i_off, i_on].
struct Sigmoid {
  double volts_per_decade = 0.1;
};

using SlopeMode = std::variant<HardSwitch, Sigmoid>;

struct DeviceParams {
  double vth_low = 0.3;    // V
  double vth_high = 1.5;   // V
  double i_on = 10e-6;     // A
  double i_off = 10e-12;   // A
  double vth_sigma = 0.0;  // V, std. dev. of V_TH around the nominal state value
  SlopeMode slope = HardSwitch{};

  // Write pulse, kept as metadata. Programming is instantaneous in the model.
  double write_pulse_volts = 4.0;
  double write_pulse_seconds = 1e-6;

  /// Throws std::invalid_argument when the parameter set is inconsistent.
  void validate() const;

  double nominal_vth(VthState s) const { return s == VthState::LVT ? vth_low : vth_high; }
};

struct FeFetDevice {
  VthState state = VthState::HVT;
  double vth_effective = 0.0;

  /// Device at the nominal V_TH of `s`, with no variability offset.
  static FeFetDevice nominal(VthState s, const DeviceParams& params);

  friend bool operator==(const FeFetDevice&, const FeFetDevice&) = default;
};

/// Applies a write pulse. The V_TH offset is resampled from N(0, vth_sigma),
/// truncated to +-6 sigma. With vth_sigma == 0 the random source is not drawn.
FeFetDevice program(const FeFetDevice& device, Pulse polarity, const DeviceParams& params, Rng& rng);

/// Drain current at gate voltage `v_gate`. Nondecreasing in `v_gate`.
double drain_current(const FeFetDevice& device, double v_gate, const DeviceParams& params);

}  // namespace fenc
