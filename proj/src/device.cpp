#include "fenc/device.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace fenc {

namespace {
constexpr double kSigmaClamp = 6.0;
}

std::string_view to_string(VthState s) { return s == VthState::LVT ? "LVT" : "HVT"; }

VthState parse_vth_state(std::string_view s) {
  if (s == "LVT") return VthState::LVT;
  if (s == "HVT") return VthState::HVT;
  throw std::invalid_argument("unknown V_TH state '" + std::string(s) + "'");
}

void DeviceParams::validate() const {
  if (!(vth_low < vth_high)) throw std::invalid_argument("device: vth_low must be below vth_high");
  if (!(i_off > 0.0 && i_off < i_on)) throw std::invalid_argument("device: require 0 < i_off < i_on");
  if (!(vth_sigma >= 0.0)) throw std::invalid_argument("device: vth_sigma must be >= 0");
  if (const auto* s = std::get_if<Sigmoid>(&slope); s && !(s->volts_per_decade > 0.0))
    throw std::invalid_argument("device: sigmoid slope must be positive");
}

FeFetDevice FeFetDevice::nominal(VthState s, const DeviceParams& params) {
  return FeFetDevice{s, params.nominal_vth(s)};
}

FeFetDevice program(const FeFetDevice& /*device*/, Pulse polarity, const DeviceParams& params, Rng& rng) {
  const VthState target = polarity == Pulse::Positive ? VthState::LVT : VthState::HVT;
  double vth = params.nominal_vth(target);
  if (params.vth_sigma > 0.0) {
    std::normal_distribution<double> offset(0.0, params.vth_sigma);
    const double limit = kSigmaClamp * params.vth_sigma;
    vth += std::clamp(offset(rng), -limit, limit);
  }
  return FeFetDevice{target, vth};
}

double drain_current(const FeFetDevice& device, double v_gate, const DeviceParams& params) {
  const double overdrive = v_gate - device.vth_effective;
  if (std::holds_alternative<HardSwitch>(params.slope)) {
    return overdrive > 0.0 ? params.i_on : params.i_off;
  }
  const double decades = overdrive / std::get<Sigmoid>(params.slope).volts_per_decade;
  if (decades >= 0.0) return params.i_on;
  return std::max(params.i_off, params.i_on * std::pow(10.0, decades));
}

}  // namespace fenc
