#include "interlock/soil.hpp"

#include <algorithm>
#include <cmath>

namespace interlock {

std::string to_string(SpikeMode m) {
  switch (m) {
    case SpikeMode::Retracted: return "retracted";
    case SpikeMode::Passive: return "passive";
    case SpikeMode::ActiveDown: return "active_down";
  }
  return "?";
}

void SoilModel::validate() const {
  if (!(holding_coefficient > 0.0))
    throw ConfigError("holding_coefficient must be positive");
  if (!(max_depth > 0.0)) throw ConfigError("max_depth must be positive");
  if (self_weight_depth < 0.0 || self_weight_depth > max_depth)
    throw ConfigError("self_weight_depth must lie in [0, max_depth]");
  if (base_slip < 0.0 || base_slip >= 1.0)
    throw ConfigError("base_slip must lie in [0, 1)");
  if (slip_load_gain < 0.0)
    throw ConfigError("slip_load_gain must be >= 0");
  if (grip_loss_probability < 0.0 || grip_loss_probability > 1.0)
    throw ConfigError("grip_loss_probability must lie in [0, 1]");
  if (grip_degraded_fraction < 0.0 || grip_degraded_fraction > 1.0)
    throw ConfigError("grip_degraded_fraction must lie in [0, 1]");
}

double passive_penetration_depth(double draft_force, const SoilModel& soil) {
  if (draft_force < 0.0) throw ConfigError("draft_force must be >= 0");
  const double required = std::sqrt(draft_force / soil.holding_coefficient);
  if (required > soil.max_depth)
    throw TractionLimitExceeded(
        "passive spike cannot hold the draft load within its length");
  return std::max(soil.self_weight_depth, required);
}

double holding_force(double depth, SpikeMode mode, const SoilModel& soil) {
  switch (mode) {
    case SpikeMode::Retracted:
      return 0.0;
    case SpikeMode::Passive:
      return soil.holding_coefficient * depth * depth;
    case SpikeMode::ActiveDown:
      return soil.holding_coefficient * soil.max_depth * soil.max_depth;
  }
  return 0.0;
}

double effective_slip(double draft_force, const SoilModel& soil) {
  const double full = holding_force(soil.max_depth, SpikeMode::ActiveDown, soil);
  const double slip = soil.base_slip +
                      soil.slip_load_gain * (draft_force / full);
  return std::clamp(slip, 0.0, std::nextafter(1.0, 0.0));
}

bool draw_grip_loss(const SoilModel& soil, std::mt19937_64& rng) {
  if (soil.grip_loss_probability <= 0.0) return false;
  return std::bernoulli_distribution(soil.grip_loss_probability)(rng);
}

}  // namespace interlock
