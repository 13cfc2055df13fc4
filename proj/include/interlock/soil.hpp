/**
 * @file soil.hpp
 * Spike-soil interaction: self-regulating penetration depth, holding
 * force, and traction slip.
 *
 * The holding force of a spike grows quadratically with depth,
 * F = k * d^2, so a passively loaded spike settles at d = sqrt(F/k) and
 * an actively driven spike holds k * max_depth^2.
 */
#pragma once

#include "interlock/errors.hpp"

#include <random>

namespace interlock {

/* Actuator-set spike position: out of the soil, resting on it free to
 * self-penetrate under load, or forced to full depth. */
enum class SpikeMode { Retracted, Passive, ActiveDown };

std::string to_string(SpikeMode m);

struct SoilModel {
  double holding_coefficient = 1.2e5;  // N/m^2, force per squared depth
  double self_weight_depth = 0.02;     // m, penetration under vehicle weight
  double max_depth = 0.10;             // m, spike length below the frame
  double base_slip = 0.107;            // stroke fraction lost per pull
  double slip_load_gain = 0.0;         // extra slip per unit of load ratio
  double grip_loss_probability = 0.0;  // per traction phase
  double grip_degraded_fraction = 0.5; // travel coupling when grip is lost

  void validate() const;
};

/* Depth a passively loaded spike settles to under `draft_force`:
 * max(self_weight_depth, sqrt(F/k)). Throws TractionLimitExceeded when
 * the required depth exceeds max_depth. */
double passive_penetration_depth(double draft_force, const SoilModel& soil);

/* Peak horizontal holding force at `depth` in the given mode: k*d^2 for
 * Passive, k*max_depth^2 for ActiveDown, 0 for Retracted. */
double holding_force(double depth, SpikeMode mode, const SoilModel& soil);

/* Slip fraction of a traction stroke under `draft_force`:
 * base_slip + slip_load_gain * F / holding_force(max_depth), clamped to
 * [0, 1). */
double effective_slip(double draft_force, const SoilModel& soil);

/* Seeded Bernoulli grip-loss event for one traction phase. */
bool draw_grip_loss(const SoilModel& soil, std::mt19937_64& rng);

}  // namespace interlock
