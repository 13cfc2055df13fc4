/**
 * @file simulator.hpp
 * Deterministic time-stepped execution of a compiled program.
 *
 * During anchored traction phases the heading is slaved to the anchor
 * constraint (exact for the current slide position) while the radial
 * distance to the anchor is integrated explicit first order in time, so
 * the per-cycle heading change matches the closed forms to round-off and
 * the position error shrinks linearly with dt. Telemetry is sampled on
 * the t = k*dt grid (phase boundaries are handled with exact internal
 * sub-steps) plus one final off-grid sample when the program ends between
 * grid points.
 */
#pragma once

#include "interlock/cycle.hpp"
#include "interlock/geometry.hpp"
#include "interlock/soil.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace interlock {

struct SimConfig {
  VehicleGeometry geometry;
  WeightTransferModel weight_transfer;
  SoilModel soil;
  TimingParams timing;
  PowerParams power;
  double dt = 0.1;             // s, telemetry and integration step
  std::uint64_t seed = 0;
  double draft_force = 300.0;  // N, tool load held by the passive spikes
  Pose initial_pose{0.0, 0.0, 1.5707963267948966};

  /* Validates every sub-model; dt against a compiled program (dt must not
   * exceed a tenth of the shortest phase) is checked by simulate(). */
  void validate() const;
};

struct SpikeState {
  SpikeMode mode = SpikeMode::Retracted;
  double depth = 0.0;  // m below grade
};

struct TelemetrySample {
  double t = 0.0;
  Pose pose;                  // center of motion resistance
  double slide_offset = 0.0;  // m of slide extension, 0 = contracted
  std::string phase;          // label of the phase active at t
  SpikeState left;
  SpikeState right;
  ToolState tool = ToolState::Raised;
  double drive_current = 0.0;  // A above idle
  double power = 0.0;          // W, bus total
};

struct TrajectoryPoint {
  double t = 0.0;
  Pose pose;
};

std::vector<TrajectoryPoint> trajectory_of(
    const std::vector<TelemetrySample>& samples);

struct SimResult {
  std::vector<TelemetrySample> samples;
  Pose final_pose;
  double duration = 0.0;  // s
  double total_turn_deg = 0.0;  // unwrapped net heading change
  double energy_wh = 0.0;       // exact from phase durations
  double mean_power_w = 0.0;
  double max_power_w = 0.0;
  double distance = 0.0;  // m, path length of the center
  std::uint64_t seed = 0;
  int grip_loss_events = 0;
};

SimResult simulate(const SimConfig& config, const Program& program);

/* World position of the survey prism on the mast ahead of the center. */
Vec2 prism_position(const VehicleGeometry& geom, const Pose& pose);

/* Time-weighted mean of instantaneous power over samples with
 * t in [t_begin, t_end]; throws EmptyWindow when none fall inside. */
double mean_power(const std::vector<TelemetrySample>& samples, double t_begin,
                  double t_end);

/* Mutable execution state, exposed for phase-level tests. The anchored
 * fields are integrator context scoped to the phase set up last. */
struct SimState {
  Pose pose;
  double slide_offset = 0.0;
  SpikeState left;
  SpikeState right;
  ToolState tool = ToolState::Raised;
  double elapsed = 0.0;
  // phase-scoped context
  double phase_elapsed = 0.0;
  Vec2 anchor;          // anchored spike, world
  double anchor_bearing = 0.0;  // world bearing of the ray center->spike
  double radial = 0.0;  // distance from the effective center to the anchor
  double phase_slip = 0.0;
  double ramp_from = 0.0;  // spike depth when a SpikeUp phase began
  bool grip_lost = false;
};

/* Captures the anchor, draws the phase's slip/grip outcome, and sets
 * spike depth targets. Call once when a phase begins. */
void begin_phase(SimState& state, const Phase& phase, const SimConfig& config,
                 std::mt19937_64& rng);

/* Advances the state by h seconds (h must not exceed the phase time
 * remaining). The final step of a phase lands slide_offset and the
 * anchored heading exactly on the phase's end values. */
void step(SimState& state, const Phase& phase, double h,
          const SimConfig& config);

}  // namespace interlock
