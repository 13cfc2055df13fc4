/**
 * @file analysis.hpp
 * Trajectory post-processing: per-cycle turn angles, net advance, fitted
 * center of rotation, turning footprint, and parameter calibration.
 */
#pragma once

#include "interlock/simulator.hpp"

#include <optional>
#include <string>
#include <vector>

namespace interlock {

/* Sample-index span [begin, end] of one locomotion cycle, recovered from
 * the telemetry phase labels. */
struct CycleSpan {
  std::size_t begin = 0;
  std::size_t end = 0;
  int primitive_index = 0;
  int cycle_index = 0;
  PrimitiveKind kind = PrimitiveKind::Straight;
};

std::vector<CycleSpan> cycle_spans(const std::vector<TelemetrySample>& samples);

/* Unwrapped heading change over each [boundaries[i], boundaries[i+1]]
 * span, in degrees. Boundaries must be strictly increasing sample
 * indices within range (else BadBoundaries). */
std::vector<double> per_cycle_turns(const std::vector<TelemetrySample>& samples,
                                    const std::vector<std::size_t>& boundaries);

struct CircleFit {
  Vec2 center;
  double radius = 0.0;
  double rms_residual = 0.0;
};

/* Algebraic least-squares circle through `points`; DegenerateFit for
 * fewer than three points or a collinear/singular system. */
CircleFit fit_circle(const std::vector<Vec2>& points);

struct RotationCenter {
  CircleFit fit;
  Vec2 spike_midpoint;         // between the spikes at the first turn cycle
  double lateral_offset = 0.0; // center offset toward the initial left side
};

/* Fits the overall center of rotation over the turn-cycle boundary
 * positions (which a rigid per-cycle map keeps on one circle) and
 * reports its offset from the spike midpoint, resolved in the pose frame
 * at the start of the first turn cycle (positive lateral = left). */
RotationCenter fit_center_of_rotation(
    const std::vector<TelemetrySample>& samples, const VehicleGeometry& geom);

struct Footprint {
  double extent_x = 0.0;       // m, world-x span of the prism track
  double extent_y = 0.0;       // m, world-y span
  double turning_space = 0.0;  // max extent + stroke
};

Footprint footprint(const std::vector<TelemetrySample>& samples,
                    const VehicleGeometry& geom);

/* Displacement of the center projected on the initial heading. */
double net_advance(const std::vector<TelemetrySample>& samples);

struct TurnReport {
  std::vector<double> per_cycle_deg;
  double total_turn_deg = 0.0;
  double net_advance_m = 0.0;
  double path_length_m = 0.0;
  std::optional<CircleFit> rotation;  // absent when < 3 turn boundaries
  Footprint footprint;
};

TurnReport analyze(const std::vector<TelemetrySample>& samples,
                   const VehicleGeometry& geom);

/* Calibration: bounded coordinate search of selected parameters against
 * closed-form targets (angle targets in degrees, magnitudes). */
struct CalibrationTargets {
  std::optional<double> alpha_deg;
  std::optional<double> beta_deg;
  std::optional<double> per_cycle_deg;
  std::optional<double> advance_m;
};

enum class FreeParam {
  XContracted,       // x_extended follows at x_contracted + stroke
  SpikeHalfSpacing,
  WtAxial,           // ties y_extended = y_contracted
  WtLateral,         // ties z_extended = z_contracted
  BaseSlip,
};

struct CalibrationResult {
  SimConfig config;
  double residual = 0.0;  // root of the summed squared target misses
  int iterations = 0;
};

/* Zero iterations when the initial residual is already within tol;
 * CalibrationFailed when the search cannot reach tol. */
CalibrationResult calibrate(const SimConfig& initial,
                            const CalibrationTargets& targets,
                            const std::vector<FreeParam>& free_params,
                            double tol = 1e-6, int max_iterations = 200);

}  // namespace interlock
