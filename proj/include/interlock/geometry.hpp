/**
 * @file geometry.hpp
 * Vehicle geometry for a push-pull interlock-drive machine: a rigid main
 * frame carrying a slide that travels `stroke` metres along the frame axis,
 * with one ground spike at each lateral end of the slide.
 *
 * Axial stations are measured forward from the frame's center of motion
 * resistance (the point the anchored-spike kinematics act on). The anchored
 * spike therefore sits between x_contracted and x_extended ahead of that
 * center, offset spike_half_spacing to the side.
 */
#pragma once

#include "interlock/errors.hpp"
#include "interlock/se2.hpp"

namespace interlock {

enum class AnchorSide { Left, Right };

/* Lateral sign of a spike station: left spikes sit at +y in frame coords. */
inline double side_sign(AnchorSide side) {
  return side == AnchorSide::Left ? 1.0 : -1.0;
}

inline AnchorSide opposite(AnchorSide side) {
  return side == AnchorSide::Left ? AnchorSide::Right : AnchorSide::Left;
}

inline const char* to_string(AnchorSide side) {
  return side == AnchorSide::Left ? "left" : "right";
}

struct VehicleGeometry {
  double frame_length = 2.0;         // m
  double frame_width = 0.55;         // m, also the spike lateral spacing
  double stroke = 1.12;              // m of slide travel per half-cycle
  double spike_half_spacing = 0.275; // m, spike lateral offset from the axis
  double x_extended = 1.58;          // m, spike station at full extension
  double x_contracted = 0.46;        // m, spike station at full contraction
  double mass = 90.0;                // kg
  double prism_offset = 1.58;        // m, tracking-prism mast station

  void validate() const;
};

/* Dynamic shift of the center of resistance while the frame is pushed
 * backwards over its castors (expansion half-cycle): the center moves
 * y forward along the axis and z laterally toward the anchored spike.
 * Values are given at both extremes of the motion and interpolated. */
struct WeightTransferModel {
  double y_extended = 0.19;    // m, axial shift at full extension
  double y_contracted = 0.19;  // m, axial shift at full contraction
  double z_extended = 0.035;   // m, lateral shift at full extension
  double z_contracted = 0.035; // m, lateral shift at full contraction

  static WeightTransferModel zero() { return {0.0, 0.0, 0.0, 0.0}; }
  bool is_zero() const {
    return y_extended == 0.0 && y_contracted == 0.0 && z_extended == 0.0 &&
           z_contracted == 0.0;
  }
  /* The shifted center must stay behind the spike (x - y > 0 at both ends)
   * and on the same side of it (s - z >= 0). */
  void validate(const VehicleGeometry& geom) const;
};

/* Effective spike sweep seen from the (shifted) center of resistance during
 * an expansion half-cycle, endpoint values. Throws InvalidWeightTransfer if
 * the shift puts the spike behind the center or flips it across the axis. */
struct ExpansionSweep {
  double x_start;  // axial distance at full contraction
  double x_end;    // axial distance at full extension
  double s_start;  // lateral distance at full contraction
  double s_end;    // lateral distance at full extension
};

ExpansionSweep expansion_sweep(const VehicleGeometry& geom,
                               const WeightTransferModel& wt);

}  // namespace interlock
