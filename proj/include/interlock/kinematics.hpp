/**
 * @file kinematics.hpp
 * Closed-form turning angles of a frame rotating about a single anchored
 * spike, plus a reference integrator for the underlying motion model.
 *
 * Motion model: while one spike is anchored, the frame's center of motion
 * resistance translates along the instantaneous line joining it to the
 * spike while the spike's frame-relative station changes only axially.
 * Under that model the center stays on a fixed world ray through the
 * spike and the heading is slaved to the anchor constraint, so the total
 * rotation over a half-cycle depends only on the sweep endpoints.
 */
#pragma once

#include "interlock/geometry.hpp"

namespace interlock {

enum class TurnDirection { Left, Right };

/* CCW-positive sign of a commanded turn: left = +1, right = -1. */
inline double direction_sign(TurnDirection d) {
  return d == TurnDirection::Left ? 1.0 : -1.0;
}

/* Heading change of a contraction half-cycle anchored on `side`:
 * atan2(s, x_extended) - atan2(s, x_contracted) with side-signed s.
 * Negative (clockwise) for the left spike. */
double alpha(const VehicleGeometry& geom, AnchorSide side);

/* Weight-transfer-adjusted analogue of alpha() over the expansion sweep,
 * with the same side-sign convention, so beta(geom, zero_wt, side) equals
 * alpha(geom, side) exactly. The expansion half-cycle anchored on `side`
 * traverses the sweep in reverse and realizes -beta(geom, wt, side). */
double beta(const VehicleGeometry& geom, const WeightTransferModel& wt,
            AnchorSide side);

/* Net heading change of one full turn cycle (contraction anchored on the
 * outer spike, expansion anchored on the inner spike): |alpha| + |beta|
 * signed by the commanded direction. */
double cycle_turn_angle(const VehicleGeometry& geom,
                        const WeightTransferModel& wt, TurnDirection dir);

/* Contraction anchors the spike opposite the turn direction; expansion
 * anchors the spike on the turn side. */
inline AnchorSide contraction_anchor(TurnDirection dir) {
  return dir == TurnDirection::Left ? AnchorSide::Right : AnchorSide::Left;
}
inline AnchorSide expansion_anchor(TurnDirection dir) {
  return dir == TurnDirection::Left ? AnchorSide::Left : AnchorSide::Right;
}

/* Ground gained by one straight push-pull cycle: stroke * (1 - slip). */
double straight_cycle_advance(double stroke, double slip);

/* Reference integrator for the anchored-motion model, independent of the
 * closed forms above. `start` is the pose of the center of resistance,
 * `spike_world` the anchored spike, and `axial_travel` the signed change
 * of the spike's axial station (negative = contraction, the center moves
 * toward the spike). Classical 4th-order steps over the constraint ODE
 *
 *   dtheta/du = s / (x^2 + s^2),  dA/du = -(x / (x^2 + s^2)) (S - A)
 *
 * where (x, s) is the spike in frame coordinates and u axial progress.
 * Throws DegenerateGeometry if the radius falls below `min_radius`.
 */
Pose integrate_anchored_motion(const Pose& start, const Vec2& spike_world,
                               double axial_travel, int steps,
                               double min_radius = 1e-6);

}  // namespace interlock
