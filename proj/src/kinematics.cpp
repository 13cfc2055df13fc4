#include "interlock/kinematics.hpp"

#include <cmath>

namespace interlock {

double alpha(const VehicleGeometry& geom, AnchorSide side) {
  geom.validate();
  const double s = side_sign(side) * geom.spike_half_spacing;
  return std::atan2(s, geom.x_extended) - std::atan2(s, geom.x_contracted);
}

double beta(const VehicleGeometry& geom, const WeightTransferModel& wt,
            AnchorSide side) {
  const ExpansionSweep sweep = expansion_sweep(geom, wt);
  const double sign = side_sign(side);
  return std::atan2(sign * sweep.s_end, sweep.x_end) -
         std::atan2(sign * sweep.s_start, sweep.x_start);
}

double cycle_turn_angle(const VehicleGeometry& geom,
                        const WeightTransferModel& wt, TurnDirection dir) {
  const double contraction = alpha(geom, contraction_anchor(dir));
  const double expansion = -beta(geom, wt, expansion_anchor(dir));
  return contraction + expansion;
}

double straight_cycle_advance(double stroke, double slip) {
  return stroke * (1.0 - slip);
}

namespace {

struct MotionState {
  double theta;
  Vec2 center;
};

/* Right-hand side of the constraint ODE at axial station offset u. */
MotionState derivative(const MotionState& st, const Vec2& spike,
                       double min_radius) {
  const Vec2 d = spike - st.center;
  const Vec2 frame = rotate(d, -st.theta);  // (x, s_lat)
  const double r2 = frame.x * frame.x + frame.y * frame.y;
  if (r2 < min_radius * min_radius)
    throw DegenerateGeometry("anchored-motion radius collapsed");
  return {frame.y / r2, (spike - st.center) * (-frame.x / r2)};
}

}  // namespace

Pose integrate_anchored_motion(const Pose& start, const Vec2& spike_world,
                               double axial_travel, int steps,
                               double min_radius) {
  if (steps < 1) throw ConfigError("integration steps must be >= 1");
  MotionState st{start.heading, start.position()};
  if ((spike_world - st.center).norm() < min_radius)
    throw DegenerateGeometry("spike coincides with the center of resistance");
  const double h = axial_travel / steps;
  for (int i = 0; i < steps; ++i) {
    const MotionState k1 = derivative(st, spike_world, min_radius);
    const MotionState s2{st.theta + 0.5 * h * k1.theta,
                         st.center + k1.center * (0.5 * h)};
    const MotionState k2 = derivative(s2, spike_world, min_radius);
    const MotionState s3{st.theta + 0.5 * h * k2.theta,
                         st.center + k2.center * (0.5 * h)};
    const MotionState k3 = derivative(s3, spike_world, min_radius);
    const MotionState s4{st.theta + h * k3.theta, st.center + k3.center * h};
    const MotionState k4 = derivative(s4, spike_world, min_radius);
    st.theta += h / 6.0 * (k1.theta + 2.0 * k2.theta + 2.0 * k3.theta +
                           k4.theta);
    st.center = st.center + (k1.center + k2.center * 2.0 + k3.center * 2.0 +
                             k4.center) * (h / 6.0);
  }
  return {st.center.x, st.center.y, normalize_angle(st.theta)};
}

}  // namespace interlock
