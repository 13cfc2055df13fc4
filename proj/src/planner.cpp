#include "interlock/planner.hpp"

#include "interlock/kinematics.hpp"

#include <cmath>

namespace interlock {

void PlannerCalibration::validate() const {
  if (!(advance_per_cycle > 0.0))
    throw InvalidCalibration("advance_per_cycle must be > 0");
  if (!(turn_per_cycle_deg > 0.0))
    throw InvalidCalibration("turn_per_cycle_deg must be > 0");
}

Goal Goal::advance(double meters) {
  Goal g;
  g.kind = Kind::Advance;
  g.advance_m = meters;
  return g;
}

Goal Goal::turn(double degrees, TurnDirection dir) {
  Goal g;
  g.kind = Kind::Turn;
  g.turn_deg = degrees;
  g.direction = dir;
  return g;
}

Goal Goal::headland_turn(TurnDirection dir) {
  Goal g;
  g.kind = Kind::HeadlandTurn;
  g.direction = dir;
  return g;
}

Goal Goal::row_mission(double row_length_m, int n_rows) {
  Goal g;
  g.kind = Kind::RowMission;
  g.row_length_m = row_length_m;
  g.n_rows = n_rows;
  return g;
}

void Goal::validate() const {
  switch (kind) {
    case Kind::Advance:
      if (!(advance_m > 0.0)) throw InvalidGoal("advance must be > 0");
      return;
    case Kind::Turn:
      if (!(turn_deg > 0.0) || turn_deg > 360.0)
        throw InvalidGoal("turn angle must be in (0, 360] degrees");
      return;
    case Kind::HeadlandTurn:
      return;
    case Kind::RowMission:
      if (!(row_length_m > 0.0)) throw InvalidGoal("row length must be > 0");
      if (n_rows < 1) throw InvalidGoal("need at least one row");
      return;
  }
  throw InvalidGoal("unknown goal kind");
}

namespace {

/* Smallest whole cycle count covering `amount`; tolerant of targets that
 * are exact multiples up to rounding. */
int cycles_for(double amount, double per_cycle) {
  const int n = static_cast<int>(std::ceil(amount / per_cycle - 1e-12));
  return n < 1 ? 1 : n;
}

PrimitiveKind turn_kind(TurnDirection dir) {
  return dir == TurnDirection::Left ? PrimitiveKind::TurnLeft
                                    : PrimitiveKind::TurnRight;
}

}  // namespace

Plan plan(const Goal& goal, const PlannerCalibration& cal) {
  goal.validate();
  cal.validate();

  Plan out;
  switch (goal.kind) {
    case Goal::Kind::Advance: {
      const int n = cycles_for(goal.advance_m, cal.advance_per_cycle);
      out.program.name = "advance";
      out.program.primitives = {{PrimitiveKind::Straight, n}};
      out.overshoot_m = n * cal.advance_per_cycle - goal.advance_m;
      return out;
    }
    case Goal::Kind::Turn: {
      const int n = cycles_for(goal.turn_deg, cal.turn_per_cycle_deg);
      out.program.name = "turn";
      out.program.primitives = {{turn_kind(goal.direction), n}};
      out.overshoot_deg = n * cal.turn_per_cycle_deg - goal.turn_deg;
      return out;
    }
    case Goal::Kind::HeadlandTurn: {
      Plan inner = plan(Goal::turn(180.0, goal.direction), cal);
      inner.program.name = "headland_turn";
      return inner;
    }
    case Goal::Kind::RowMission: {
      const int per_row = cycles_for(goal.row_length_m, cal.advance_per_cycle);
      const int per_turn = cycles_for(180.0, cal.turn_per_cycle_deg);
      out.program.name = "row_mission";
      out.program.tool_engaged = true;
      TurnDirection dir = TurnDirection::Left;
      for (int row = 0; row < goal.n_rows; ++row) {
        if (row > 0) {
          out.program.primitives.push_back({turn_kind(dir), per_turn});
          dir = dir == TurnDirection::Left ? TurnDirection::Right
                                           : TurnDirection::Left;
        }
        out.program.primitives.push_back({PrimitiveKind::Straight, per_row});
      }
      out.overshoot_m = per_row * cal.advance_per_cycle - goal.row_length_m;
      out.overshoot_deg = per_turn * cal.turn_per_cycle_deg - 180.0;
      return out;
    }
  }
  throw InvalidGoal("unknown goal kind");
}

PlannerCalibration calibration_of(const SimConfig& config) {
  config.geometry.validate();
  config.weight_transfer.validate(config.geometry);
  config.soil.validate();
  PlannerCalibration cal;
  cal.advance_per_cycle =
      straight_cycle_advance(config.geometry.stroke, config.soil.base_slip);
  cal.turn_per_cycle_deg = std::abs(deg(cycle_turn_angle(
      config.geometry, config.weight_transfer, TurnDirection::Left)));
  cal.validate();
  return cal;
}

Prediction predict(const Program& program, const SimConfig& config) {
  config.validate();
  program.validate();
  const PlannerCalibration cal = calibration_of(config);
  const CompiledProgram compiled =
      compile_program(program, config.geometry, config.timing);

  Prediction p;
  p.duration_s = compiled.total_duration;
  double joules = 0.0;
  for (const Phase& phase : compiled.phases)
    joules += config.power.bus_voltage *
              (config.power.idle_current +
               phase_drive_current(phase.type, config.power)) *
              phase.duration;
  p.energy_wh = joules / 3600.0;

  double heading = 0.0;  // relative to start
  Vec2 offset{0.0, 0.0};
  for (const Primitive& prim : program.primitives) {
    if (prim.kind == PrimitiveKind::Straight) {
      offset = offset + rotate({cal.advance_per_cycle * prim.cycles, 0.0},
                               heading);
    } else {
      const TurnDirection dir = prim.kind == PrimitiveKind::TurnLeft
                                    ? TurnDirection::Left
                                    : TurnDirection::Right;
      heading += rad(cal.turn_per_cycle_deg) * direction_sign(dir) *
                 prim.cycles;
    }
  }
  p.net_turn_deg = deg(heading);
  p.net_advance_m = offset.x;  // projected on the initial heading
  return p;
}

}  // namespace interlock
