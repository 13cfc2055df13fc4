/**
 * @file planner.hpp
 * Converts navigation goals into cycle programs using the calibrated
 * per-cycle advance and turn angle. Cycle counts always round up; the
 * hardware cannot execute fractional strokes.
 */
#pragma once

#include "interlock/cycle.hpp"
#include "interlock/simulator.hpp"

#include <string>

namespace interlock {

struct PlannerCalibration {
  double advance_per_cycle = 1.0;    // m
  double turn_per_cycle_deg = 60.0;  // deg, magnitude

  void validate() const;  // InvalidCalibration unless both > 0
};

struct Goal {
  enum class Kind { Advance, Turn, HeadlandTurn, RowMission };

  Kind kind = Kind::Advance;
  double advance_m = 0.0;               // Advance
  double turn_deg = 0.0;                // Turn, in (0, 360]
  TurnDirection direction = TurnDirection::Left;  // Turn/HeadlandTurn
  double row_length_m = 0.0;            // RowMission
  int n_rows = 0;                       // RowMission

  static Goal advance(double meters);
  static Goal turn(double degrees, TurnDirection dir);
  static Goal headland_turn(TurnDirection dir);
  static Goal row_mission(double row_length_m, int n_rows);

  void validate() const;  // InvalidGoal
};

struct Plan {
  Program program;
  double overshoot_m = 0.0;    // per planned straight block
  double overshoot_deg = 0.0;  // per planned turn block
};

/* Advance(d) -> Straight(ceil(d / advance)); Turn(a) -> ceil(a / turn)
 * cycles in the given direction; HeadlandTurn -> Turn(180); RowMission ->
 * rows of straights separated by headland turns that alternate direction
 * starting left, tool engaged. */
Plan plan(const Goal& goal, const PlannerCalibration& cal);

/* Per-cycle calibration implied by a config's closed forms. The turn rate
 * is quoted for a left turn; right turns mirror it. */
PlannerCalibration calibration_of(const SimConfig& config);

struct Prediction {
  double net_advance_m = 0.0;
  double net_turn_deg = 0.0;
  double duration_s = 0.0;
  double energy_wh = 0.0;
};

/* Closed-form roll-up of a program: compiled phase durations for time and
 * energy, per-cycle closed forms for advance and turn. */
Prediction predict(const Program& program, const SimConfig& config);

}  // namespace interlock
