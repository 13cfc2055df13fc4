/**
 * @file cycle.hpp
 * The locomotion control strategy as an explicit timed state machine:
 * motion primitives compiled into flat actuator phase sequences.
 *
 * A straight cycle returns the slide to the front, drops both spikes
 * passively, pulls the frame forward a full stroke, and lifts the spikes.
 * A turn cycle contracts against the spike opposite the turn direction
 * (driven to full depth) and then expands against the spike on the turn
 * side, pushing the frame backwards; both halves rotate the same way.
 * Spike and tool actuators move one at a time.
 */
#pragma once

#include "interlock/errors.hpp"
#include "interlock/geometry.hpp"
#include "interlock/kinematics.hpp"
#include "interlock/soil.hpp"

#include <string>
#include <vector>

namespace interlock {

enum class PhaseType {
  LowerTool,
  RaiseTool,
  SlideToFront,
  SpikeDown,
  SpikeUp,
  TractionPull,
  TractionPushBack,
};

std::string to_string(PhaseType t);

enum class ToolState { Raised, Lowered };

std::string to_string(ToolState t);

struct TimingParams {
  double slide_speed = 0.032;         // m/s, loaded traction pull
  double return_speed = 0.075;        // m/s, unloaded slide return/push-back
  double actuator_stroke_time = 5.0;  // s per spike or tool move

  void validate() const;
};

struct PowerParams {
  double bus_voltage = 24.0;           // V
  double traction_current = 3.0;       // A during loaded pull
  double return_current = 1.5;         // A during slide return/push-back
  double actuator_current_peak = 1.0;  // A during spike/tool strokes
  double idle_current = 1.0;           // A drawn continuously

  void validate() const;
};

/* One flat phase of a compiled program. `label` is
 * "p<prim>.<primitive>.c<cycle>.<phase>" for in-cycle phases and
 * "p<prim>.<primitive>.setup.<phase>" for bridging moves. */
struct Phase {
  PhaseType type = PhaseType::SlideToFront;
  double duration = 0.0;               // s
  std::string label;
  AnchorSide side = AnchorSide::Left;  // SpikeDown/SpikeUp only
  SpikeMode mode = SpikeMode::Passive; // SpikeDown target mode
  TurnDirection turn = TurnDirection::Left;  // traction phases of turns
  bool turning = false;                // traction phase anchored one-sided
  int primitive_index = 0;
  int cycle_index = -1;                // -1 for setup phases
  double slide_travel = 0.0;           // signed slide_offset change, m
};

enum class PrimitiveKind { Straight, TurnLeft, TurnRight };

std::string to_string(PrimitiveKind k);

struct Primitive {
  PrimitiveKind kind = PrimitiveKind::Straight;
  int cycles = 1;
};

struct Program {
  std::string name;
  bool tool_engaged = false;  // lower the tool for straights, raise for turns
  std::vector<Primitive> primitives;

  void validate() const;  // non-empty, cycles >= 1
};

struct CompiledProgram {
  std::vector<Phase> phases;
  double total_duration = 0.0;
};

/* Flattens a program into timed phases. The slide starts contracted and
 * the tool raised; SlideToFront is emitted only when the slide is not
 * already at the front, tool moves only on a state change (and only if
 * tool_engaged). */
CompiledProgram compile_program(const Program& program,
                                const VehicleGeometry& geom,
                                const TimingParams& timing);

/* Drive current drawn above idle while a phase of this type runs. */
double phase_drive_current(PhaseType type, const PowerParams& power);

/* Rotation sign of a primitive: +1 turn left, -1 turn right, 0 straight. */
double direction_of(PrimitiveKind k);

}  // namespace interlock
