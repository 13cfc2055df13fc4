#include "interlock/cycle.hpp"

#include <cstdio>

namespace interlock {

std::string to_string(PhaseType t) {
  switch (t) {
    case PhaseType::LowerTool: return "lower_tool";
    case PhaseType::RaiseTool: return "raise_tool";
    case PhaseType::SlideToFront: return "slide_to_front";
    case PhaseType::SpikeDown: return "spike_down";
    case PhaseType::SpikeUp: return "spike_up";
    case PhaseType::TractionPull: return "traction_pull";
    case PhaseType::TractionPushBack: return "traction_push_back";
  }
  return "?";
}

std::string to_string(ToolState t) {
  return t == ToolState::Raised ? "raised" : "lowered";
}

std::string to_string(PrimitiveKind k) {
  switch (k) {
    case PrimitiveKind::Straight: return "straight";
    case PrimitiveKind::TurnLeft: return "turn_left";
    case PrimitiveKind::TurnRight: return "turn_right";
  }
  return "?";
}

void TimingParams::validate() const {
  if (!(slide_speed > 0.0) || !(return_speed > 0.0) ||
      !(actuator_stroke_time > 0.0))
    throw InvalidTiming("timing values must be positive");
}

void PowerParams::validate() const {
  if (!(bus_voltage > 0.0)) throw ConfigError("bus_voltage must be positive");
  if (traction_current < 0.0 || return_current < 0.0 ||
      actuator_current_peak < 0.0 || idle_current < 0.0)
    throw ConfigError("currents must be >= 0");
}

void Program::validate() const {
  if (primitives.empty()) throw InvalidProgram("program has no primitives");
  for (const Primitive& p : primitives)
    if (p.cycles < 1) throw InvalidProgram("primitive cycle count must be >= 1");
}

double phase_drive_current(PhaseType type, const PowerParams& power) {
  switch (type) {
    case PhaseType::TractionPull:
      return power.traction_current;
    case PhaseType::TractionPushBack:
    case PhaseType::SlideToFront:
      return power.return_current;
    default:
      return power.actuator_current_peak;
  }
}

double direction_of(PrimitiveKind k) {
  switch (k) {
    case PrimitiveKind::TurnLeft: return 1.0;
    case PrimitiveKind::TurnRight: return -1.0;
    default: return 0.0;
  }
}

namespace {

std::string phase_label(int prim, PrimitiveKind kind, int cycle,
                        const std::string& name) {
  char buf[96];
  if (cycle < 0)
    std::snprintf(buf, sizeof buf, "p%d.%s.setup.%s", prim,
                  to_string(kind).c_str(), name.c_str());
  else
    std::snprintf(buf, sizeof buf, "p%d.%s.c%d.%s", prim,
                  to_string(kind).c_str(), cycle, name.c_str());
  return buf;
}

}  // namespace

CompiledProgram compile_program(const Program& program,
                                const VehicleGeometry& geom,
                                const TimingParams& timing) {
  program.validate();
  geom.validate();
  timing.validate();

  CompiledProgram out;
  bool slide_front = false;  // slide carriage starts contracted
  ToolState tool = ToolState::Raised;

  auto emit = [&](Phase p, int prim, PrimitiveKind kind, int cycle,
                  const std::string& name) {
    p.primitive_index = prim;
    p.cycle_index = cycle;
    p.label = phase_label(prim, kind, cycle, name);
    out.total_duration += p.duration;
    out.phases.push_back(std::move(p));
  };
  auto spike_move = [&](PhaseType type, AnchorSide side, SpikeMode mode,
                        int prim, PrimitiveKind kind, int cycle) {
    Phase p;
    p.type = type;
    p.duration = timing.actuator_stroke_time;
    p.side = side;
    p.mode = mode;
    emit(std::move(p), prim, kind, cycle,
         to_string(type) + "_" + to_string(side));
  };
  auto slide_to_front = [&](int prim, PrimitiveKind kind, int cycle) {
    Phase p;
    p.type = PhaseType::SlideToFront;
    p.duration = geom.stroke / timing.return_speed;
    p.slide_travel = geom.stroke;
    emit(std::move(p), prim, kind, cycle, "slide_to_front");
    slide_front = true;
  };

  for (std::size_t i = 0; i < program.primitives.size(); ++i) {
    const Primitive& prim = program.primitives[i];
    const int pi = static_cast<int>(i);
    const PrimitiveKind kind = prim.kind;

    if (kind == PrimitiveKind::Straight) {
      if (program.tool_engaged && tool == ToolState::Raised) {
        Phase p;
        p.type = PhaseType::LowerTool;
        p.duration = timing.actuator_stroke_time;
        emit(std::move(p), pi, kind, -1, "lower_tool");
        tool = ToolState::Lowered;
      }
      for (int k = 0; k < prim.cycles; ++k) {
        if (!slide_front) slide_to_front(pi, kind, k);
        spike_move(PhaseType::SpikeDown, AnchorSide::Left, SpikeMode::Passive,
                   pi, kind, k);
        spike_move(PhaseType::SpikeDown, AnchorSide::Right, SpikeMode::Passive,
                   pi, kind, k);
        Phase pull;
        pull.type = PhaseType::TractionPull;
        pull.duration = geom.stroke / timing.slide_speed;
        pull.slide_travel = -geom.stroke;
        emit(std::move(pull), pi, kind, k, "traction_pull");
        slide_front = false;
        spike_move(PhaseType::SpikeUp, AnchorSide::Left, SpikeMode::Retracted,
                   pi, kind, k);
        spike_move(PhaseType::SpikeUp, AnchorSide::Right, SpikeMode::Retracted,
                   pi, kind, k);
      }
    } else {
      const TurnDirection dir = kind == PrimitiveKind::TurnLeft
                                    ? TurnDirection::Left
                                    : TurnDirection::Right;
      if (program.tool_engaged && tool == ToolState::Lowered) {
        Phase p;
        p.type = PhaseType::RaiseTool;
        p.duration = timing.actuator_stroke_time;
        emit(std::move(p), pi, kind, -1, "raise_tool");
        tool = ToolState::Raised;
      }
      if (!slide_front) slide_to_front(pi, kind, -1);
      const AnchorSide contract = contraction_anchor(dir);
      const AnchorSide expand = expansion_anchor(dir);
      for (int k = 0; k < prim.cycles; ++k) {
        spike_move(PhaseType::SpikeDown, contract, SpikeMode::ActiveDown, pi,
                   kind, k);
        Phase pull;
        pull.type = PhaseType::TractionPull;
        pull.duration = geom.stroke / timing.slide_speed;
        pull.slide_travel = -geom.stroke;
        pull.turning = true;
        pull.turn = dir;
        pull.side = contract;
        emit(std::move(pull), pi, kind, k, "traction_pull");
        slide_front = false;
        spike_move(PhaseType::SpikeUp, contract, SpikeMode::Retracted, pi,
                   kind, k);
        spike_move(PhaseType::SpikeDown, expand, SpikeMode::ActiveDown, pi,
                   kind, k);
        Phase push;
        push.type = PhaseType::TractionPushBack;
        push.duration = geom.stroke / timing.return_speed;
        push.slide_travel = geom.stroke;
        push.turning = true;
        push.turn = dir;
        push.side = expand;
        emit(std::move(push), pi, kind, k, "traction_push_back");
        slide_front = true;
        spike_move(PhaseType::SpikeUp, expand, SpikeMode::Retracted, pi, kind,
                   k);
      }
    }
  }
  return out;
}

}  // namespace interlock
