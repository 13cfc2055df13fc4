#include <doctest.h>

#include "interlock/cycle.hpp"

#include <vector>

using namespace interlock;

namespace {

Program single(PrimitiveKind kind, int cycles, bool engaged = false) {
  Program p;
  p.name = "test";
  p.tool_engaged = engaged;
  p.primitives = {{kind, cycles}};
  return p;
}

std::vector<PhaseType> types_of(const CompiledProgram& compiled) {
  std::vector<PhaseType> types;
  for (const Phase& phase : compiled.phases) types.push_back(phase.type);
  return types;
}

}  // namespace

TEST_SUITE("cycle") {

TEST_CASE("a straight cycle walks the slide forward and drags the frame") {
  const VehicleGeometry geom;
  const TimingParams timing;
  const CompiledProgram compiled =
      compile_program(single(PrimitiveKind::Straight, 1), geom, timing);

  const std::vector<PhaseType> expected = {
      PhaseType::SlideToFront, PhaseType::SpikeDown, PhaseType::SpikeDown,
      PhaseType::TractionPull, PhaseType::SpikeUp,   PhaseType::SpikeUp};
  CHECK(types_of(compiled) == expected);
  CHECK(compiled.phases[0].label == "p0.straight.c0.slide_to_front");
  CHECK(compiled.phases[0].duration ==
        doctest::Approx(14.933333333333334).epsilon(1e-12));
  CHECK(compiled.phases[3].duration == doctest::Approx(35.0).epsilon(1e-12));
  CHECK(compiled.phases[3].slide_travel ==
        doctest::Approx(-geom.stroke).epsilon(1e-12));
  CHECK(compiled.total_duration ==
        doctest::Approx(69.93333333333334).epsilon(1e-12));
  for (const Phase& phase : compiled.phases) {
    CHECK(phase.duration > 0.0);
    CHECK(!phase.turning);
    CHECK(phase.primitive_index == 0);
    CHECK(phase.cycle_index == 0);
  }
  CHECK(compiled.phases[1].mode == SpikeMode::Passive);
  CHECK(compiled.phases[2].mode == SpikeMode::Passive);
  CHECK(compiled.phases[1].side != compiled.phases[2].side);
}

TEST_CASE("straight programs scale linearly in duration") {
  const VehicleGeometry geom;
  const TimingParams timing;
  const double one =
      compile_program(single(PrimitiveKind::Straight, 1), geom, timing)
          .total_duration;
  for (int n : {2, 5, 8}) {
    const CompiledProgram compiled =
        compile_program(single(PrimitiveKind::Straight, n), geom, timing);
    CHECK(compiled.total_duration == doctest::Approx(n * one).epsilon(1e-12));
  }
  CHECK(compile_program(single(PrimitiveKind::Straight, 5), geom, timing)
            .total_duration ==
        doctest::Approx(349.6666666666667).epsilon(1e-12));
}

TEST_CASE("a turn cycle anchors one side then the other") {
  const VehicleGeometry geom;
  const TimingParams timing;
  const CompiledProgram compiled =
      compile_program(single(PrimitiveKind::TurnLeft, 1), geom, timing);

  const std::vector<PhaseType> expected = {
      PhaseType::SlideToFront, PhaseType::SpikeDown, PhaseType::TractionPull,
      PhaseType::SpikeUp,      PhaseType::SpikeDown, PhaseType::TractionPushBack,
      PhaseType::SpikeUp};
  CHECK(types_of(compiled) == expected);
  CHECK(compiled.phases[0].cycle_index == -1);
  CHECK(compiled.phases[0].label == "p0.turn_left.setup.slide_to_front");
  CHECK(compiled.phases[1].side == AnchorSide::Right);
  CHECK(compiled.phases[1].mode == SpikeMode::ActiveDown);
  CHECK(compiled.phases[1].label == "p0.turn_left.c0.spike_down_right");
  CHECK(compiled.phases[2].turning);
  CHECK(compiled.phases[2].side == AnchorSide::Right);
  CHECK(compiled.phases[4].side == AnchorSide::Left);
  CHECK(compiled.phases[5].turning);
  CHECK(compiled.phases[5].side == AnchorSide::Left);
  CHECK(compiled.phases[5].slide_travel ==
        doctest::Approx(geom.stroke).epsilon(1e-12));
  CHECK(compiled.total_duration ==
        doctest::Approx(14.933333333333334 + 69.93333333333334)
            .epsilon(1e-12));
}

TEST_CASE("turn directions mirror the anchor sides") {
  const VehicleGeometry geom;
  const TimingParams timing;
  const CompiledProgram left =
      compile_program(single(PrimitiveKind::TurnLeft, 2), geom, timing);
  const CompiledProgram right =
      compile_program(single(PrimitiveKind::TurnRight, 2), geom, timing);
  REQUIRE(left.phases.size() == right.phases.size());
  for (std::size_t i = 0; i < left.phases.size(); ++i) {
    CHECK(left.phases[i].type == right.phases[i].type);
    CHECK(left.phases[i].duration == right.phases[i].duration);
    if (left.phases[i].type == PhaseType::SpikeDown ||
        left.phases[i].type == PhaseType::SpikeUp ||
        left.phases[i].turning)
      CHECK(left.phases[i].side == opposite(right.phases[i].side));
  }
  CHECK(left.total_duration == right.total_duration);
}

TEST_CASE("three left turn cycles fit the headland budget") {
  const VehicleGeometry geom;
  const TimingParams timing;
  CHECK(compile_program(single(PrimitiveKind::TurnLeft, 3), geom, timing)
            .total_duration ==
        doctest::Approx(224.73333333333335).epsilon(1e-12));
}

TEST_CASE("a straight after a turn reuses the forward slide") {
  const VehicleGeometry geom;
  const TimingParams timing;
  Program p;
  p.name = "mixed";
  p.primitives = {{PrimitiveKind::TurnLeft, 1}, {PrimitiveKind::Straight, 1}};
  const CompiledProgram compiled = compile_program(p, geom, timing);
  for (const Phase& phase : compiled.phases)
    if (phase.primitive_index == 1)
      CHECK(phase.type != PhaseType::SlideToFront);
}

TEST_CASE("the tool lowers for engaged straights and lifts for turns") {
  const VehicleGeometry geom;
  const TimingParams timing;
  Program p;
  p.name = "field";
  p.tool_engaged = true;
  p.primitives = {{PrimitiveKind::Straight, 1},
                  {PrimitiveKind::TurnLeft, 1},
                  {PrimitiveKind::Straight, 1}};
  const CompiledProgram compiled = compile_program(p, geom, timing);

  std::vector<PhaseType> tool_moves;
  for (const Phase& phase : compiled.phases)
    if (phase.type == PhaseType::LowerTool || phase.type == PhaseType::RaiseTool)
      tool_moves.push_back(phase.type);
  const std::vector<PhaseType> expected = {
      PhaseType::LowerTool, PhaseType::RaiseTool, PhaseType::LowerTool};
  CHECK(tool_moves == expected);
  CHECK(compiled.phases.front().type == PhaseType::LowerTool);
  CHECK(compiled.phases.front().cycle_index == -1);

  const CompiledProgram plain = compile_program(
      single(PrimitiveKind::Straight, 5, true), geom, timing);
  CHECK(plain.total_duration ==
        doctest::Approx(354.6666666666667).epsilon(1e-12));

  const CompiledProgram disengaged = compile_program(
      single(PrimitiveKind::Straight, 1), geom, timing);
  for (const Phase& phase : disengaged.phases) {
    CHECK(phase.type != PhaseType::LowerTool);
    CHECK(phase.type != PhaseType::RaiseTool);
  }
}

TEST_CASE("phase currents follow the drive assignments") {
  const PowerParams power;
  CHECK(phase_drive_current(PhaseType::TractionPull, power) == 3.0);
  CHECK(phase_drive_current(PhaseType::TractionPushBack, power) == 1.5);
  CHECK(phase_drive_current(PhaseType::SlideToFront, power) == 1.5);
  CHECK(phase_drive_current(PhaseType::SpikeDown, power) == 1.0);
  CHECK(phase_drive_current(PhaseType::SpikeUp, power) == 1.0);
  CHECK(phase_drive_current(PhaseType::LowerTool, power) == 1.0);
}

TEST_CASE("invalid programs and timings are rejected") {
  Program p;
  p.name = "bad";
  CHECK_THROWS_AS(p.validate(), InvalidProgram);
  p.primitives = {{PrimitiveKind::Straight, 0}};
  CHECK_THROWS_AS(p.validate(), InvalidProgram);

  TimingParams timing;
  timing.slide_speed = 0.0;
  CHECK_THROWS_AS(timing.validate(), InvalidTiming);
  timing = TimingParams{};
  timing.actuator_stroke_time = -1.0;
  CHECK_THROWS_AS(timing.validate(), InvalidTiming);
}

}  // TEST_SUITE
