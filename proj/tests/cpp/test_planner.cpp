#include <doctest.h>

#include "interlock/analysis.hpp"
#include "interlock/planner.hpp"

#include <cmath>

using namespace interlock;

TEST_SUITE("planner") {

TEST_CASE("whole turns quantize without overshoot") {
  const PlannerCalibration cal;  // 1 m, 60 deg per cycle
  const Plan p = plan(Goal::turn(180.0, TurnDirection::Left), cal);
  REQUIRE(p.program.primitives.size() == 1);
  CHECK(p.program.primitives[0].kind == PrimitiveKind::TurnLeft);
  CHECK(p.program.primitives[0].cycles == 3);
  CHECK(p.overshoot_deg == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));

  const Plan q = plan(Goal::turn(90.0, TurnDirection::Right), cal);
  CHECK(q.program.primitives[0].kind == PrimitiveKind::TurnRight);
  CHECK(q.program.primitives[0].cycles == 2);
  CHECK(q.overshoot_deg == doctest::Approx(30.0).epsilon(1e-12));
}

TEST_CASE("advances always round the cycle count up") {
  const PlannerCalibration cal;
  CHECK(plan(Goal::advance(5.0), cal).program.primitives[0].cycles == 5);
  CHECK(plan(Goal::advance(0.5), cal).program.primitives[0].cycles == 1);
  CHECK(plan(Goal::advance(0.5), cal).overshoot_m ==
        doctest::Approx(0.5).epsilon(1e-12));
  CHECK(plan(Goal::advance(2.5), cal).program.primitives[0].cycles == 3);
  // near-exact multiples are not bumped by floating point noise
  CHECK(plan(Goal::advance(2.0000000000000004), cal)
            .program.primitives[0]
            .cycles == 2);
}

TEST_CASE("headland turns are a named half-circle") {
  const PlannerCalibration cal;
  const Plan p = plan(Goal::headland_turn(TurnDirection::Right), cal);
  CHECK(p.program.name == "headland_turn");
  CHECK(p.program.primitives[0].kind == PrimitiveKind::TurnRight);
  CHECK(p.program.primitives[0].cycles == 3);
}

TEST_CASE("row missions alternate the headland direction starting left") {
  const PlannerCalibration cal;
  const Plan p = plan(Goal::row_mission(4.5, 3), cal);
  CHECK(p.program.tool_engaged);
  REQUIRE(p.program.primitives.size() == 5);
  CHECK(p.program.primitives[0].kind == PrimitiveKind::Straight);
  CHECK(p.program.primitives[0].cycles == 5);
  CHECK(p.program.primitives[1].kind == PrimitiveKind::TurnLeft);
  CHECK(p.program.primitives[1].cycles == 3);
  CHECK(p.program.primitives[2].kind == PrimitiveKind::Straight);
  CHECK(p.program.primitives[3].kind == PrimitiveKind::TurnRight);
  CHECK(p.program.primitives[4].kind == PrimitiveKind::Straight);
  CHECK(p.overshoot_m == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(p.overshoot_deg == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
}

TEST_CASE("invalid goals and calibrations are rejected") {
  const PlannerCalibration cal;
  CHECK_THROWS_AS(plan(Goal::advance(0.0), cal), InvalidGoal);
  CHECK_THROWS_AS(plan(Goal::advance(-2.0), cal), InvalidGoal);
  CHECK_THROWS_AS(plan(Goal::turn(0.0, TurnDirection::Left), cal),
                  InvalidGoal);
  CHECK_THROWS_AS(plan(Goal::turn(400.0, TurnDirection::Left), cal),
                  InvalidGoal);
  CHECK_THROWS_AS(plan(Goal::row_mission(5.0, 0), cal), InvalidGoal);
  CHECK_THROWS_AS(plan(Goal::row_mission(0.0, 2), cal), InvalidGoal);

  PlannerCalibration bad;
  bad.advance_per_cycle = 0.0;
  CHECK_THROWS_AS(plan(Goal::advance(1.0), bad), InvalidCalibration);
  bad = PlannerCalibration{};
  bad.turn_per_cycle_deg = -60.0;
  CHECK_THROWS_AS(plan(Goal::turn(90.0, TurnDirection::Left), bad),
                  InvalidCalibration);
}

TEST_CASE("configs imply their own per-cycle calibration") {
  const SimConfig config;
  const PlannerCalibration cal = calibration_of(config);
  CHECK(cal.advance_per_cycle == doctest::Approx(1.00016).epsilon(1e-12));
  CHECK(cal.turn_per_cycle_deg ==
        doctest::Approx(52.83595415918077).epsilon(1e-12));
}

TEST_CASE("planned turns meet the goal when simulated") {
  const SimConfig config;
  const PlannerCalibration cal = calibration_of(config);
  const Plan p = plan(Goal::turn(180.0, TurnDirection::Left), cal);
  CHECK(p.program.primitives[0].cycles == 4);

  const SimResult result = simulate(config, p.program);
  CHECK(result.total_turn_deg >= 180.0 - 1e-9);
  CHECK(result.total_turn_deg - 180.0 <= cal.turn_per_cycle_deg);
  CHECK(result.total_turn_deg ==
        doctest::Approx(180.0 + p.overshoot_deg).epsilon(1e-9));
}

TEST_CASE("planned advances meet the goal when simulated") {
  const SimConfig config;
  const PlannerCalibration cal = calibration_of(config);
  const Plan p = plan(Goal::advance(5.0), cal);
  const SimResult result = simulate(config, p.program);
  const double gained = net_advance(result.samples);
  CHECK(gained >= 5.0 - 1e-9);
  CHECK(gained - 5.0 <= cal.advance_per_cycle);
  CHECK(gained == doctest::Approx(5.0 + p.overshoot_m).epsilon(1e-9));
}

TEST_CASE("predictions match simulation for simple programs") {
  const SimConfig config;
  Program straight;
  straight.name = "s";
  straight.primitives = {{PrimitiveKind::Straight, 5}};
  const Prediction p = predict(straight, config);
  const SimResult sim_result = simulate(config, straight);
  CHECK(p.duration_s ==
        doctest::Approx(sim_result.duration).epsilon(1e-12));
  CHECK(p.energy_wh == doctest::Approx(sim_result.energy_wh).epsilon(1e-12));
  CHECK(p.net_advance_m ==
        doctest::Approx(net_advance(sim_result.samples)).epsilon(1e-9));
  CHECK(p.net_turn_deg == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));

  Program turn;
  turn.name = "t";
  turn.primitives = {{PrimitiveKind::TurnLeft, 3}};
  const Prediction q = predict(turn, config);
  const SimResult turn_result = simulate(config, turn);
  CHECK(q.duration_s ==
        doctest::Approx(turn_result.duration).epsilon(1e-12));
  CHECK(q.net_turn_deg ==
        doctest::Approx(turn_result.total_turn_deg).epsilon(1e-9));
  CHECK(q.energy_wh ==
        doctest::Approx(turn_result.energy_wh).epsilon(1e-12));
}

}  // TEST_SUITE
