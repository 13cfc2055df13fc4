#include <doctest.h>

#include "interlock/soil.hpp"

#include <random>

using namespace interlock;

TEST_SUITE("soil") {

TEST_CASE("passive penetration inverts the holding relation") {
  const SoilModel soil;
  const double depth = passive_penetration_depth(300.0, soil);
  CHECK(depth == doctest::Approx(0.05).epsilon(1e-12));
  CHECK(holding_force(depth, SpikeMode::Passive, soil) >= 300.0 - 1e-9);

  std::mt19937 rng(7101);
  std::uniform_real_distribution<double> force(0.0, 1100.0);
  for (int i = 0; i < 1000; ++i) {
    const double f = force(rng);
    const double d = passive_penetration_depth(f, soil);
    CHECK(holding_force(d, SpikeMode::Passive, soil) >= f - 1e-9);
  }
}

TEST_CASE("light draft still buries the spike to its resting depth") {
  const SoilModel soil;
  CHECK(passive_penetration_depth(0.0, soil) == soil.self_weight_depth);
  const double threshold = soil.holding_coefficient *
                           soil.self_weight_depth * soil.self_weight_depth;
  CHECK(passive_penetration_depth(threshold * 0.5, soil) ==
        soil.self_weight_depth);
  CHECK(passive_penetration_depth(threshold * 2.0, soil) >
        soil.self_weight_depth);
}

TEST_CASE("holding force grows with depth and mode") {
  const SoilModel soil;
  CHECK(holding_force(0.08, SpikeMode::Retracted, soil) == 0.0);
  double prev = 0.0;
  for (double d = 0.01; d <= 0.10 + 1e-12; d += 0.01) {
    const double f = holding_force(d, SpikeMode::Passive, soil);
    CHECK(f > prev);
    prev = f;
    CHECK(holding_force(d, SpikeMode::ActiveDown, soil) >= f);
  }
  CHECK(holding_force(0.03, SpikeMode::ActiveDown, soil) ==
        doctest::Approx(1200.0).epsilon(1e-12));
}

TEST_CASE("unholdable draft is refused") {
  const SoilModel soil;
  const double limit = soil.holding_coefficient * soil.max_depth *
                       soil.max_depth;
  CHECK(passive_penetration_depth(limit - 1e-9, soil) <=
        soil.max_depth + 1e-12);
  CHECK_THROWS_AS(passive_penetration_depth(limit + 1.0, soil),
                  TractionLimitExceeded);
  CHECK_THROWS_AS(passive_penetration_depth(-1.0, soil), ConfigError);
}

TEST_CASE("slip saturates inside the unit interval") {
  SoilModel soil;
  CHECK(effective_slip(300.0, soil) == soil.base_slip);
  soil.slip_load_gain = 0.4;
  const double full = soil.holding_coefficient * soil.max_depth *
                      soil.max_depth;
  CHECK(effective_slip(full, soil) ==
        doctest::Approx(soil.base_slip + 0.4).epsilon(1e-12));
  CHECK(effective_slip(full * 10.0, soil) < 1.0);
  soil.base_slip = 0.0;
  soil.slip_load_gain = 0.0;
  CHECK(effective_slip(500.0, soil) == 0.0);
}

TEST_CASE("grip loss draws respect the configured probability") {
  SoilModel soil;
  std::mt19937_64 rng(7102);
  for (int i = 0; i < 100; ++i) CHECK(!draw_grip_loss(soil, rng));

  soil.grip_loss_probability = 1.0;
  for (int i = 0; i < 100; ++i) CHECK(draw_grip_loss(soil, rng));

  soil.grip_loss_probability = 0.3;
  int hits = 0;
  for (int i = 0; i < 20000; ++i) hits += draw_grip_loss(soil, rng) ? 1 : 0;
  CHECK(hits > 20000 * 0.3 * 0.9);
  CHECK(hits < 20000 * 0.3 * 1.1);
}

TEST_CASE("soil parameters are validated") {
  SoilModel soil;
  soil.holding_coefficient = 0.0;
  CHECK_THROWS_AS(soil.validate(), ConfigError);
  soil = SoilModel{};
  soil.max_depth = soil.self_weight_depth * 0.5;
  CHECK_THROWS_AS(soil.validate(), ConfigError);
  soil = SoilModel{};
  soil.base_slip = 1.0;
  CHECK_THROWS_AS(soil.validate(), ConfigError);
  soil = SoilModel{};
  soil.grip_loss_probability = 1.5;
  CHECK_THROWS_AS(soil.validate(), ConfigError);
  soil = SoilModel{};
  soil.grip_degraded_fraction = -0.1;
  CHECK_THROWS_AS(soil.validate(), ConfigError);
}

}  // TEST_SUITE
