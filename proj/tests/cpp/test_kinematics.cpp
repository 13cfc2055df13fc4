#include <doctest.h>

#include "interlock/kinematics.hpp"

#include <cmath>
#include <random>

using namespace interlock;

namespace {

VehicleGeometry random_geometry(std::mt19937& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  VehicleGeometry g;
  g.x_contracted = 0.2 + 0.8 * u(rng);
  g.stroke = 0.3 + 1.7 * u(rng);
  g.x_extended = g.x_contracted + g.stroke;
  g.spike_half_spacing = 0.05 + 0.55 * u(rng);
  return g;
}

WeightTransferModel random_weight_transfer(const VehicleGeometry& g,
                                           std::mt19937& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  WeightTransferModel wt;
  wt.y_contracted = 0.8 * g.x_contracted * u(rng);
  wt.y_extended = wt.y_contracted;
  wt.z_contracted = 0.8 * g.spike_half_spacing * u(rng);
  wt.z_extended = wt.z_contracted;
  return wt;
}

/* Heading change of an anchored sweep by direct integration, against the
 * closed form. Returns |integrated - closed|. */
double contraction_error(const VehicleGeometry& g, AnchorSide side,
                         int steps) {
  const Pose start{0.0, 0.0, 1.2};
  const Vec2 spike = start.to_world(
      {g.x_extended, side_sign(side) * g.spike_half_spacing});
  const Pose end = integrate_anchored_motion(start, spike, -g.stroke, steps);
  const double expected = normalize_angle(start.heading + alpha(g, side));
  return std::abs(normalize_angle(end.heading - expected));
}

}  // namespace

TEST_SUITE("kinematics") {

TEST_CASE("contraction sweep angle matches the reference geometry") {
  const VehicleGeometry g;
  CHECK(deg(alpha(g, AnchorSide::Left)) ==
        doctest::Approx(-20.99862474008509).epsilon(1e-12));
  CHECK(deg(alpha(g, AnchorSide::Right)) ==
        doctest::Approx(20.99862474008509).epsilon(1e-12));
}

TEST_CASE("expansion sweep angle matches the reference weight transfer") {
  const VehicleGeometry g;
  const WeightTransferModel wt;
  CHECK(deg(beta(g, wt, AnchorSide::Left)) ==
        doctest::Approx(-31.83732941909568).epsilon(1e-12));
  CHECK(deg(beta(g, wt, AnchorSide::Right)) ==
        doctest::Approx(31.83732941909568).epsilon(1e-12));
}

TEST_CASE("full cycle turn combines both sweeps") {
  const VehicleGeometry g;
  const WeightTransferModel wt;
  const double left = deg(cycle_turn_angle(g, wt, TurnDirection::Left));
  CHECK(left == doctest::Approx(52.83595415918077).epsilon(1e-12));
  CHECK(deg(cycle_turn_angle(g, wt, TurnDirection::Right)) ==
        doctest::Approx(-left).epsilon(1e-12));
}

TEST_CASE("measured weight transfer reproduces the observed turn rate") {
  const VehicleGeometry g;
  WeightTransferModel wt;
  wt.y_extended = wt.y_contracted = 0.255544;
  CHECK(deg(cycle_turn_angle(g, wt, TurnDirection::Left)) ==
        doctest::Approx(60.30003138780291).epsilon(1e-9));
}

TEST_CASE("zero weight transfer makes both sweeps identical") {
  std::mt19937 rng(7001);
  for (int i = 0; i < 1000; ++i) {
    const VehicleGeometry g = random_geometry(rng);
    const WeightTransferModel wt = WeightTransferModel::zero();
    CHECK(beta(g, wt, AnchorSide::Left) == alpha(g, AnchorSide::Left));
    CHECK(beta(g, wt, AnchorSide::Right) == alpha(g, AnchorSide::Right));
  }
}

TEST_CASE("sweep angles are antisymmetric in the anchor side") {
  std::mt19937 rng(7002);
  for (int i = 0; i < 1000; ++i) {
    const VehicleGeometry g = random_geometry(rng);
    const WeightTransferModel wt = random_weight_transfer(g, rng);
    CHECK(alpha(g, AnchorSide::Left) == -alpha(g, AnchorSide::Right));
    CHECK(beta(g, wt, AnchorSide::Left) == -beta(g, wt, AnchorSide::Right));
    CHECK(cycle_turn_angle(g, wt, TurnDirection::Left) ==
          doctest::Approx(-cycle_turn_angle(g, wt, TurnDirection::Right))
              .epsilon(1e-14));
  }
}

TEST_CASE("cycle turn magnitude is the sum of the sweep magnitudes") {
  std::mt19937 rng(7003);
  for (int i = 0; i < 1000; ++i) {
    const VehicleGeometry g = random_geometry(rng);
    const WeightTransferModel wt = random_weight_transfer(g, rng);
    const double total =
        std::abs(cycle_turn_angle(g, wt, TurnDirection::Left));
    const double parts = std::abs(alpha(g, AnchorSide::Left)) +
                         std::abs(beta(g, wt, AnchorSide::Left));
    CHECK(total == doctest::Approx(parts).epsilon(1e-13));
  }
}

TEST_CASE("aligned spikes or a missing sweep turn nothing") {
  VehicleGeometry g;
  g.spike_half_spacing = 0.0;
  CHECK(alpha(g, AnchorSide::Left) == 0.0);
  CHECK(beta(g, WeightTransferModel::zero(), AnchorSide::Left) == 0.0);

  const VehicleGeometry h;
  const Pose start{0.0, 0.0, 0.5};
  const Vec2 spike =
      start.to_world({h.x_extended, h.spike_half_spacing});
  const Pose end = integrate_anchored_motion(start, spike, 0.0, 100);
  CHECK(end.heading == start.heading);
  CHECK(end.x == start.x);
  CHECK(end.y == start.y);
}

TEST_CASE("integrated sweep converges to the closed form") {
  std::mt19937 rng(7004);
  for (int i = 0; i < 1000; ++i) {
    const VehicleGeometry g = random_geometry(rng);
    const AnchorSide side = (i % 2) ? AnchorSide::Left : AnchorSide::Right;
    CHECK(contraction_error(g, side, 1000) <= 1e-6);
  }
}

TEST_CASE("integration error shrinks with the step count") {
  const VehicleGeometry g;
  const double coarse = contraction_error(g, AnchorSide::Left, 4);
  const double medium = contraction_error(g, AnchorSide::Left, 16);
  const double fine = contraction_error(g, AnchorSide::Left, 64);
  CHECK(medium < coarse);
  CHECK(fine <= medium);
}

TEST_CASE("anchored motion keeps the spike on the slide ray") {
  std::mt19937 rng(7005);
  for (int i = 0; i < 200; ++i) {
    const VehicleGeometry g = random_geometry(rng);
    const Pose start{1.0, -2.0, -0.7};
    const Vec2 spike =
        start.to_world({g.x_extended, g.spike_half_spacing});
    const Pose end = integrate_anchored_motion(start, spike, -g.stroke, 2000);
    const Vec2 local = end.to_local(spike);
    CHECK(local.x == doctest::Approx(g.x_contracted).epsilon(1e-6));
    CHECK(local.y == doctest::Approx(g.spike_half_spacing).epsilon(1e-6));
  }
}

TEST_CASE("expansion integrates to the mirrored contraction angle") {
  const VehicleGeometry g;
  const Pose start{0.0, 0.0, 1.5707963267948966};
  const Vec2 spike = start.to_world({g.x_contracted, g.spike_half_spacing});
  const Pose end = integrate_anchored_motion(start, spike, g.stroke, 2000);
  const double swept = normalize_angle(end.heading - start.heading);
  CHECK(swept == doctest::Approx(-alpha(g, AnchorSide::Left)).epsilon(1e-9));
}

TEST_CASE("degenerate anchored motion is rejected") {
  const VehicleGeometry g;
  const Pose start{0.0, 0.0, 0.0};
  CHECK_THROWS_AS(
      integrate_anchored_motion(start, start.position(), 0.5, 100),
      DegenerateGeometry);
  CHECK_THROWS_AS(
      integrate_anchored_motion(start, {g.x_extended, 0.0}, 100, 0),
      ConfigError);

  VehicleGeometry aligned;
  aligned.spike_half_spacing = 0.0;
  const Vec2 spike = start.to_world({aligned.x_extended, 0.0});
  CHECK_THROWS_AS(
      integrate_anchored_motion(start, spike, -aligned.x_extended, 5000),
      DegenerateGeometry);
}

TEST_CASE("straight cycle advance scales the stroke by grip") {
  CHECK(straight_cycle_advance(1.12, 0.0) == 1.12);
  CHECK(straight_cycle_advance(1.12, 1.0) == 0.0);
  CHECK(straight_cycle_advance(1.12, 0.107) ==
        doctest::Approx(1.00016).epsilon(1e-12));
}

TEST_CASE("invalid geometry is rejected") {
  VehicleGeometry g;
  g.stroke = -1.0;
  CHECK_THROWS_AS(g.validate(), InvalidGeometry);
  VehicleGeometry h;
  h.x_extended = h.x_contracted + h.stroke + 0.01;
  CHECK_THROWS_AS(h.validate(), InvalidGeometry);
  VehicleGeometry k;
  k.x_contracted = 0.0;
  k.x_extended = k.stroke;
  CHECK_THROWS_AS(k.validate(), InvalidGeometry);

  WeightTransferModel wt;
  wt.y_contracted = 0.5;
  CHECK_THROWS_AS(wt.validate(VehicleGeometry{}), InvalidWeightTransfer);
}

}  // TEST_SUITE
