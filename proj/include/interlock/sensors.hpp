/**
 * @file sensors.hpp
 * Emulated survey-prism and IMU-yaw streams over a ground-truth
 * trajectory, and their fusion onto the IMU timeline.
 */
#pragma once

#include "interlock/errors.hpp"
#include "interlock/se2.hpp"
#include "interlock/simulator.hpp"

#include <cstdint>
#include <vector>

namespace interlock {

struct SensorSpec {
  double prism_rate_hz = 5.0;
  double prism_sigma = 0.002;  // m per axis, ~half the quoted +/-4 mm
  double imu_rate_hz = 50.0;
  double imu_yaw_sigma = 0.0034906585039886593;  // rad (0.2 deg)
  std::uint64_t rng_seed = 0;

  void validate() const;
};

struct PrismSample {
  double t = 0.0;
  Vec2 position;
};

struct ImuSample {
  double t = 0.0;
  double yaw = 0.0;  // radians
};

struct FusedSample {
  double t = 0.0;
  Vec2 position;
  double heading = 0.0;  // radians
};

/* Sensor timestamps are t0 + n/rate over the half-open truth time span;
 * truth is linearly interpolated between trajectory points (headings by
 * shortest arc) and Gaussian noise added per the spec. Deterministic for
 * a given spec (prism stream drawn first, then IMU). */
struct SensorTracks {
  std::vector<PrismSample> prism;
  std::vector<ImuSample> imu;
};

SensorTracks emulate(const std::vector<TrajectoryPoint>& truth,
                     const SensorSpec& spec);

/* Position linearly interpolated between the bracketing prism samples at
 * each IMU timestamp inside the prism span, heading straight from the
 * IMU. A single prism sample yields constant-position output over all
 * IMU timestamps. Throws NoOverlap when either stream is empty or the
 * time ranges are disjoint. */
std::vector<FusedSample> fuse(const std::vector<PrismSample>& prism,
                              const std::vector<ImuSample>& imu);

/* RMS planar distance between fused positions and the truth trajectory
 * interpolated at the fused timestamps. */
double position_rmse(const std::vector<FusedSample>& fused,
                     const std::vector<TrajectoryPoint>& truth);

}  // namespace interlock
