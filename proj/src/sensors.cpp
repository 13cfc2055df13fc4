#include "interlock/sensors.hpp"

#include <algorithm>
#include <cmath>

namespace interlock {

void SensorSpec::validate() const {
  if (!(prism_rate_hz > 0.0) || !(imu_rate_hz > 0.0))
    throw ConfigError("sensor rates must be positive");
  if (prism_sigma < 0.0 || imu_yaw_sigma < 0.0)
    throw ConfigError("sensor sigmas must be >= 0");
}

namespace {

/* Truth pose at time t, linearly interpolated (heading by shortest arc). */
Pose interpolate(const std::vector<TrajectoryPoint>& truth, double t) {
  if (t <= truth.front().t) return truth.front().pose;
  if (t >= truth.back().t) return truth.back().pose;
  auto hi = std::upper_bound(
      truth.begin(), truth.end(), t,
      [](double v, const TrajectoryPoint& p) { return v < p.t; });
  auto lo = hi - 1;
  const double span = hi->t - lo->t;
  const double u = span > 0.0 ? (t - lo->t) / span : 0.0;
  Pose out;
  out.x = std::lerp(lo->pose.x, hi->pose.x, u);
  out.y = std::lerp(lo->pose.y, hi->pose.y, u);
  out.heading = normalize_angle(
      lo->pose.heading +
      normalize_angle(hi->pose.heading - lo->pose.heading) * u);
  return out;
}

std::vector<double> sample_times(double t0, double t_end, double rate) {
  std::vector<double> times;
  for (long n = 0;; ++n) {
    const double t = t0 + n / rate;
    if (t >= t_end - 1e-9) break;
    times.push_back(t);
  }
  return times;
}

}  // namespace

SensorTracks emulate(const std::vector<TrajectoryPoint>& truth,
                     const SensorSpec& spec) {
  spec.validate();
  if (truth.empty()) throw ConfigError("truth trajectory is empty");
  for (std::size_t i = 0; i + 1 < truth.size(); ++i)
    if (truth[i + 1].t < truth[i].t)
      throw ConfigError("truth trajectory must be time-ordered");

  std::mt19937_64 rng(spec.rng_seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double t0 = truth.front().t;
  const double t_end = truth.back().t;

  SensorTracks tracks;
  for (double t : sample_times(t0, t_end, spec.prism_rate_hz)) {
    const Pose p = interpolate(truth, t);
    tracks.prism.push_back(
        {t, {p.x + gauss(rng) * spec.prism_sigma,
             p.y + gauss(rng) * spec.prism_sigma}});
  }
  for (double t : sample_times(t0, t_end, spec.imu_rate_hz)) {
    const Pose p = interpolate(truth, t);
    tracks.imu.push_back(
        {t, normalize_angle(p.heading + gauss(rng) * spec.imu_yaw_sigma)});
  }
  return tracks;
}

std::vector<FusedSample> fuse(const std::vector<PrismSample>& prism,
                              const std::vector<ImuSample>& imu) {
  if (prism.empty() || imu.empty())
    throw NoOverlap("a sensor stream is empty");

  std::vector<FusedSample> fused;
  if (prism.size() == 1) {
    for (const ImuSample& m : imu)
      fused.push_back({m.t, prism.front().position, m.yaw});
    return fused;
  }
  const double p0 = prism.front().t;
  const double p1 = prism.back().t;
  if (imu.back().t < p0 - 1e-9 || imu.front().t > p1 + 1e-9)
    throw NoOverlap("sensor time ranges are disjoint");

  auto cursor = prism.begin();
  for (const ImuSample& m : imu) {
    if (m.t < p0 - 1e-9 || m.t > p1 + 1e-9) continue;
    while (cursor + 1 != prism.end() && (cursor + 1)->t < m.t) ++cursor;
    const PrismSample& a = *cursor;
    const PrismSample& b = *(cursor + 1 != prism.end() ? cursor + 1 : cursor);
    const double span = b.t - a.t;
    const double u =
        span > 0.0 ? std::clamp((m.t - a.t) / span, 0.0, 1.0) : 0.0;
    fused.push_back(
        {m.t, {std::lerp(a.position.x, b.position.x, u),
               std::lerp(a.position.y, b.position.y, u)},
         m.yaw});
  }
  if (fused.empty())
    throw NoOverlap("no IMU timestamps fall inside the prism span");
  return fused;
}

double position_rmse(const std::vector<FusedSample>& fused,
                     const std::vector<TrajectoryPoint>& truth) {
  if (fused.empty() || truth.empty())
    throw EmptyWindow("nothing to compare");
  double sq = 0.0;
  for (const FusedSample& f : fused) {
    const Pose p = interpolate(truth, f.t);
    const double dx = f.position.x - p.x;
    const double dy = f.position.y - p.y;
    sq += dx * dx + dy * dy;
  }
  return std::sqrt(sq / static_cast<double>(fused.size()));
}

}  // namespace interlock
