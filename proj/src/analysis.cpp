#include "interlock/analysis.hpp"

#include "interlock/kinematics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace interlock {

namespace {

struct LabelParts {
  int primitive_index = -1;
  int cycle_index = -1;  // -1 for setup phases
  PrimitiveKind kind = PrimitiveKind::Straight;
  bool ok = false;
};

/* Labels look like "p0.turn_left.c2.traction_pull" or
 * "p1.straight.setup.slide_to_front". */
LabelParts parse_label(const std::string& label) {
  LabelParts parts;
  if (label.size() < 2 || label[0] != 'p') return parts;
  std::size_t a = label.find('.');
  if (a == std::string::npos) return parts;
  try {
    parts.primitive_index = std::stoi(label.substr(1, a - 1));
  } catch (...) {
    return parts;
  }
  std::size_t b = label.find('.', a + 1);
  if (b == std::string::npos) return parts;
  const std::string kind = label.substr(a + 1, b - a - 1);
  if (kind == "straight")
    parts.kind = PrimitiveKind::Straight;
  else if (kind == "turn_left")
    parts.kind = PrimitiveKind::TurnLeft;
  else if (kind == "turn_right")
    parts.kind = PrimitiveKind::TurnRight;
  else
    return parts;
  std::size_t c = label.find('.', b + 1);
  const std::string cyc =
      label.substr(b + 1, c == std::string::npos ? c : c - b - 1);
  if (cyc == "setup") {
    parts.cycle_index = -1;
  } else if (cyc.size() > 1 && cyc[0] == 'c') {
    try {
      parts.cycle_index = std::stoi(cyc.substr(1));
    } catch (...) {
      return parts;
    }
  } else {
    return parts;
  }
  parts.ok = true;
  return parts;
}

std::vector<double> unwrapped_headings(
    const std::vector<TelemetrySample>& samples) {
  std::vector<double> h(samples.size());
  if (samples.empty()) return h;
  h[0] = samples[0].pose.heading;
  for (std::size_t i = 1; i < samples.size(); ++i)
    h[i] = h[i - 1] +
           normalize_angle(samples[i].pose.heading - samples[i - 1].pose.heading);
  return h;
}

}  // namespace

std::vector<CycleSpan> cycle_spans(const std::vector<TelemetrySample>& samples) {
  std::vector<CycleSpan> spans;
  int cur_prim = -1;
  int cur_cycle = -1;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const LabelParts parts = parse_label(samples[i].phase);
    if (!parts.ok || parts.cycle_index < 0) continue;
    if (parts.primitive_index == cur_prim && parts.cycle_index == cur_cycle)
      continue;
    CycleSpan span;
    span.begin = i;
    span.primitive_index = parts.primitive_index;
    span.cycle_index = parts.cycle_index;
    span.kind = parts.kind;
    spans.push_back(span);
    cur_prim = parts.primitive_index;
    cur_cycle = parts.cycle_index;
  }
  for (std::size_t j = 0; j < spans.size(); ++j)
    spans[j].end = j + 1 < spans.size() ? spans[j + 1].begin
                                        : samples.size() - 1;
  return spans;
}

std::vector<double> per_cycle_turns(const std::vector<TelemetrySample>& samples,
                                    const std::vector<std::size_t>& boundaries) {
  if (boundaries.size() < 2)
    throw BadBoundaries("need at least two boundary indices");
  for (std::size_t j = 0; j < boundaries.size(); ++j) {
    if (boundaries[j] >= samples.size())
      throw BadBoundaries("boundary index out of range");
    if (j > 0 && boundaries[j] <= boundaries[j - 1])
      throw BadBoundaries("boundary indices must be strictly increasing");
  }
  const std::vector<double> h = unwrapped_headings(samples);
  std::vector<double> turns;
  turns.reserve(boundaries.size() - 1);
  for (std::size_t j = 0; j + 1 < boundaries.size(); ++j)
    turns.push_back(deg(h[boundaries[j + 1]] - h[boundaries[j]]));
  return turns;
}

CircleFit fit_circle(const std::vector<Vec2>& points) {
  if (points.size() < 3)
    throw DegenerateFit("need at least three points");
  const double n = static_cast<double>(points.size());
  Vec2 mean{0.0, 0.0};
  for (const Vec2& p : points) mean = mean + p;
  mean = mean * (1.0 / n);

  double suu = 0.0, suv = 0.0, svv = 0.0;
  double suuu = 0.0, svvv = 0.0, suvv = 0.0, svuu = 0.0;
  for (const Vec2& p : points) {
    const double u = p.x - mean.x;
    const double v = p.y - mean.y;
    suu += u * u;
    suv += u * v;
    svv += v * v;
    suuu += u * u * u;
    svvv += v * v * v;
    suvv += u * v * v;
    svuu += v * u * u;
  }
  const double det = suu * svv - suv * suv;
  const double trace = suu + svv;
  if (!(trace > 0.0) || std::abs(det) < 1e-12 * trace * trace)
    throw DegenerateFit("points are collinear or coincident");

  const double rhs_u = 0.5 * (suuu + suvv);
  const double rhs_v = 0.5 * (svvv + svuu);
  const double a = (rhs_u * svv - rhs_v * suv) / det;
  const double b = (rhs_v * suu - rhs_u * suv) / det;

  CircleFit fit;
  fit.center = {mean.x + a, mean.y + b};
  fit.radius = std::sqrt(a * a + b * b + trace / n);
  double sq = 0.0;
  for (const Vec2& p : points) {
    const double r = (p - fit.center).norm() - fit.radius;
    sq += r * r;
  }
  fit.rms_residual = std::sqrt(sq / n);
  return fit;
}

RotationCenter fit_center_of_rotation(
    const std::vector<TelemetrySample>& samples, const VehicleGeometry& geom) {
  std::vector<CycleSpan> turns;
  for (const CycleSpan& span : cycle_spans(samples))
    if (span.kind != PrimitiveKind::Straight) turns.push_back(span);
  if (turns.empty()) throw BadBoundaries("no turn cycles in telemetry");

  std::vector<Vec2> boundary_positions;
  boundary_positions.reserve(turns.size() + 1);
  for (const CycleSpan& span : turns)
    boundary_positions.push_back(samples[span.begin].pose.position());
  boundary_positions.push_back(samples[turns.back().end].pose.position());

  RotationCenter out;
  out.fit = fit_circle(boundary_positions);
  const Pose& start = samples[turns.front().begin].pose;
  out.spike_midpoint = start.to_world({geom.x_extended, 0.0});
  out.lateral_offset = start.to_local(out.fit.center).y;
  return out;
}

Footprint footprint(const std::vector<TelemetrySample>& samples,
                    const VehicleGeometry& geom) {
  Footprint fp;
  fp.turning_space = geom.stroke;
  if (samples.empty()) return fp;
  double min_x = std::numeric_limits<double>::infinity();
  double max_x = -min_x, min_y = min_x, max_y = -min_x;
  for (const TelemetrySample& s : samples) {
    const Vec2 p = prism_position(geom, s.pose);
    min_x = std::min(min_x, p.x);
    max_x = std::max(max_x, p.x);
    min_y = std::min(min_y, p.y);
    max_y = std::max(max_y, p.y);
  }
  fp.extent_x = max_x - min_x;
  fp.extent_y = max_y - min_y;
  fp.turning_space = std::max(fp.extent_x, fp.extent_y) + geom.stroke;
  return fp;
}

double net_advance(const std::vector<TelemetrySample>& samples) {
  if (samples.size() < 2) return 0.0;
  const Vec2 d = samples.back().pose.position() - samples.front().pose.position();
  return d.dot(samples.front().pose.forward());
}

TurnReport analyze(const std::vector<TelemetrySample>& samples,
                   const VehicleGeometry& geom) {
  TurnReport report;
  if (samples.empty()) return report;

  const std::vector<CycleSpan> spans = cycle_spans(samples);
  if (!spans.empty()) {
    std::vector<std::size_t> boundaries;
    boundaries.reserve(spans.size() + 1);
    for (const CycleSpan& span : spans) boundaries.push_back(span.begin);
    boundaries.push_back(spans.back().end);
    report.per_cycle_deg = per_cycle_turns(samples, boundaries);
  }

  const std::vector<double> h = unwrapped_headings(samples);
  report.total_turn_deg = deg(h.back() - h.front());
  report.net_advance_m = net_advance(samples);
  for (std::size_t i = 1; i < samples.size(); ++i)
    report.path_length_m +=
        (samples[i].pose.position() - samples[i - 1].pose.position()).norm();
  try {
    report.rotation = fit_center_of_rotation(samples, geom).fit;
  } catch (const Error&) {
    report.rotation.reset();
  }
  report.footprint = footprint(samples, geom);
  return report;
}

namespace {

double get_param(const SimConfig& config, FreeParam param) {
  switch (param) {
    case FreeParam::XContracted: return config.geometry.x_contracted;
    case FreeParam::SpikeHalfSpacing: return config.geometry.spike_half_spacing;
    case FreeParam::WtAxial: return config.weight_transfer.y_contracted;
    case FreeParam::WtLateral: return config.weight_transfer.z_contracted;
    case FreeParam::BaseSlip: return config.soil.base_slip;
  }
  throw ConfigError("unknown calibration parameter");
}

void set_param(SimConfig& config, FreeParam param, double value) {
  switch (param) {
    case FreeParam::XContracted:
      config.geometry.x_contracted = value;
      config.geometry.x_extended = value + config.geometry.stroke;
      return;
    case FreeParam::SpikeHalfSpacing:
      config.geometry.spike_half_spacing = value;
      return;
    case FreeParam::WtAxial:
      config.weight_transfer.y_contracted = value;
      config.weight_transfer.y_extended = value;
      return;
    case FreeParam::WtLateral:
      config.weight_transfer.z_contracted = value;
      config.weight_transfer.z_extended = value;
      return;
    case FreeParam::BaseSlip:
      config.soil.base_slip = value;
      return;
  }
  throw ConfigError("unknown calibration parameter");
}

double target_residual(const SimConfig& config,
                       const CalibrationTargets& targets) {
  try {
    config.geometry.validate();
    config.weight_transfer.validate(config.geometry);
    config.soil.validate();
    double sq = 0.0;
    auto miss = [&sq](double value, double target) {
      const double d = value - target;
      sq += d * d;
    };
    if (targets.alpha_deg)
      miss(std::abs(deg(alpha(config.geometry, AnchorSide::Left))),
           *targets.alpha_deg);
    if (targets.beta_deg)
      miss(std::abs(deg(beta(config.geometry, config.weight_transfer,
                             AnchorSide::Left))),
           *targets.beta_deg);
    if (targets.per_cycle_deg)
      miss(std::abs(deg(cycle_turn_angle(config.geometry,
                                         config.weight_transfer,
                                         TurnDirection::Left))),
           *targets.per_cycle_deg);
    if (targets.advance_m)
      miss(straight_cycle_advance(config.geometry.stroke,
                                  config.soil.base_slip),
           *targets.advance_m);
    return std::sqrt(sq);
  } catch (const Error&) {
    return std::numeric_limits<double>::infinity();
  }
}

}  // namespace

CalibrationResult calibrate(const SimConfig& initial,
                            const CalibrationTargets& targets,
                            const std::vector<FreeParam>& free_params,
                            double tol, int max_iterations) {
  if (!targets.alpha_deg && !targets.beta_deg && !targets.per_cycle_deg &&
      !targets.advance_m)
    throw InvalidCalibration("no calibration targets given");
  if (free_params.empty())
    throw InvalidCalibration("no free parameters given");
  for (std::size_t i = 0; i < free_params.size(); ++i)
    for (std::size_t j = i + 1; j < free_params.size(); ++j)
      if (free_params[i] == free_params[j])
        throw InvalidCalibration("duplicate free parameter");
  if (!(tol > 0.0) || max_iterations < 0)
    throw InvalidCalibration("tol must be > 0 and max_iterations >= 0");

  CalibrationResult result;
  result.config = initial;
  result.residual = target_residual(result.config, targets);
  if (result.residual <= tol) return result;

  std::vector<double> steps(free_params.size());
  for (std::size_t k = 0; k < free_params.size(); ++k) {
    const double v = get_param(result.config, free_params[k]);
    steps[k] = std::max(0.25 * std::abs(v), 0.05);
  }

  for (int iter = 1; iter <= max_iterations; ++iter) {
    result.iterations = iter;
    bool improved = false;
    for (std::size_t k = 0; k < free_params.size(); ++k) {
      const double v = get_param(result.config, free_params[k]);
      for (double candidate : {v + steps[k], v - steps[k]}) {
        SimConfig trial = result.config;
        set_param(trial, free_params[k], candidate);
        const double r = target_residual(trial, targets);
        if (r < result.residual) {
          result.config = trial;
          result.residual = r;
          improved = true;
        }
      }
    }
    if (result.residual <= tol) return result;
    if (!improved) {
      double max_step = 0.0;
      for (double& s : steps) {
        s *= 0.5;
        max_step = std::max(max_step, s);
      }
      if (max_step < 1e-12) break;
    }
  }
  throw CalibrationFailed("calibration residual " +
                          std::to_string(result.residual) +
                          " did not reach tolerance");
}

}  // namespace interlock
