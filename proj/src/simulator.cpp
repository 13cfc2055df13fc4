#include "interlock/simulator.hpp"

#include "interlock/kinematics.hpp"

#include <algorithm>
#include <cmath>

namespace interlock {

void SimConfig::validate() const {
  geometry.validate();
  weight_transfer.validate(geometry);
  soil.validate();
  timing.validate();
  power.validate();
  if (!(dt > 0.0)) throw ConfigError("dt must be positive");
  if (draft_force < 0.0) throw ConfigError("draft_force must be >= 0");
}

Vec2 prism_position(const VehicleGeometry& geom, const Pose& pose) {
  return pose.to_world({geom.prism_offset, 0.0});
}

std::vector<TrajectoryPoint> trajectory_of(
    const std::vector<TelemetrySample>& samples) {
  std::vector<TrajectoryPoint> out;
  out.reserve(samples.size());
  for (const TelemetrySample& s : samples) out.push_back({s.t, s.pose});
  return out;
}

namespace {

constexpr double kBoundaryEps = 1e-9;

bool is_traction(PhaseType t) {
  return t == PhaseType::TractionPull || t == PhaseType::TractionPushBack;
}

SpikeState& spike_of(SimState& st, AnchorSide side) {
  return side == AnchorSide::Left ? st.left : st.right;
}

double lerp(double a, double b, double u) { return a + (b - a) * u; }

/* Weight-transfer offsets of the effective center at slide fraction u
 * (0 = contracted, 1 = extended). */
Vec2 wt_offset(const WeightTransferModel& wt, double side, double u) {
  return {lerp(wt.y_contracted, wt.y_extended, u),
          side * lerp(wt.z_contracted, wt.z_extended, u)};
}

/* Re-derives the anchored-ray context (anchor bearing and radial
 * distance) from the current pose and the true slide station. Used when
 * a grip-lost step dragged the anchor off its ray. */
void reanchor(SimState& st, const Phase& phase, const SimConfig& config) {
  const VehicleGeometry& g = config.geometry;
  const double sign = side_sign(phase.side);
  const double station = g.x_contracted + st.slide_offset;
  st.anchor = st.pose.to_world({station, sign * g.spike_half_spacing});
  Vec2 center = st.pose.position();
  if (phase.type == PhaseType::TractionPushBack) {
    const Vec2 off =
        wt_offset(config.weight_transfer, sign, st.slide_offset / g.stroke);
    center = st.pose.to_world(off);
  }
  const Vec2 d = st.anchor - center;
  st.anchor_bearing = std::atan2(d.y, d.x);
  st.radial = d.norm();
}

}  // namespace

void begin_phase(SimState& st, const Phase& phase, const SimConfig& config,
                 std::mt19937_64& rng) {
  st.phase_elapsed = 0.0;
  st.phase_slip = 0.0;
  st.grip_lost = false;
  switch (phase.type) {
    case PhaseType::SpikeDown:
      spike_of(st, phase.side).mode = phase.mode;
      spike_of(st, phase.side).depth = 0.0;
      break;
    case PhaseType::SpikeUp:
      st.ramp_from = spike_of(st, phase.side).depth;
      break;
    case PhaseType::TractionPull: {
      st.grip_lost = draw_grip_loss(config.soil, rng);
      if (phase.turning) {
        reanchor(st, phase, config);
      } else {
        const double draft =
            st.tool == ToolState::Lowered ? config.draft_force : 0.0;
        const double depth = passive_penetration_depth(draft, config.soil);
        st.left.depth = depth;
        st.right.depth = depth;
        st.phase_slip = effective_slip(draft, config.soil);
      }
      break;
    }
    case PhaseType::TractionPushBack:
      st.grip_lost = draw_grip_loss(config.soil, rng);
      reanchor(st, phase, config);
      break;
    default:
      break;
  }
}

void step(SimState& st, const Phase& phase, double h, const SimConfig& config) {
  const VehicleGeometry& g = config.geometry;
  const bool last = st.phase_elapsed + h >= phase.duration - kBoundaryEps;
  const double progress =
      last ? 1.0 : (st.phase_elapsed + h) / phase.duration;
  const double slide_end = phase.slide_travel > 0.0 ? g.stroke : 0.0;
  const double slide_new =
      last ? slide_end
           : st.slide_offset + phase.slide_travel * (h / phase.duration);
  const double couple_fraction =
      st.grip_lost ? config.soil.grip_degraded_fraction : 1.0;

  switch (phase.type) {
    case PhaseType::LowerTool:
      if (last) st.tool = ToolState::Lowered;
      break;
    case PhaseType::RaiseTool:
      if (last) st.tool = ToolState::Raised;
      break;
    case PhaseType::SlideToFront:
      st.slide_offset = slide_new;
      break;
    case PhaseType::SpikeDown: {
      SpikeState& sp = spike_of(st, phase.side);
      const double target = phase.mode == SpikeMode::ActiveDown
                                ? config.soil.max_depth
                                : config.soil.self_weight_depth;
      sp.depth = target * progress;
      break;
    }
    case PhaseType::SpikeUp: {
      SpikeState& sp = spike_of(st, phase.side);
      sp.depth = st.ramp_from * (1.0 - progress);
      if (last) {
        sp.depth = 0.0;
        sp.mode = SpikeMode::Retracted;
      }
      break;
    }
    case PhaseType::TractionPull: {
      const double d_slide = slide_new - st.slide_offset;  // <= 0
      if (!phase.turning) {
        const double gain = -d_slide * (1.0 - st.phase_slip) * couple_fraction;
        const Vec2 fwd = st.pose.forward();
        st.pose.x += fwd.x * gain;
        st.pose.y += fwd.y * gain;
        st.slide_offset = slide_new;
        break;
      }
      const double sign = side_sign(phase.side);
      const double s_lat = sign * g.spike_half_spacing;
      const double x_old = g.x_contracted + st.slide_offset;
      const double coupled = d_slide * couple_fraction;
      const double x_couple = x_old + coupled;
      const double theta =
          st.anchor_bearing - std::atan2(s_lat, x_couple);
      st.radial += x_old * coupled / st.radial;
      if (st.radial < 1e-6)
        throw DegenerateGeometry("anchored-motion radius collapsed");
      const Vec2 ray{std::cos(st.anchor_bearing),
                     std::sin(st.anchor_bearing)};
      const Vec2 center = st.anchor - ray * st.radial;
      st.pose = {center.x, center.y, normalize_angle(theta)};
      st.slide_offset = slide_new;
      if (couple_fraction < 1.0) reanchor(st, phase, config);
      break;
    }
    case PhaseType::TractionPushBack: {
      const double d_slide = slide_new - st.slide_offset;  // >= 0
      const double sign = side_sign(phase.side);
      const double u_old = st.slide_offset / g.stroke;
      const Vec2 off_old = wt_offset(config.weight_transfer, sign, u_old);
      const double x_eff_old =
          g.x_contracted + st.slide_offset - off_old.x;
      const double s_eff_old = sign * g.spike_half_spacing - off_old.y;
      const double slide_couple =
          st.slide_offset + d_slide * couple_fraction;
      const double u_new = slide_couple / g.stroke;
      const Vec2 off_new = wt_offset(config.weight_transfer, sign, u_new);
      const double x_eff = g.x_contracted + slide_couple - off_new.x;
      const double s_eff = sign * g.spike_half_spacing - off_new.y;
      const double theta = st.anchor_bearing - std::atan2(s_eff, x_eff);
      st.radial += (x_eff_old * (x_eff - x_eff_old) +
                    s_eff_old * (s_eff - s_eff_old)) /
                   st.radial;
      if (st.radial < 1e-6)
        throw DegenerateGeometry("anchored-motion radius collapsed");
      const Vec2 ray{std::cos(st.anchor_bearing),
                     std::sin(st.anchor_bearing)};
      const Vec2 shifted = st.anchor - ray * st.radial;
      const Vec2 center = shifted - rotate(off_new, theta);
      st.pose = {center.x, center.y, normalize_angle(theta)};
      st.slide_offset = slide_new;
      if (couple_fraction < 1.0) reanchor(st, phase, config);
      break;
    }
  }
  st.phase_elapsed += h;
  st.elapsed += h;
}

SimResult simulate(const SimConfig& config, const Program& program) {
  config.validate();
  const CompiledProgram compiled =
      compile_program(program, config.geometry, config.timing);

  double shortest = compiled.phases.front().duration;
  for (const Phase& p : compiled.phases)
    shortest = std::min(shortest, p.duration);
  if (config.dt > shortest / 10.0 + 1e-12)
    throw ConfigError("dt must be at most a tenth of the shortest phase");

  std::mt19937_64 rng(config.seed);
  SimState st;
  st.pose = config.initial_pose;
  st.pose.heading = normalize_angle(st.pose.heading);

  SimResult res;
  res.seed = config.seed;
  res.samples.reserve(
      static_cast<std::size_t>(compiled.total_duration / config.dt) + 2);

  double turn_acc = 0.0;
  double path = 0.0;
  Vec2 prev_pos = st.pose.position();
  double prev_heading = st.pose.heading;

  auto do_step = [&](const Phase& phase, double h) {
    step(st, phase, h, config);
    path += (st.pose.position() - prev_pos).norm();
    turn_acc += normalize_angle(st.pose.heading - prev_heading);
    prev_pos = st.pose.position();
    prev_heading = st.pose.heading;
  };
  auto emit = [&](const Phase& phase, double t) {
    TelemetrySample s;
    s.t = t;
    s.pose = st.pose;
    s.slide_offset = st.slide_offset;
    s.phase = phase.label;
    s.left = st.left;
    s.right = st.right;
    s.tool = st.tool;
    s.drive_current = phase_drive_current(phase.type, config.power);
    s.power = config.power.bus_voltage *
              (config.power.idle_current + s.drive_current);
    res.samples.push_back(std::move(s));
  };

  double t = 0.0;
  long grid = 0;
  for (const Phase& phase : compiled.phases) {
    begin_phase(st, phase, config, rng);
    if (st.grip_lost && is_traction(phase.type)) ++res.grip_loss_events;
    const double t_end = t + phase.duration;
    while (grid * config.dt <= t + kBoundaryEps) {
      emit(phase, grid * config.dt);
      ++grid;
    }
    while (grid * config.dt < t_end - kBoundaryEps) {
      const double tg = grid * config.dt;
      do_step(phase, tg - t);
      t = tg;
      emit(phase, t);
      ++grid;
    }
    do_step(phase, t_end - t);
    t = t_end;
  }
  if (res.samples.empty() || res.samples.back().t < t - kBoundaryEps)
    emit(compiled.phases.back(), t);

  res.final_pose = st.pose;
  res.duration = t;
  res.total_turn_deg = deg(turn_acc);
  res.distance = path;
  double joules = 0.0;
  double max_current = 0.0;
  for (const Phase& p : compiled.phases) {
    const double drive = phase_drive_current(p.type, config.power);
    joules += config.power.bus_voltage *
              (config.power.idle_current + drive) * p.duration;
    max_current = std::max(max_current, drive);
  }
  res.energy_wh = joules / 3600.0;
  res.mean_power_w = joules / t;
  res.max_power_w =
      config.power.bus_voltage * (config.power.idle_current + max_current);
  return res;
}

double mean_power(const std::vector<TelemetrySample>& samples, double t_begin,
                  double t_end) {
  std::vector<const TelemetrySample*> in;
  for (const TelemetrySample& s : samples)
    if (s.t >= t_begin - kBoundaryEps && s.t <= t_end + kBoundaryEps)
      in.push_back(&s);
  if (in.empty()) throw EmptyWindow("no telemetry in the requested window");
  if (in.size() == 1) return in.front()->power;
  double joules = 0.0;
  for (std::size_t i = 0; i + 1 < in.size(); ++i)
    joules += in[i]->power * (in[i + 1]->t - in[i]->t);
  return joules / (in.back()->t - in.front()->t);
}

}  // namespace interlock
