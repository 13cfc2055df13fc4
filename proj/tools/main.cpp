/**
 * Command line front end: simulate, plan, analyze, calibrate, fuse.
 *
 * Exit codes: 0 success, 2 bad input (config/program/CLI), 3 runtime
 * failure (degenerate fit, traction limit, ...).
 */
#include "interlock/analysis.hpp"
#include "interlock/config_io.hpp"
#include "interlock/planner.hpp"
#include "interlock/sensors.hpp"
#include "interlock/simulator.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw interlock::ConfigError("cannot open for writing: " + path.string());
  out << text;
  if (!out) throw interlock::Error("failed writing " + path.string());
}

/* --seed beats INTERLOCK_SIM_SEED beats the config file. */
std::optional<std::uint64_t> env_seed() {
  const char* raw = std::getenv("INTERLOCK_SIM_SEED");
  if (!raw || !*raw) return std::nullopt;
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(raw, &used);
    if (used != std::string(raw).size())
      throw std::invalid_argument(raw);
    return v;
  } catch (...) {
    throw interlock::ConfigError(
        std::string("INTERLOCK_SIM_SEED is not an unsigned integer: ") + raw);
  }
}

interlock::AppConfig load_config_or_default(const std::string& path) {
  if (path.empty()) return {};
  return interlock::load_config_file(path);
}

json summary_json(const interlock::AppConfig& config,
                  const interlock::SimResult& result) {
  const interlock::Pose& p = result.final_pose;
  return {{"config_hash", interlock::config_hash(config)},
          {"seed", result.seed},
          {"duration_s", result.duration},
          {"net_advance_m", interlock::net_advance(result.samples)},
          {"net_turn_deg", result.total_turn_deg},
          {"distance_m", result.distance},
          {"energy_wh", result.energy_wh},
          {"mean_power_w", result.mean_power_w},
          {"max_power_w", result.max_power_w},
          {"grip_loss_events", result.grip_loss_events},
          {"samples", result.samples.size()},
          {"final_pose", {{"x", p.x},
                          {"y", p.y},
                          {"heading_deg", interlock::deg(p.heading)}}}};
}

void write_outputs(const fs::path& dir, const interlock::AppConfig& config,
                   const interlock::SimResult& result,
                   const std::string& format) {
  fs::create_directories(dir);
  if (format == "csv" || format == "both")
    interlock::write_telemetry_csv((dir / "telemetry.csv").string(),
                                   result.samples);
  if (format == "jsonl" || format == "both")
    interlock::write_trajectory_jsonl((dir / "trajectory.jsonl").string(),
                                      interlock::trajectory_of(result.samples));
  write_text(dir / "summary.json", summary_json(config, result).dump(2) + "\n");
}

int run_simulate(const std::string& config_path, const std::string& program_path,
                 const std::string& out_dir, std::optional<std::uint64_t> seed,
                 const std::string& format, int sweep, int jobs) {
  interlock::AppConfig config = load_config_or_default(config_path);
  const interlock::Program program = interlock::load_program_file(program_path);
  if (auto env = env_seed(); env && !seed) seed = *env;
  if (seed) config.sim.seed = *seed;

  if (sweep > 0) {
    const std::uint64_t base = config.sim.seed;
    std::atomic<int> next{0};
    std::mutex mtx;
    std::exception_ptr failure;
    auto worker = [&] {
      for (;;) {
        const int k = next.fetch_add(1);
        if (k >= sweep) return;
        try {
          interlock::AppConfig run = config;
          run.sim.seed = base + static_cast<std::uint64_t>(k);
          const interlock::SimResult result =
              interlock::simulate(run.sim, program);
          write_outputs(fs::path(out_dir) / ("seed_" + std::to_string(run.sim.seed)),
                        run, result, format);
        } catch (...) {
          std::lock_guard<std::mutex> lock(mtx);
          if (!failure) failure = std::current_exception();
          return;
        }
      }
    };
    const int n_threads = std::max(1, std::min(jobs, sweep));
    std::vector<std::thread> threads;
    for (int i = 0; i < n_threads; ++i) threads.emplace_back(worker);
    for (std::thread& t : threads) t.join();
    if (failure) std::rethrow_exception(failure);
    std::cout << json{{"sweep", sweep}, {"base_seed", base}, {"out", out_dir}}
                     .dump(2)
              << "\n";
    return 0;
  }

  const interlock::SimResult result = interlock::simulate(config.sim, program);
  write_outputs(out_dir, config, result, format);
  std::cout << summary_json(config, result).dump(2) << "\n";
  return 0;
}

interlock::PlannerCalibration resolve_calibration(
    const std::string& calibration_path, const std::string& config_path) {
  if (!calibration_path.empty()) {
    std::ifstream in(calibration_path);
    if (!in)
      throw interlock::ConfigError("cannot open calibration file: " +
                                   calibration_path);
    json j;
    try {
      in >> j;
    } catch (const json::exception& e) {
      throw interlock::ConfigError("invalid JSON in " + calibration_path +
                                   ": " + e.what());
    }
    if (!j.is_object())
      throw interlock::ConfigError("calibration file must be a JSON object");
    interlock::PlannerCalibration cal;
    for (const auto& [key, value] : j.items()) {
      if (key == "advance_per_cycle_m")
        cal.advance_per_cycle = value.get<double>();
      else if (key == "turn_per_cycle_deg")
        cal.turn_per_cycle_deg = value.get<double>();
      else
        throw interlock::ConfigError("unknown key calibration." + key);
    }
    cal.validate();
    return cal;
  }
  if (!config_path.empty())
    return interlock::calibration_of(
        interlock::load_config_file(config_path).sim);
  return interlock::PlannerCalibration{};
}

int emit_plan(const interlock::Plan& result, const std::string& out_path) {
  const std::string text = interlock::program_to_json(result.program).dump(2) + "\n";
  if (!out_path.empty())
    write_text(out_path, text);
  else
    std::cout << text;
  std::cerr << json{{"overshoot_m", result.overshoot_m},
                    {"overshoot_deg", result.overshoot_deg}}
                   .dump()
            << "\n";
  return 0;
}

json turn_report_json(const interlock::TurnReport& report) {
  json rotation;
  if (report.rotation) {
    rotation = {{"center_x", report.rotation->center.x},
                {"center_y", report.rotation->center.y},
                {"radius", report.rotation->radius},
                {"rms_residual", report.rotation->rms_residual}};
  } else {
    rotation = nullptr;
  }
  return {{"per_cycle_deg", report.per_cycle_deg},
          {"cycles", report.per_cycle_deg.size()},
          {"total_turn_deg", report.total_turn_deg},
          {"net_advance_m", report.net_advance_m},
          {"path_length_m", report.path_length_m},
          {"rotation", rotation},
          {"footprint", {{"extent_x", report.footprint.extent_x},
                         {"extent_y", report.footprint.extent_y},
                         {"turning_space", report.footprint.turning_space}}}};
}

int run_analyze(const std::string& telemetry_path,
                const std::string& config_path, const std::string& format) {
  const interlock::AppConfig config = load_config_or_default(config_path);
  const std::vector<interlock::TelemetrySample> samples =
      interlock::read_telemetry_csv(telemetry_path);
  const interlock::TurnReport report =
      interlock::analyze(samples, config.sim.geometry);
  if (format == "json") {
    std::cout << turn_report_json(report).dump(2) << "\n";
    return 0;
  }
  std::printf("cycles            %zu\n", report.per_cycle_deg.size());
  std::printf("total turn        %.3f deg\n", report.total_turn_deg);
  std::printf("net advance       %.4f m\n", report.net_advance_m);
  std::printf("path length       %.4f m\n", report.path_length_m);
  if (report.rotation)
    std::printf("rotation center   (%.4f, %.4f) r=%.4f rms=%.2e\n",
                report.rotation->center.x, report.rotation->center.y,
                report.rotation->radius, report.rotation->rms_residual);
  std::printf("footprint         %.3f x %.3f m, turning space %.3f m\n",
              report.footprint.extent_x, report.footprint.extent_y,
              report.footprint.turning_space);
  return 0;
}

int run_calibrate(const std::string& config_path,
                  const std::string& targets_path) {
  interlock::AppConfig config = load_config_or_default(config_path);
  std::ifstream in(targets_path);
  if (!in)
    throw interlock::ConfigError("cannot open targets file: " + targets_path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw interlock::ConfigError("invalid JSON in " + targets_path + ": " +
                                 e.what());
  }
  if (!j.is_object())
    throw interlock::ConfigError("targets file must be a JSON object");

  interlock::CalibrationTargets targets;
  std::vector<interlock::FreeParam> free_params;
  double tol = 1e-6;
  int max_iterations = 200;
  for (const auto& [key, value] : j.items()) {
    if (key == "targets") {
      if (!value.is_object())
        throw interlock::ConfigError("targets.targets must be an object");
      for (const auto& [name, target] : value.items()) {
        if (name == "alpha_deg")
          targets.alpha_deg = target.get<double>();
        else if (name == "beta_deg")
          targets.beta_deg = target.get<double>();
        else if (name == "per_cycle_deg")
          targets.per_cycle_deg = target.get<double>();
        else if (name == "advance_m")
          targets.advance_m = target.get<double>();
        else
          throw interlock::ConfigError("unknown key targets.targets." + name);
      }
    } else if (key == "free") {
      if (!value.is_array())
        throw interlock::ConfigError("targets.free must be an array");
      for (const auto& name : value) {
        const std::string text = name.get<std::string>();
        if (text == "x_contracted")
          free_params.push_back(interlock::FreeParam::XContracted);
        else if (text == "spike_half_spacing")
          free_params.push_back(interlock::FreeParam::SpikeHalfSpacing);
        else if (text == "wt_axial")
          free_params.push_back(interlock::FreeParam::WtAxial);
        else if (text == "wt_lateral")
          free_params.push_back(interlock::FreeParam::WtLateral);
        else if (text == "base_slip")
          free_params.push_back(interlock::FreeParam::BaseSlip);
        else
          throw interlock::ConfigError("unknown free parameter \"" + text +
                                       "\"");
      }
    } else if (key == "tol") {
      tol = value.get<double>();
    } else if (key == "max_iterations") {
      max_iterations = value.get<int>();
    } else {
      throw interlock::ConfigError("unknown key targets." + key);
    }
  }

  const interlock::CalibrationResult result =
      interlock::calibrate(config.sim, targets, free_params, tol,
                           max_iterations);
  config.sim = result.config;
  std::cout << interlock::config_to_json(config).dump(2) << "\n";
  std::cerr << json{{"residual", result.residual},
                    {"iterations", result.iterations}}
                   .dump()
            << "\n";
  return 0;
}

int run_fuse(const std::string& trajectory_path, const std::string& out_dir,
             const std::string& config_path,
             std::optional<std::uint64_t> seed) {
  interlock::AppConfig config = load_config_or_default(config_path);
  if (auto env = env_seed(); env && !seed) seed = *env;
  if (seed) config.sensors.rng_seed = *seed;

  const std::vector<interlock::TrajectoryPoint> truth =
      interlock::read_trajectory_jsonl(trajectory_path);
  const interlock::SensorTracks tracks =
      interlock::emulate(truth, config.sensors);
  const std::vector<interlock::FusedSample> fused =
      interlock::fuse(tracks.prism, tracks.imu);
  const double rmse = interlock::position_rmse(fused, truth);

  fs::create_directories(out_dir);
  {
    std::string text = "t,x,y\n";
    for (const interlock::PrismSample& s : tracks.prism)
      text += fmt(s.t) + "," + fmt(s.position.x) + "," + fmt(s.position.y) +
              "\n";
    write_text(fs::path(out_dir) / "prism.csv", text);
  }
  {
    std::string text = "t,yaw\n";
    for (const interlock::ImuSample& s : tracks.imu)
      text += fmt(s.t) + "," + fmt(s.yaw) + "\n";
    write_text(fs::path(out_dir) / "imu.csv", text);
  }
  {
    std::string text;
    for (const interlock::FusedSample& s : fused) {
      const json j = {{"t", s.t},
                      {"x", s.position.x},
                      {"y", s.position.y},
                      {"heading", s.heading}};
      text += j.dump() + "\n";
    }
    write_text(fs::path(out_dir) / "fused.jsonl", text);
  }
  std::cout << json{{"prism_samples", tracks.prism.size()},
                    {"imu_samples", tracks.imu.size()},
                    {"fused_samples", fused.size()},
                    {"position_rmse_m", rmse},
                    {"seed", config.sensors.rng_seed}}
                   .dump(2)
            << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Push-pull interlock drive simulator and planning toolkit"};
  app.require_subcommand(1);

  std::string config_path, program_path, telemetry_path, trajectory_path;
  std::string calibration_path, targets_path, out_path;
  std::string out_dir = "out";
  std::string format = "both";
  std::string analyze_format = "json";
  std::string direction = "left";
  std::optional<std::uint64_t> seed;
  int sweep = 0, jobs = 1;
  double meters = 0.0, degrees = 0.0, row_length = 0.0;
  int rows = 0;

  CLI::App* sim = app.add_subcommand("simulate", "Run a cycle program");
  sim->add_option("--config", config_path, "Config JSON (defaults if omitted)");
  sim->add_option("--program", program_path, "Program JSON")->required();
  sim->add_option("--out", out_dir, "Output directory (default out)");
  sim->add_option("--seed", seed, "RNG seed (beats INTERLOCK_SIM_SEED)");
  sim->add_option("--format", format, "csv|jsonl|both (default both)")
      ->check(CLI::IsMember({"csv", "jsonl", "both"}));
  sim->add_option("--sweep", sweep, "Run N seeds from the base seed")
      ->check(CLI::NonNegativeNumber);
  sim->add_option("--jobs", jobs, "Sweep worker threads (default 1)")
      ->check(CLI::PositiveNumber);

  CLI::App* plan_cmd = app.add_subcommand("plan", "Turn a goal into a program");
  plan_cmd->require_subcommand(1);
  plan_cmd->add_option("--calibration", calibration_path,
                       "Calibration JSON {advance_per_cycle_m, turn_per_cycle_deg}");
  plan_cmd->add_option("--config", config_path,
                       "Derive calibration from this config");
  plan_cmd->add_option("--out", out_path, "Write program here (default stdout)");
  CLI::App* plan_advance = plan_cmd->add_subcommand("advance", "Straight-line distance");
  plan_advance->add_option("--meters", meters, "Distance")->required();
  CLI::App* plan_turn = plan_cmd->add_subcommand("turn", "Turn in place");
  plan_turn->add_option("--degrees", degrees, "Angle")->required();
  plan_turn->add_option("--direction", direction, "left|right (default left)")
      ->check(CLI::IsMember({"left", "right"}));
  CLI::App* plan_headland = plan_cmd->add_subcommand("headland", "180 degree turn");
  plan_headland->add_option("--direction", direction, "left|right (default left)")
      ->check(CLI::IsMember({"left", "right"}));
  CLI::App* plan_mission = plan_cmd->add_subcommand("mission", "Rows with headland turns");
  plan_mission->add_option("--row-length", row_length, "Row length, m")->required();
  plan_mission->add_option("--rows", rows, "Row count")->required();

  CLI::App* analyze_cmd = app.add_subcommand("analyze", "Post-process telemetry");
  analyze_cmd->add_option("--telemetry", telemetry_path, "Telemetry CSV")->required();
  analyze_cmd->add_option("--config", config_path, "Config JSON for geometry");
  analyze_cmd->add_option("--format", analyze_format, "json|table (default json)")
      ->check(CLI::IsMember({"json", "table"}));

  CLI::App* cal_cmd = app.add_subcommand("calibrate", "Fit parameters to targets");
  cal_cmd->add_option("--config", config_path, "Initial config JSON");
  cal_cmd->add_option("--targets", targets_path, "Targets JSON")->required();

  CLI::App* fuse_cmd = app.add_subcommand("fuse", "Emulate sensors and fuse them");
  fuse_cmd->add_option("--trajectory", trajectory_path, "Truth trajectory JSONL")
      ->required();
  fuse_cmd->add_option("--out", out_dir, "Output directory (default out)");
  fuse_cmd->add_option("--config", config_path, "Config JSON for sensor specs");
  fuse_cmd->add_option("--seed", seed, "Sensor RNG seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*sim)
      return run_simulate(config_path, program_path, out_dir, seed, format,
                          sweep, jobs);
    if (*plan_cmd) {
      const interlock::PlannerCalibration cal =
          resolve_calibration(calibration_path, config_path);
      const interlock::TurnDirection dir = direction == "right"
                                               ? interlock::TurnDirection::Right
                                               : interlock::TurnDirection::Left;
      interlock::Goal goal;
      if (*plan_advance)
        goal = interlock::Goal::advance(meters);
      else if (*plan_turn)
        goal = interlock::Goal::turn(degrees, dir);
      else if (*plan_headland)
        goal = interlock::Goal::headland_turn(dir);
      else
        goal = interlock::Goal::row_mission(row_length, rows);
      return emit_plan(interlock::plan(goal, cal), out_path);
    }
    if (*analyze_cmd)
      return run_analyze(telemetry_path, config_path, analyze_format);
    if (*cal_cmd) return run_calibrate(config_path, targets_path);
    if (*fuse_cmd)
      return run_fuse(trajectory_path, out_dir, config_path, seed);
    std::cerr << "no subcommand\n";
    return 2;
  } catch (const interlock::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const interlock::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
