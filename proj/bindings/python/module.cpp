/**
 * Python bindings for the core operations: closed-form kinematics, soil
 * relations, simulation, planning, calibration, and the sensor pipeline.
 * Structured inputs and outputs cross the boundary as JSON strings so the
 * Python side stays schema-compatible with the CLI files.
 */
#include "interlock/analysis.hpp"
#include "interlock/config_io.hpp"
#include "interlock/kinematics.hpp"
#include "interlock/planner.hpp"
#include "interlock/sensors.hpp"
#include "interlock/simulator.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

namespace py = pybind11;
using namespace interlock;

namespace {

AppConfig config_from_json(const std::string& text) {
  if (text.empty()) return {};
  return parse_config(nlohmann::json::parse(text));
}

py::dict summary_dict(const AppConfig& config, const SimResult& result) {
  py::dict d;
  d["config_hash"] = config_hash(config);
  d["seed"] = result.seed;
  d["duration_s"] = result.duration;
  d["net_advance_m"] = net_advance(result.samples);
  d["net_turn_deg"] = result.total_turn_deg;
  d["distance_m"] = result.distance;
  d["energy_wh"] = result.energy_wh;
  d["mean_power_w"] = result.mean_power_w;
  d["max_power_w"] = result.max_power_w;
  d["grip_loss_events"] = result.grip_loss_events;
  d["samples"] = result.samples.size();
  d["final_pose"] = py::make_tuple(result.final_pose.x, result.final_pose.y,
                                   deg(result.final_pose.heading));
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Push-pull interlock drive simulator core";

  /* Translators run newest-first, so the base class goes in first and the
   * derived ConfigError translator gets the first look at what's thrown. */
  py::register_exception<Error>(m, "SimulationError", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  py::enum_<AnchorSide>(m, "AnchorSide")
      .value("LEFT", AnchorSide::Left)
      .value("RIGHT", AnchorSide::Right);

  py::enum_<TurnDirection>(m, "TurnDirection")
      .value("LEFT", TurnDirection::Left)
      .value("RIGHT", TurnDirection::Right);

  py::enum_<SpikeMode>(m, "SpikeMode")
      .value("RETRACTED", SpikeMode::Retracted)
      .value("PASSIVE", SpikeMode::Passive)
      .value("ACTIVE_DOWN", SpikeMode::ActiveDown);

  py::class_<VehicleGeometry>(m, "VehicleGeometry")
      .def(py::init<>())
      .def_readwrite("frame_length", &VehicleGeometry::frame_length)
      .def_readwrite("frame_width", &VehicleGeometry::frame_width)
      .def_readwrite("stroke", &VehicleGeometry::stroke)
      .def_readwrite("spike_half_spacing", &VehicleGeometry::spike_half_spacing)
      .def_readwrite("x_extended", &VehicleGeometry::x_extended)
      .def_readwrite("x_contracted", &VehicleGeometry::x_contracted)
      .def_readwrite("mass", &VehicleGeometry::mass)
      .def_readwrite("prism_offset", &VehicleGeometry::prism_offset)
      .def("validate", &VehicleGeometry::validate);

  py::class_<WeightTransferModel>(m, "WeightTransferModel")
      .def(py::init<>())
      .def_readwrite("y_extended", &WeightTransferModel::y_extended)
      .def_readwrite("y_contracted", &WeightTransferModel::y_contracted)
      .def_readwrite("z_extended", &WeightTransferModel::z_extended)
      .def_readwrite("z_contracted", &WeightTransferModel::z_contracted)
      .def_static("zero", &WeightTransferModel::zero);

  py::class_<SoilModel>(m, "SoilModel")
      .def(py::init<>())
      .def_readwrite("holding_coefficient", &SoilModel::holding_coefficient)
      .def_readwrite("self_weight_depth", &SoilModel::self_weight_depth)
      .def_readwrite("max_depth", &SoilModel::max_depth)
      .def_readwrite("base_slip", &SoilModel::base_slip)
      .def_readwrite("slip_load_gain", &SoilModel::slip_load_gain)
      .def_readwrite("grip_loss_probability", &SoilModel::grip_loss_probability)
      .def_readwrite("grip_degraded_fraction", &SoilModel::grip_degraded_fraction);

  py::class_<Pose>(m, "Pose")
      .def(py::init<>())
      .def_readwrite("x", &Pose::x)
      .def_readwrite("y", &Pose::y)
      .def_readwrite("heading", &Pose::heading);

  m.def("alpha", &alpha, py::arg("geometry"), py::arg("side"),
        "Contraction sweep heading change, radians (signed, left anchor "
        "turns clockwise)");
  m.def("beta", &beta, py::arg("geometry"), py::arg("weight_transfer"),
        py::arg("side"), "Expansion sweep heading change, radians");
  m.def("cycle_turn_angle", &cycle_turn_angle, py::arg("geometry"),
        py::arg("weight_transfer"), py::arg("direction"),
        "Net heading change of one full turn cycle, radians");
  m.def("straight_cycle_advance", &straight_cycle_advance, py::arg("stroke"),
        py::arg("slip"), "Ground gained by one straight cycle, m");
  m.def(
      "integrate_anchored_motion",
      [](const Pose& start, double spike_x, double spike_y,
         double axial_travel, int steps) {
        return integrate_anchored_motion(start, {spike_x, spike_y},
                                         axial_travel, steps);
      },
      py::arg("start"), py::arg("spike_x"), py::arg("spike_y"),
      py::arg("axial_travel"), py::arg("steps") = 1000);

  m.def("passive_penetration_depth", &passive_penetration_depth,
        py::arg("draft_force"), py::arg("soil"));
  m.def("holding_force", &holding_force, py::arg("depth"), py::arg("mode"),
        py::arg("soil"));
  m.def("effective_slip", &effective_slip, py::arg("draft_force"),
        py::arg("soil"));

  m.def(
      "run_simulation",
      [](const std::string& config_json, const std::string& program_json) {
        const AppConfig config = config_from_json(config_json);
        const Program program =
            parse_program(nlohmann::json::parse(program_json));
        return summary_dict(config, simulate(config.sim, program));
      },
      py::arg("config_json") = std::string(), py::arg("program_json"),
      "Run a program; returns the summary as a dict");

  m.def(
      "simulate_to_files",
      [](const std::string& config_json, const std::string& program_json,
         const std::string& telemetry_csv, const std::string& trajectory_jsonl) {
        const AppConfig config = config_from_json(config_json);
        const Program program =
            parse_program(nlohmann::json::parse(program_json));
        const SimResult result = simulate(config.sim, program);
        if (!telemetry_csv.empty())
          write_telemetry_csv(telemetry_csv, result.samples);
        if (!trajectory_jsonl.empty())
          write_trajectory_jsonl(trajectory_jsonl,
                                 trajectory_of(result.samples));
        return summary_dict(config, result);
      },
      py::arg("config_json") = std::string(), py::arg("program_json"),
      py::arg("telemetry_csv") = std::string(),
      py::arg("trajectory_jsonl") = std::string());

  m.def(
      "plan_goal",
      [](const std::string& kind, double value, const std::string& direction,
         double row_length, int rows, double advance_per_cycle,
         double turn_per_cycle_deg) {
        PlannerCalibration cal;
        cal.advance_per_cycle = advance_per_cycle;
        cal.turn_per_cycle_deg = turn_per_cycle_deg;
        const TurnDirection dir =
            direction == "right" ? TurnDirection::Right : TurnDirection::Left;
        Goal goal;
        if (kind == "advance")
          goal = Goal::advance(value);
        else if (kind == "turn")
          goal = Goal::turn(value, dir);
        else if (kind == "headland")
          goal = Goal::headland_turn(dir);
        else if (kind == "mission")
          goal = Goal::row_mission(row_length, rows);
        else
          throw InvalidGoal("unknown goal kind \"" + kind + "\"");
        return program_to_json(plan(goal, cal).program).dump(2);
      },
      py::arg("kind"), py::arg("value") = 0.0,
      py::arg("direction") = std::string("left"),
      py::arg("row_length") = 0.0, py::arg("rows") = 0,
      py::arg("advance_per_cycle") = 1.0,
      py::arg("turn_per_cycle_deg") = 60.0,
      "Quantize a goal into a program; returns the program JSON");

  m.def(
      "calibrate_config",
      [](const std::string& config_json, std::optional<double> alpha_deg,
         std::optional<double> beta_deg, std::optional<double> per_cycle_deg,
         std::optional<double> advance_m,
         const std::vector<std::string>& free, double tol,
         int max_iterations) {
        AppConfig config = config_from_json(config_json);
        CalibrationTargets targets;
        targets.alpha_deg = alpha_deg;
        targets.beta_deg = beta_deg;
        targets.per_cycle_deg = per_cycle_deg;
        targets.advance_m = advance_m;
        std::vector<FreeParam> params;
        for (const std::string& name : free) {
          if (name == "x_contracted")
            params.push_back(FreeParam::XContracted);
          else if (name == "spike_half_spacing")
            params.push_back(FreeParam::SpikeHalfSpacing);
          else if (name == "wt_axial")
            params.push_back(FreeParam::WtAxial);
          else if (name == "wt_lateral")
            params.push_back(FreeParam::WtLateral);
          else if (name == "base_slip")
            params.push_back(FreeParam::BaseSlip);
          else
            throw InvalidCalibration("unknown free parameter \"" + name + "\"");
        }
        const CalibrationResult result =
            calibrate(config.sim, targets, params, tol, max_iterations);
        config.sim = result.config;
        py::dict d;
        d["config_json"] = config_to_json(config).dump(2);
        d["residual"] = result.residual;
        d["iterations"] = result.iterations;
        return d;
      },
      py::arg("config_json") = std::string(),
      py::arg("alpha_deg") = std::nullopt, py::arg("beta_deg") = std::nullopt,
      py::arg("per_cycle_deg") = std::nullopt,
      py::arg("advance_m") = std::nullopt,
      py::arg("free") = std::vector<std::string>{}, py::arg("tol") = 1e-6,
      py::arg("max_iterations") = 200);

  m.def(
      "fused_position_rmse",
      [](const std::string& config_json, const std::string& program_json) {
        const AppConfig config = config_from_json(config_json);
        const Program program =
            parse_program(nlohmann::json::parse(program_json));
        const SimResult result = simulate(config.sim, program);
        const std::vector<TrajectoryPoint> truth =
            trajectory_of(result.samples);
        const SensorTracks tracks = emulate(truth, config.sensors);
        return position_rmse(fuse(tracks.prism, tracks.imu), truth);
      },
      py::arg("config_json") = std::string(), py::arg("program_json"),
      "Simulate, emulate the sensors, fuse, and report the position RMSE");

  m.def("default_config_json",
        [] { return config_to_json(AppConfig{}).dump(2); });
}
