/**
 * @file config_io.hpp
 * JSON config / program serialization and the telemetry file formats.
 *
 * Configs are strict: unknown keys anywhere are a ConfigError, every
 * known key is optional and falls back to its default. Serialization is
 * canonical (sorted keys, shortest round-trip numbers), which makes the
 * embedded config hash stable.
 */
#pragma once

#include "interlock/sensors.hpp"
#include "interlock/simulator.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace interlock {

struct AppConfig {
  SimConfig sim;
  SensorSpec sensors;
};

AppConfig parse_config(const nlohmann::json& j);
AppConfig load_config_file(const std::string& path);
nlohmann::json config_to_json(const AppConfig& config);

/* FNV-1a 64-bit over the canonical serialization, as "0x<16 hex>". */
std::string config_hash(const AppConfig& config);

Program parse_program(const nlohmann::json& j);
Program load_program_file(const std::string& path);
nlohmann::json program_to_json(const Program& program);

/* Telemetry CSV columns, in order: t, x, y, heading_deg, slide_offset,
 * phase, spike_left_mode, spike_left_depth, spike_right_mode,
 * spike_right_depth, tool_state, drive_current_a, power_w. */
void write_telemetry_csv(const std::string& path,
                         const std::vector<TelemetrySample>& samples);
std::vector<TelemetrySample> read_telemetry_csv(const std::string& path);

/* Trajectory JSONL: one {"t","x","y","heading"} object per line,
 * heading in radians. */
void write_trajectory_jsonl(const std::string& path,
                            const std::vector<TrajectoryPoint>& trajectory);
std::vector<TrajectoryPoint> read_trajectory_jsonl(const std::string& path);

}  // namespace interlock
