#include "interlock/config_io.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace interlock {

namespace {

using nlohmann::json;

/* Strict object reader: every access is recorded, leftovers are errors. */
class ObjectReader {
 public:
  ObjectReader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object())
      throw ConfigError(path_ + " must be a JSON object");
  }

  bool has(const char* key) const { return j_.contains(key); }

  void number(const char* key, double& out) {
    if (!mark(key)) return;
    const json& v = j_.at(key);
    if (!v.is_number())
      throw ConfigError(path_ + "." + key + " must be a number");
    out = v.get<double>();
  }

  void integer(const char* key, std::uint64_t& out) {
    if (!mark(key)) return;
    const json& v = j_.at(key);
    if (!v.is_number_integer() && !v.is_number_unsigned())
      throw ConfigError(path_ + "." + key + " must be an integer");
    out = v.get<std::uint64_t>();
  }

  void boolean(const char* key, bool& out) {
    if (!mark(key)) return;
    const json& v = j_.at(key);
    if (!v.is_boolean())
      throw ConfigError(path_ + "." + key + " must be a boolean");
    out = v.get<bool>();
  }

  void text(const char* key, std::string& out) {
    if (!mark(key)) return;
    const json& v = j_.at(key);
    if (!v.is_string())
      throw ConfigError(path_ + "." + key + " must be a string");
    out = v.get<std::string>();
  }

  const json* object(const char* key) {
    if (!mark(key)) return nullptr;
    return &j_.at(key);
  }

  void finish() const {
    for (const auto& [key, value] : j_.items())
      if (seen_.find("\n" + key + "\n") == std::string::npos)
        throw ConfigError("unknown key " + path_ + "." + key);
  }

  const std::string& path() const { return path_; }

 private:
  bool mark(const char* key) {
    seen_ += "\n";
    seen_ += key;
    seen_ += "\n";
    return j_.contains(key);
  }

  const json& j_;
  std::string path_;
  std::string seen_;
};

void parse_geometry(const json& j, VehicleGeometry& g) {
  ObjectReader r(j, "geometry");
  r.number("frame_length", g.frame_length);
  r.number("frame_width", g.frame_width);
  r.number("stroke", g.stroke);
  r.number("spike_half_spacing", g.spike_half_spacing);
  r.number("x_extended", g.x_extended);
  r.number("x_contracted", g.x_contracted);
  r.number("mass", g.mass);
  r.number("prism_offset", g.prism_offset);
  r.finish();
}

void parse_weight_transfer(const json& j, WeightTransferModel& w) {
  ObjectReader r(j, "weight_transfer");
  r.number("y_extended", w.y_extended);
  r.number("y_contracted", w.y_contracted);
  r.number("z_extended", w.z_extended);
  r.number("z_contracted", w.z_contracted);
  r.finish();
}

void parse_soil(const json& j, SoilModel& s) {
  ObjectReader r(j, "soil");
  r.number("holding_coefficient", s.holding_coefficient);
  r.number("self_weight_depth", s.self_weight_depth);
  r.number("max_depth", s.max_depth);
  r.number("base_slip", s.base_slip);
  r.number("slip_load_gain", s.slip_load_gain);
  r.number("grip_loss_probability", s.grip_loss_probability);
  r.number("grip_degraded_fraction", s.grip_degraded_fraction);
  r.finish();
}

void parse_timing(const json& j, TimingParams& t) {
  ObjectReader r(j, "timing");
  r.number("slide_speed", t.slide_speed);
  r.number("return_speed", t.return_speed);
  r.number("actuator_stroke_time", t.actuator_stroke_time);
  r.finish();
}

void parse_power(const json& j, PowerParams& p) {
  ObjectReader r(j, "power");
  r.number("bus_voltage", p.bus_voltage);
  r.number("traction_current", p.traction_current);
  r.number("return_current", p.return_current);
  r.number("actuator_current_peak", p.actuator_current_peak);
  r.number("idle_current", p.idle_current);
  r.finish();
}

void parse_pose(const json& j, Pose& pose) {
  ObjectReader r(j, "sim.initial_pose");
  double heading_deg = deg(pose.heading);
  r.number("x", pose.x);
  r.number("y", pose.y);
  r.number("heading_deg", heading_deg);
  r.finish();
  pose.heading = rad(heading_deg);
}

void parse_sim(const json& j, SimConfig& sim) {
  ObjectReader r(j, "sim");
  r.number("dt", sim.dt);
  r.integer("seed", sim.seed);
  r.number("draft_force", sim.draft_force);
  if (const json* pose = r.object("initial_pose")) parse_pose(*pose, sim.initial_pose);
  r.finish();
}

void parse_sensors(const json& j, SensorSpec& s) {
  ObjectReader r(j, "sensors");
  r.number("prism_rate_hz", s.prism_rate_hz);
  r.number("prism_sigma", s.prism_sigma);
  r.number("imu_rate_hz", s.imu_rate_hz);
  r.number("imu_yaw_sigma", s.imu_yaw_sigma);
  r.integer("rng_seed", s.rng_seed);
  r.finish();
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

AppConfig parse_config(const json& j) {
  AppConfig config;
  ObjectReader r(j, "config");
  if (const json* o = r.object("geometry")) parse_geometry(*o, config.sim.geometry);
  if (const json* o = r.object("weight_transfer"))
    parse_weight_transfer(*o, config.sim.weight_transfer);
  if (const json* o = r.object("soil")) parse_soil(*o, config.sim.soil);
  if (const json* o = r.object("timing")) parse_timing(*o, config.sim.timing);
  if (const json* o = r.object("power")) parse_power(*o, config.sim.power);
  if (const json* o = r.object("sim")) parse_sim(*o, config.sim);
  if (const json* o = r.object("sensors")) parse_sensors(*o, config.sensors);
  r.finish();
  return config;
}

AppConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("invalid JSON in " + path + ": " + e.what());
  }
  return parse_config(j);
}

nlohmann::json config_to_json(const AppConfig& config) {
  const SimConfig& sim = config.sim;
  json j;
  j["geometry"] = {{"frame_length", sim.geometry.frame_length},
                   {"frame_width", sim.geometry.frame_width},
                   {"stroke", sim.geometry.stroke},
                   {"spike_half_spacing", sim.geometry.spike_half_spacing},
                   {"x_extended", sim.geometry.x_extended},
                   {"x_contracted", sim.geometry.x_contracted},
                   {"mass", sim.geometry.mass},
                   {"prism_offset", sim.geometry.prism_offset}};
  j["weight_transfer"] = {{"y_extended", sim.weight_transfer.y_extended},
                          {"y_contracted", sim.weight_transfer.y_contracted},
                          {"z_extended", sim.weight_transfer.z_extended},
                          {"z_contracted", sim.weight_transfer.z_contracted}};
  j["soil"] = {{"holding_coefficient", sim.soil.holding_coefficient},
               {"self_weight_depth", sim.soil.self_weight_depth},
               {"max_depth", sim.soil.max_depth},
               {"base_slip", sim.soil.base_slip},
               {"slip_load_gain", sim.soil.slip_load_gain},
               {"grip_loss_probability", sim.soil.grip_loss_probability},
               {"grip_degraded_fraction", sim.soil.grip_degraded_fraction}};
  j["timing"] = {{"slide_speed", sim.timing.slide_speed},
                 {"return_speed", sim.timing.return_speed},
                 {"actuator_stroke_time", sim.timing.actuator_stroke_time}};
  j["power"] = {{"bus_voltage", sim.power.bus_voltage},
                {"traction_current", sim.power.traction_current},
                {"return_current", sim.power.return_current},
                {"actuator_current_peak", sim.power.actuator_current_peak},
                {"idle_current", sim.power.idle_current}};
  j["sim"] = {{"dt", sim.dt},
              {"seed", sim.seed},
              {"draft_force", sim.draft_force},
              {"initial_pose", {{"x", sim.initial_pose.x},
                                {"y", sim.initial_pose.y},
                                {"heading_deg", deg(sim.initial_pose.heading)}}}};
  j["sensors"] = {{"prism_rate_hz", config.sensors.prism_rate_hz},
                  {"prism_sigma", config.sensors.prism_sigma},
                  {"imu_rate_hz", config.sensors.imu_rate_hz},
                  {"imu_yaw_sigma", config.sensors.imu_yaw_sigma},
                  {"rng_seed", config.sensors.rng_seed}};
  return j;
}

std::string config_hash(const AppConfig& config) {
  const std::string canon = config_to_json(config).dump();
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : canon) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[20];
  std::snprintf(buf, sizeof buf, "0x%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

Program parse_program(const json& j) {
  Program program;
  ObjectReader r(j, "program");
  r.text("name", program.name);
  r.boolean("tool_engaged", program.tool_engaged);
  const json* steps = r.object("program");
  r.finish();
  if (!steps) throw InvalidProgram("missing \"program\" array");
  if (!steps->is_array()) throw InvalidProgram("\"program\" must be an array");
  for (std::size_t i = 0; i < steps->size(); ++i) {
    ObjectReader step((*steps)[i], "program[" + std::to_string(i) + "]");
    std::string primitive;
    std::uint64_t cycles = 1;
    step.text("primitive", primitive);
    step.integer("cycles", cycles);
    step.finish();
    Primitive prim;
    if (primitive == "straight")
      prim.kind = PrimitiveKind::Straight;
    else if (primitive == "turn_left")
      prim.kind = PrimitiveKind::TurnLeft;
    else if (primitive == "turn_right")
      prim.kind = PrimitiveKind::TurnRight;
    else
      throw InvalidProgram("unknown primitive \"" + primitive + "\" at index " +
                           std::to_string(i));
    if (cycles < 1 || cycles > 1000000)
      throw InvalidProgram("cycles out of range at index " + std::to_string(i));
    prim.cycles = static_cast<int>(cycles);
    program.primitives.push_back(prim);
  }
  program.validate();
  return program;
}

Program load_program_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open program file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("invalid JSON in " + path + ": " + e.what());
  }
  return parse_program(j);
}

nlohmann::json program_to_json(const Program& program) {
  json steps = json::array();
  for (const Primitive& prim : program.primitives)
    steps.push_back(
        {{"primitive", to_string(prim.kind)}, {"cycles", prim.cycles}});
  return {{"name", program.name},
          {"tool_engaged", program.tool_engaged},
          {"program", steps}};
}

void write_telemetry_csv(const std::string& path,
                         const std::vector<TelemetrySample>& samples) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open for writing: " + path);
  out << "t,x,y,heading_deg,slide_offset,phase,spike_left_mode,"
         "spike_left_depth,spike_right_mode,spike_right_depth,tool_state,"
         "drive_current_a,power_w\n";
  for (const TelemetrySample& s : samples) {
    out << format_double(s.t) << ',' << format_double(s.pose.x) << ','
        << format_double(s.pose.y) << ','
        << format_double(deg(s.pose.heading)) << ','
        << format_double(s.slide_offset) << ',' << s.phase << ','
        << to_string(s.left.mode) << ',' << format_double(s.left.depth) << ','
        << to_string(s.right.mode) << ',' << format_double(s.right.depth)
        << ',' << to_string(s.tool) << ',' << format_double(s.drive_current)
        << ',' << format_double(s.power) << '\n';
  }
  if (!out) throw Error("failed writing " + path);
}

namespace {

SpikeMode parse_mode(const std::string& text, int row) {
  if (text == "retracted") return SpikeMode::Retracted;
  if (text == "passive") return SpikeMode::Passive;
  if (text == "active_down") return SpikeMode::ActiveDown;
  throw ParseError("unknown spike mode \"" + text + "\"", row);
}

double parse_number(const std::string& text, int row) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (...) {
    throw ParseError("bad number \"" + text + "\"", row);
  }
}

}  // namespace

std::vector<TelemetrySample> read_telemetry_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open telemetry file: " + path);
  std::string line;
  if (!std::getline(in, line))
    throw ParseError("empty telemetry file", 1);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line !=
      "t,x,y,heading_deg,slide_offset,phase,spike_left_mode,"
      "spike_left_depth,spike_right_mode,spike_right_depth,tool_state,"
      "drive_current_a,power_w")
    throw ParseError("unexpected telemetry header", 1);

  std::vector<TelemetrySample> samples;
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      fields.push_back(line.substr(start, comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (fields.size() != 13)
      throw ParseError("expected 13 fields, got " +
                           std::to_string(fields.size()),
                       row);
    TelemetrySample s;
    s.t = parse_number(fields[0], row);
    s.pose.x = parse_number(fields[1], row);
    s.pose.y = parse_number(fields[2], row);
    s.pose.heading = rad(parse_number(fields[3], row));
    s.slide_offset = parse_number(fields[4], row);
    s.phase = fields[5];
    s.left.mode = parse_mode(fields[6], row);
    s.left.depth = parse_number(fields[7], row);
    s.right.mode = parse_mode(fields[8], row);
    s.right.depth = parse_number(fields[9], row);
    if (fields[10] == "raised")
      s.tool = ToolState::Raised;
    else if (fields[10] == "lowered")
      s.tool = ToolState::Lowered;
    else
      throw ParseError("unknown tool state \"" + fields[10] + "\"", row);
    s.drive_current = parse_number(fields[11], row);
    s.power = parse_number(fields[12], row);
    samples.push_back(s);
  }
  return samples;
}

void write_trajectory_jsonl(const std::string& path,
                            const std::vector<TrajectoryPoint>& trajectory) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open for writing: " + path);
  for (const TrajectoryPoint& p : trajectory) {
    const json j = {{"t", p.t},
                    {"x", p.pose.x},
                    {"y", p.pose.y},
                    {"heading", p.pose.heading}};
    out << j.dump() << '\n';
  }
  if (!out) throw Error("failed writing " + path);
}

std::vector<TrajectoryPoint> read_trajectory_jsonl(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open trajectory file: " + path);
  std::vector<TrajectoryPoint> trajectory;
  std::string line;
  int row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw ParseError(std::string("invalid JSON: ") + e.what(), row);
    }
    TrajectoryPoint p;
    try {
      p.t = j.at("t").get<double>();
      p.pose.x = j.at("x").get<double>();
      p.pose.y = j.at("y").get<double>();
      p.pose.heading = j.at("heading").get<double>();
    } catch (const json::exception& e) {
      throw ParseError(std::string("bad trajectory record: ") + e.what(), row);
    }
    trajectory.push_back(p);
  }
  return trajectory;
}

}  // namespace interlock
