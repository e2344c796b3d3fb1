#include "vorrt/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "vorrt/errors.hpp"

namespace vorrt {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

void PlannerOverrides::apply_to(PlannerConfig& c) const {
  if (step_distance) c.step_distance = *step_distance;
  if (phase_iterations) c.phase_iterations = *phase_iterations;
  if (max_phases) c.max_phases = *max_phases;
  if (d_th) c.d_th = *d_th;
  if (mtd) c.mtd = *mtd;
  if (goal_radius) c.goal_radius = *goal_radius;
  if (goal_bias_probability) c.goal_bias_probability = *goal_bias_probability;
  if (unbiased_goal_probability) c.unbiased_goal_probability = *unbiased_goal_probability;
  if (rng_seed) c.rng_seed = *rng_seed;
  if (sampling_bounds) c.sampling_bounds = *sampling_bounds;
  if (head_on_tolerance) c.head_on_tolerance = *head_on_tolerance;
  if (max_restarts) c.max_restarts = *max_restarts;
  if (stand_on_heading_tolerance) c.stand_on_heading_tolerance = *stand_on_heading_tolerance;
  if (stand_on_speed_tolerance) c.stand_on_speed_tolerance = *stand_on_speed_tolerance;
  if (max_turn_per_step) c.max_turn_per_step = *max_turn_per_step;
  if (steer_compliant) c.steer_compliant = *steer_compliant;
  if (smooth_path) c.smooth_path = *smooth_path;
}

void validate_scenario(const ScenarioSpec& spec) {
  std::set<std::string> ids;
  int ownships = 0;
  for (const auto& v : spec.vessels) {
    if (v.id.empty()) throw ValidationError("vessel id must not be empty");
    if (!ids.insert(v.id).second) throw ValidationError("duplicate vessel id '" + v.id + "'");
    if (!(v.speed >= 0.0)) throw ValidationError("vessel '" + v.id + "': speed must be non-negative");
    if (!(v.length > 0.0)) throw ValidationError("vessel '" + v.id + "': length must be positive");
    if (v.id == spec.ownship_id) {
      ++ownships;
      if (!v.goal) throw ValidationError("ownship '" + v.id + "' has no goal");
    } else if (!v.heading && !v.goal) {
      throw ValidationError("target '" + v.id + "' needs a heading or a goal");
    }
    if (!v.heading && v.goal && v.goal->x() == v.x && v.goal->y() == v.y) {
      throw ValidationError("vessel '" + v.id + "': goal coincides with start and no heading given");
    }
  }
  if (ownships != 1) throw ValidationError("ownship '" + spec.ownship_id + "' not found among vessels");
}

namespace {

VesselState to_state(const VesselSpec& v) {
  VesselState s;
  s.id = v.id;
  s.position = {v.x, v.y};
  s.speed = v.speed;
  s.radius = v.length;
  s.goal = v.goal.value_or(s.position);
  s.heading_deg = v.heading ? normalize_deg(*v.heading) : bearing_deg(s.position, s.goal);
  return s;
}

}  // namespace

WorldState to_world(const ScenarioSpec& spec) {
  validate_scenario(spec);
  WorldState w;
  for (const auto& v : spec.vessels) {
    if (v.id == spec.ownship_id) {
      w.ownship = to_state(v);
    } else {
      w.targets.push_back(to_state(v));
    }
  }
  w.time = 0.0;
  return w;
}

PlannerConfig to_config(const ScenarioSpec& spec, PlannerConfig base) {
  spec.planner.apply_to(base);
  if (!base.sampling_bounds) base.sampling_bounds = derive_sampling_bounds(to_world(spec));
  return base;
}

// --- document reading ---------------------------------------------------------

namespace {

[[noreturn]] void field_error(const std::string& path, const std::string& what) {
  throw ParseError("field '" + path + "': " + what);
}

void reject_unknown(const Json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    const bool known = std::any_of(allowed.begin(), allowed.end(), [&](const char* k) { return it.key() == k; });
    if (!known) field_error(path.empty() ? it.key() : path + "." + it.key(), "unknown key");
  }
}

const Json& require(const Json& obj, const char* key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) field_error(path.empty() ? key : path + "." + key, "missing");
  return *it;
}

double as_number(const Json& j, const std::string& path) {
  if (!j.is_number()) field_error(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) field_error(path, "must be finite");
  return v;
}

int as_int(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) field_error(path, "expected an integer");
  return j.get<int>();
}

std::string as_string(const Json& j, const std::string& path) {
  if (!j.is_string()) field_error(path, "expected a string");
  return j.get<std::string>();
}

const Json& as_object(const Json& j, const std::string& path) {
  if (!j.is_object()) field_error(path, "expected an object");
  return j;
}

Vec2 read_point(const Json& j, const std::string& path) {
  as_object(j, path);
  reject_unknown(j, path, {"x", "y"});
  return {as_number(require(j, "x", path), path + ".x"), as_number(require(j, "y", path), path + ".y")};
}

VesselSpec read_vessel(const Json& j, const std::string& path) {
  as_object(j, path);
  reject_unknown(j, path, {"id", "x", "y", "speed", "heading", "goal", "length"});
  VesselSpec v;
  v.id = as_string(require(j, "id", path), path + ".id");
  v.x = as_number(require(j, "x", path), path + ".x");
  v.y = as_number(require(j, "y", path), path + ".y");
  v.speed = as_number(require(j, "speed", path), path + ".speed");
  if (j.contains("heading")) v.heading = as_number(j["heading"], path + ".heading");
  if (j.contains("goal")) v.goal = read_point(j["goal"], path + ".goal");
  if (j.contains("length")) v.length = as_number(j["length"], path + ".length");
  return v;
}

PlannerOverrides read_overrides(const Json& j) {
  const std::string p = "planner";
  as_object(j, p);
  reject_unknown(j, p,
                 {"step_distance", "phase_iterations", "max_phases", "d_th", "mtd", "goal_radius",
                  "goal_bias_probability", "unbiased_goal_probability", "rng_seed", "sampling_bounds",
                  "head_on_tolerance", "max_restarts", "stand_on_heading_tolerance", "stand_on_speed_tolerance",
                  "max_turn_per_step", "steer_compliant", "smooth_path"});
  PlannerOverrides o;
  auto num = [&](const char* key, std::optional<double>& out) {
    if (j.contains(key)) out = as_number(j[key], p + "." + key);
  };
  auto integer = [&](const char* key, std::optional<int>& out) {
    if (j.contains(key)) out = as_int(j[key], p + "." + key);
  };
  num("step_distance", o.step_distance);
  integer("phase_iterations", o.phase_iterations);
  integer("max_phases", o.max_phases);
  num("d_th", o.d_th);
  num("mtd", o.mtd);
  num("goal_radius", o.goal_radius);
  num("goal_bias_probability", o.goal_bias_probability);
  num("unbiased_goal_probability", o.unbiased_goal_probability);
  if (j.contains("rng_seed")) {
    if (!j["rng_seed"].is_number_unsigned()) field_error(p + ".rng_seed", "expected a non-negative integer");
    o.rng_seed = j["rng_seed"].get<std::uint64_t>();
  }
  if (j.contains("sampling_bounds")) {
    const std::string bp = p + ".sampling_bounds";
    const Json& b = as_object(j["sampling_bounds"], bp);
    reject_unknown(b, bp, {"min_x", "min_y", "max_x", "max_y"});
    o.sampling_bounds = Bounds{as_number(require(b, "min_x", bp), bp + ".min_x"),
                               as_number(require(b, "min_y", bp), bp + ".min_y"),
                               as_number(require(b, "max_x", bp), bp + ".max_x"),
                               as_number(require(b, "max_y", bp), bp + ".max_y")};
  }
  num("head_on_tolerance", o.head_on_tolerance);
  integer("max_restarts", o.max_restarts);
  num("stand_on_heading_tolerance", o.stand_on_heading_tolerance);
  num("stand_on_speed_tolerance", o.stand_on_speed_tolerance);
  num("max_turn_per_step", o.max_turn_per_step);
  if (j.contains("steer_compliant")) {
    if (!j["steer_compliant"].is_boolean()) field_error(p + ".steer_compliant", "expected true or false");
    o.steer_compliant = j["steer_compliant"].get<bool>();
  }
  if (j.contains("smooth_path")) {
    if (!j["smooth_path"].is_boolean()) field_error(p + ".smooth_path", "expected true or false");
    o.smooth_path = j["smooth_path"].get<bool>();
  }
  return o;
}

std::size_t line_of(const std::string& text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<long>(byte), '\n'));
}

}  // namespace

ScenarioSpec load_scenario(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError("line " + std::to_string(line_of(text, e.byte)) + ": " + e.what());
  }
  as_object(doc, "<document>");
  reject_unknown(doc, "", {"name", "vessels", "ownship", "planner", "metadata"});

  ScenarioSpec spec;
  spec.name = as_string(require(doc, "name", ""), "name");
  spec.ownship_id = as_string(require(doc, "ownship", ""), "ownship");
  const Json& vessels = require(doc, "vessels", "");
  if (!vessels.is_array()) field_error("vessels", "expected a list");
  for (std::size_t i = 0; i < vessels.size(); ++i) {
    spec.vessels.push_back(read_vessel(vessels[i], "vessels[" + std::to_string(i) + "]"));
  }
  if (doc.contains("planner")) spec.planner = read_overrides(doc["planner"]);
  if (doc.contains("metadata")) {
    const Json& m = as_object(doc["metadata"], "metadata");
    for (auto it = m.begin(); it != m.end(); ++it) {
      spec.metadata[it.key()] = as_string(it.value(), "metadata." + it.key());
    }
  }
  validate_scenario(spec);
  return spec;
}

std::string save_scenario(const ScenarioSpec& spec) {
  OrderedJson doc;
  doc["name"] = spec.name;
  doc["ownship"] = spec.ownship_id;
  OrderedJson vessels = OrderedJson::array();
  for (const auto& v : spec.vessels) {
    OrderedJson j;
    j["id"] = v.id;
    j["x"] = v.x;
    j["y"] = v.y;
    j["speed"] = v.speed;
    if (v.heading) j["heading"] = *v.heading;
    if (v.goal) j["goal"] = {{"x", v.goal->x()}, {"y", v.goal->y()}};
    j["length"] = v.length;
    vessels.push_back(std::move(j));
  }
  doc["vessels"] = std::move(vessels);

  const PlannerOverrides& o = spec.planner;
  OrderedJson p = OrderedJson::object();
  auto put = [&](const char* key, const auto& opt) {
    if (opt) p[key] = *opt;
  };
  put("step_distance", o.step_distance);
  put("phase_iterations", o.phase_iterations);
  put("max_phases", o.max_phases);
  put("d_th", o.d_th);
  put("mtd", o.mtd);
  put("goal_radius", o.goal_radius);
  put("goal_bias_probability", o.goal_bias_probability);
  put("unbiased_goal_probability", o.unbiased_goal_probability);
  put("rng_seed", o.rng_seed);
  if (o.sampling_bounds) {
    const Bounds& b = *o.sampling_bounds;
    p["sampling_bounds"] = {{"min_x", b.min_x}, {"min_y", b.min_y}, {"max_x", b.max_x}, {"max_y", b.max_y}};
  }
  put("head_on_tolerance", o.head_on_tolerance);
  put("max_restarts", o.max_restarts);
  put("stand_on_heading_tolerance", o.stand_on_heading_tolerance);
  put("stand_on_speed_tolerance", o.stand_on_speed_tolerance);
  if (o.max_turn_per_step && std::isfinite(*o.max_turn_per_step)) p["max_turn_per_step"] = *o.max_turn_per_step;
  put("steer_compliant", o.steer_compliant);
  put("smooth_path", o.smooth_path);
  if (!p.empty()) doc["planner"] = std::move(p);
  if (!spec.metadata.empty()) doc["metadata"] = spec.metadata;
  return doc.dump(2) + "\n";
}

// --- builtin generators --------------------------------------------------------

namespace {

VesselSpec vessel(std::string id, double x, double y, double speed, double heading, Vec2 goal, double length) {
  VesselSpec v;
  v.id = std::move(id);
  v.x = x;
  v.y = y;
  v.speed = speed;
  v.heading = heading;
  v.goal = goal;
  v.length = length;
  return v;
}

}  // namespace

ScenarioSpec make_crossing(bool mirrored) {
  const double side = mirrored ? -1.0 : 1.0;
  ScenarioSpec s;
  s.name = mirrored ? "crossing_port" : "crossing";
  s.ownship_id = "own";
  s.vessels.push_back(vessel("own", 0, 0, 10, 0, {0, 6000}, 20));
  // Both reach (0, 3000) at t = 300 s.
  s.vessels.push_back(vessel("ts1", 3000 * side, 3000, 10, mirrored ? 90 : 270, {-4000 * side, 3000}, 40));
  s.planner.d_th = 200;
  s.planner.mtd = 5000;
  s.metadata["encounter"] = mirrored ? "ownship stand-on, target from port" : "ownship give-way, target from starboard";
  return s;
}

ScenarioSpec make_head_on() {
  ScenarioSpec s;
  s.name = "head_on";
  s.ownship_id = "own";
  s.vessels.push_back(vessel("own", 0, 0, 10, 0, {0, 8000}, 20));
  s.vessels.push_back(vessel("ts1", 0, 4000, 10, 180, {0, -4000}, 40));
  s.planner.d_th = 200;
  s.planner.mtd = 5000;
  s.metadata["encounter"] = "reciprocal courses";
  return s;
}

ScenarioSpec make_overtaking() {
  ScenarioSpec s;
  s.name = "overtaking";
  s.ownship_id = "own";
  s.vessels.push_back(vessel("own", 0, 0, 10, 0, {0, 8000}, 20));
  s.vessels.push_back(vessel("ts1", 0, 1000, 4, 0, {0, 5000}, 40));
  s.planner.d_th = 200;
  s.planner.mtd = 5000;
  s.metadata["encounter"] = "ownship overtaking a slower vessel on the same course";
  return s;
}

ScenarioSpec make_multi_vessel() {
  ScenarioSpec s;
  s.name = "multi_vessel";
  s.ownship_id = "own";
  s.vessels.push_back(vessel("own", 0, 0, 10, 0, {0, 8000}, 20));
  s.vessels.push_back(vessel("ts1", 3000, 3000, 10, 270, {-4000, 3000}, 40));
  s.vessels.push_back(vessel("ts2", 0, 4500, 8, 180, {0, -3000}, 40));
  s.vessels.push_back(vessel("ts3", -4000, 6000, 6, 90, {4000, 6000}, 40));
  s.planner.d_th = 200;
  s.planner.mtd = 5000;
  s.metadata["encounter"] = "starboard crossing and head-on at once, third vessel beyond the risk gate";
  return s;
}

ScenarioSpec make_tss(const TssParams& p) {
  if (!(p.width > 0.0) || p.lane_vessel_count < 1 || !(p.vessel_spacing > 0.0) || !(p.traffic_speed > 0.0)) {
    throw ConfigError("tss dimensions, vessel count, spacing and speed must be positive");
  }
  SampleRng rng(p.rng_seed, 0x7555);
  ScenarioSpec s;
  s.name = "tss";
  s.ownship_id = "own";
  const double approach = 1500.0;
  s.vessels.push_back(vessel("own", 0, -approach, 10, 0, {0, p.width + approach}, 20));

  const double lane_center = p.two_lane ? 0.25 * p.width : 0.5 * p.width;
  const double lane_half = p.two_lane ? 0.25 * p.width : 0.5 * p.width;
  // Traffic spans the ownship's crossing point over the time it spends in the channel.
  const double first_x = -0.25 * p.vessel_spacing * p.lane_vessel_count;
  auto add_lane = [&](const std::string& prefix, double center, double heading, double direction) {
    for (int i = 0; i < p.lane_vessel_count; ++i) {
      const double x = direction * (first_x + i * p.vessel_spacing) +
                       rng.uniform(-0.25, 0.25) * p.vessel_spacing;
      const double y = center + rng.uniform(-0.5, 0.5) * lane_half;
      const double speed = p.traffic_speed * rng.uniform(0.8, 1.2);
      s.vessels.push_back(vessel(prefix + std::to_string(i + 1), x, y, speed, heading, {x, y}, 40));
      s.vessels.back().goal.reset();
    }
  };
  add_lane("ts", lane_center, 270, 1.0);
  if (p.two_lane) add_lane("te", 0.75 * p.width, 90, -1.0);

  s.planner.d_th = 100;
  s.planner.mtd = 800;
  s.metadata["width_m"] = std::to_string(p.width);
  s.metadata["seed"] = std::to_string(p.rng_seed);
  return s;
}

const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names{"crossing", "head_on", "overtaking", "multi_vessel", "tss"};
  return names;
}

ScenarioSpec builtin_scenario(const std::string& name, std::uint64_t seed) {
  if (name == "crossing") return make_crossing();
  if (name == "crossing_port") return make_crossing(true);
  if (name == "head_on") return make_head_on();
  if (name == "overtaking") return make_overtaking();
  if (name == "multi_vessel") return make_multi_vessel();
  if (name == "tss") {
    TssParams p;
    p.rng_seed = seed;
    return make_tss(p);
  }
  throw std::out_of_range("unknown builtin scenario '" + name + "'");
}

}  // namespace vorrt
