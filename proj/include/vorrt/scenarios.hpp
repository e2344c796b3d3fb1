#pragma once

// Builtin encounter generators and the JSON scenario document.
//
// Document layout:
//   {
//     "name": "crossing",
//     "ownship": "own",
//     "vessels": [
//       {"id": "own", "x": 0, "y": 0, "speed": 10, "goal": {"x": 0, "y": 6000}, "length": 20},
//       {"id": "ts1", "x": 3000, "y": 3000, "speed": 10, "heading": 270}
//     ],
//     "planner": {"d_th": 200, "mtd": 5000},
//     "metadata": {"note": "..."}
//   }
// Units are meters, m/s and degrees clockwise from north. "length" is
// optional (default 20 m) and sets the footprint disc radius. Unknown keys
// are rejected.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vorrt/planner.hpp"
#include "vorrt/world.hpp"

namespace vorrt {

inline constexpr double kDefaultVesselLength = 20.0;

struct VesselSpec {
  std::string id;
  double x = 0.0;
  double y = 0.0;
  double speed = 0.0;
  std::optional<double> heading;
  std::optional<Vec2> goal;
  double length = kDefaultVesselLength;

  bool operator==(const VesselSpec&) const = default;
};

/// Partial PlannerConfig; only the fields that are set replace defaults.
struct PlannerOverrides {
  std::optional<double> step_distance;
  std::optional<int> phase_iterations;
  std::optional<int> max_phases;
  std::optional<double> d_th;
  std::optional<double> mtd;
  std::optional<double> goal_radius;
  std::optional<double> goal_bias_probability;
  std::optional<double> unbiased_goal_probability;
  std::optional<std::uint64_t> rng_seed;
  std::optional<Bounds> sampling_bounds;
  std::optional<double> head_on_tolerance;
  std::optional<int> max_restarts;
  std::optional<double> stand_on_heading_tolerance;
  std::optional<double> stand_on_speed_tolerance;
  std::optional<double> max_turn_per_step;
  std::optional<bool> steer_compliant;
  std::optional<bool> smooth_path;

  void apply_to(PlannerConfig& config) const;
  bool operator==(const PlannerOverrides&) const = default;
};

struct ScenarioSpec {
  std::string name;
  std::vector<VesselSpec> vessels;
  std::string ownship_id;
  PlannerOverrides planner;
  std::map<std::string, std::string> metadata;

  bool operator==(const ScenarioSpec&) const = default;
};

/// Throws ValidationError: missing or duplicate ownship, ownship without goal,
/// target with neither heading nor goal, duplicate ids, bad speed or length.
void validate_scenario(const ScenarioSpec& spec);

/// World at t = 0. Headings missing from the document point at the vessel's
/// goal; a target without a goal keeps its start position as goal.
WorldState to_world(const ScenarioSpec& spec);

/// Defaults, then the document's overrides; sampling bounds are derived from
/// the world unless overridden.
PlannerConfig to_config(const ScenarioSpec& spec, PlannerConfig base = {});

/// Throws ParseError (with line and field) on malformed or unknown content,
/// ValidationError on inconsistent content.
ScenarioSpec load_scenario(const std::string& text);
std::string save_scenario(const ScenarioSpec& spec);

// --- builtin generators ------------------------------------------------------

/// Ownship northbound, target crossing from starboard (or port when mirrored)
/// on a collision course.
ScenarioSpec make_crossing(bool mirrored = false);
/// Reciprocal courses, zero closest approach if unaltered.
ScenarioSpec make_head_on();
/// Ownship dead astern of a slower target on the same course.
ScenarioSpec make_overtaking();
/// Ownship plus three targets: a starboard crossing and a head-on at risk from
/// the start, and a third vessel still outside the risk gate.
ScenarioSpec make_multi_vessel();

struct TssParams {
  double width = 1852.0;  // m, one nautical mile
  int lane_vessel_count = 15;
  double vessel_spacing = 1000.0;  // m, mean along-lane gap
  double traffic_speed = 5.0;     // m/s
  std::uint64_t rng_seed = 0;
  bool two_lane = false;          // adds an eastbound lane in the northern half
};

/// Channel between y = 0 and y = width with westbound traffic; the ownship
/// starts south of it and must reach a goal north of it. Sets d_th = 100 m.
/// Throws ConfigError for nonpositive dimensions.
ScenarioSpec make_tss(const TssParams& params);

/// Names accepted by builtin_scenario.
const std::vector<std::string>& builtin_names();

/// Throws std::out_of_range for an unknown name. `seed` feeds the tss generator.
ScenarioSpec builtin_scenario(const std::string& name, std::uint64_t seed = 0);

}  // namespace vorrt
