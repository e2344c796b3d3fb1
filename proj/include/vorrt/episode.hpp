#pragma once

// Closed-loop episodes: plan, fly the path tick by tick, re-validate it
// against the moving traffic and replan when it stops being safe.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vorrt/colregs.hpp"
#include "vorrt/planner.hpp"
#include "vorrt/scenarios.hpp"

namespace vorrt {

/// Scripted manoeuvre of a target vessel, applied at the first tick whose time
/// is >= `time`.
struct CourseChange {
  std::string vessel_id;
  double time = 0.0;
  double heading_deg = 0.0;
  std::optional<double> speed;
};

struct EpisodeOptions {
  double tick = 1.0;  // s
  double max_time = 7200.0;
  double check_horizon = kDefaultCheckHorizon;
  std::vector<CourseChange> course_changes;
};

struct TickRecord {
  double time = 0.0;
  std::vector<VesselState> vessels;  // ownship first, then targets in scenario order
  std::vector<double> distances;     // ownship to each target
  std::vector<Encounter> encounters;
};

struct ReplanEvent {
  double time = 0.0;
  bool found_goal = false;
  std::size_t tree_size = 0;
};

enum class EpisodeStatus { GoalReached, NoPath, ReplanFailed, Timeout };

std::string_view to_string(EpisodeStatus status);

struct EpisodeSummary {
  EpisodeStatus status = EpisodeStatus::Timeout;
  std::vector<double> min_separation;  // per target
  double min_separation_overall = 0.0;
  double planning_time_s = 0.0;        // wall clock, all plans
  std::vector<std::size_t> tree_sizes;  // one per plan call
  int replans = 0;

  bool goal_reached() const { return status == EpisodeStatus::GoalReached; }
};

struct EpisodeLog {
  std::string scenario;
  std::uint64_t seed = 0;
  std::vector<std::string> vessel_ids;  // ownship first
  std::vector<TickRecord> ticks;
  std::vector<ReplanEvent> replans;
  std::vector<Path> paths;  // every plan in force, initial one first
  EpisodeSummary summary;
};

/// Position and leg heading of the ownship at time t on a timed path. Times
/// past either end clamp to the end waypoint. Throws std::invalid_argument for
/// an empty path.
std::pair<Vec2, double> pose_on_path(const Path& path, double t, double fallback_heading);

/// `config.rng_seed` seeds the first plan; replan k uses rng_seed + k.
EpisodeLog run_episode(const WorldState& world, const PlannerConfig& config, const EpisodeOptions& options = {});

/// Tick table: time_s, then <id>_x_m, <id>_y_m, <id>_heading_deg,
/// <id>_speed_mps per vessel, then dist_<own>_<target>_m per pair.
std::string episode_csv(const EpisodeLog& log);
std::string episode_summary_json(const EpisodeLog& log);

/// Waypoint table: index, x_m, y_m, time_s.
std::string path_csv(const Path& path);

/// Fixed six-decimal text used for every number in the CSV outputs.
std::string format_number(double value);

struct BatchRun {
  std::uint64_t seed = 0;
  EpisodeStatus status = EpisodeStatus::Timeout;
  double min_separation = 0.0;
  double planning_time_s = 0.0;
  int replans = 0;
};

struct BatchReport {
  std::string scenario;
  std::vector<BatchRun> runs;  // in seed order

  double success_rate() const;
};

/// Runs one episode per seed, up to `parallelism` at a time. Each episode
/// builds its scenario from the builtin name (tss placement uses the seed)
/// and plans with rng_seed = seed.
BatchReport run_batch(const std::string& builtin, const std::vector<std::uint64_t>& seeds, int parallelism,
                      const PlannerOverrides& overrides = {}, const EpisodeOptions& options = {});

/// Same, for a fixed scenario document.
BatchReport run_batch(const ScenarioSpec& spec, const std::vector<std::uint64_t>& seeds, int parallelism,
                      const PlannerOverrides& overrides = {}, const EpisodeOptions& options = {});

std::string batch_report_json(const BatchReport& report);

}  // namespace vorrt
