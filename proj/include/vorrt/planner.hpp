#pragma once

// Velocity-obstacle RRT: a two-phase goal-biased tree whose nodes carry the
// joint forward-simulated world, with each edge filtered by velocity
// obstacles, a closest-approach threshold and the active COLREGs actions.

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "vorrt/colregs.hpp"
#include "vorrt/jfs.hpp"
#include "vorrt/world.hpp"

namespace vorrt {

struct Bounds {
  double min_x = 0.0;
  double min_y = 0.0;
  double max_x = 0.0;
  double max_y = 0.0;

  bool contains(const Vec2& p) const {
    return p.x() >= min_x && p.x() <= max_x && p.y() >= min_y && p.y() <= max_y;
  }
  bool operator==(const Bounds&) const = default;
};

/// Rectangle around every vessel start and goal, grown on each side by a
/// quarter of its larger extent.
Bounds derive_sampling_bounds(const WorldState& world);

struct PlannerConfig {
  double step_distance = 100.0;  // d', m per tree edge
  int phase_iterations = 200;    // successful insertions per phase
  int max_phases = 2;
  double d_th = 200.0;           // minimum acceptable closest approach, m
  double mtd = 5000.0;           // risk gate, m
  double goal_radius = 50.0;     // m
  double goal_bias_probability = 1.0;         // phase 1
  double unbiased_goal_probability = 0.5;     // phase 2
  std::uint64_t rng_seed = 0;
  std::optional<Bounds> sampling_bounds;      // derived from the world when empty
  double head_on_tolerance = 6.0;             // degrees
  int max_restarts = 3;
  double stand_on_heading_tolerance = 1.0;    // degrees
  double stand_on_speed_tolerance = 0.1;      // m/s
  double max_turn_per_step = kUnlimitedTurn;  // degrees
  int attempt_cap_factor = 50;                // attempts allowed per insertion budget
  bool steer_compliant = true;  // hold course instead of steering into a forbidden turn
  bool smooth_path = true;      // shortcut the extracted path

  ColregsParams colregs() const;
};

/// Throws ConfigError when a field is out of range.
void validate_config(const PlannerConfig& config);

struct TreeNode {
  WorldState state;
  std::optional<std::size_t> parent;
  std::size_t index = 0;
  EncounterLatch encounters;  // in force at this node
};

using Tree = std::vector<TreeNode>;

/// Seeded stream used by the sampler. Doubles are built from the raw 64-bit
/// output so results do not depend on the standard library's distributions.
class SampleRng {
 public:
  SampleRng(std::uint64_t seed, std::uint64_t stream);
  double uniform01();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

 private:
  std::mt19937_64 engine_;
};

/// Point the ownship steers at from `node` when asked to head for `sample`.
/// With steer_compliant set, a latched StandOn, or a TurnStarboard with a
/// port-side sample, replaces the sample with a point dead ahead.
Vec2 steering_target(const TreeNode& node, const Vec2& sample, const PlannerConfig& config);

/// True when taking the edge from `node` to `pos_new` is unsafe: for some
/// target the edge velocity lies in its velocity obstacle, or the closest
/// approach on that velocity is below d_th. The closest approach is measured
/// from the start of the edge, so the swept leg is covered as well as
/// everything after it.
bool vo_collision(const Vec2& pos_new, const TreeNode& node, const WorldState& world_after, double d_th);

/// Node whose ownship is closest to `pos`; ties go to the lowest index.
const TreeNode& nearest_node(const Tree& nodes, const Vec2& pos);

/// Root-to-node waypoints. Throws StructuralError on a dangling or cyclic
/// parent chain.
Path extract_path(const Tree& nodes, std::size_t goal_index);

/// Greedy shortcut of the root-to-goal chain: from each kept waypoint, fly
/// straight to the furthest later waypoint whose leg passes the same
/// collision and rule checks as a tree edge, re-simulated on the new timing.
/// Falls back to the unsmoothed path when some stretch admits no leg.
Path shortcut_path(const Tree& nodes, std::size_t goal_index, const PlannerConfig& config);

enum class GrowthOutcome { ReachedGoal, BudgetSpent, Exhausted };

struct GrowthResult {
  bool reached_goal = false;
  std::optional<std::size_t> goal_index;
  int inserted = 0;
  int attempts = 0;
  GrowthOutcome outcome = GrowthOutcome::BudgetSpent;
};

/// Grows the tree by up to `iterations` accepted nodes. Rejected samples do
/// not consume the budget; the call gives up as Exhausted after
/// attempt_cap_factor * iterations attempts, or as soon as a rejected
/// goal-directed sample is certain to repeat identically.
GrowthResult grow_tree(Tree& nodes, bool toward_goal, int iterations, const PlannerConfig& config,
                       const Bounds& bounds, SampleRng& rng);

struct AttemptStats {
  int phases_run = 0;
  GrowthResult phase1;
  std::optional<GrowthResult> phase2;
  std::size_t tree_size = 0;
};

struct PlanResult {
  Path path;
  std::vector<AttemptStats> attempts;
  Tree tree;  // the last tree grown
};

/// Runs the goal-biased phase, then an unbiased phase if the goal was not
/// reached, restarting with a fresh tree up to max_restarts times.
///
/// `encounters` are those already in force (from an ongoing episode); when
/// empty they are classified from the root state.
///
/// Throws ConfigError when the ownship is stationary or its goal lies outside
/// the sampling bounds.
PlanResult plan_detailed(const WorldState& world, const PlannerConfig& config,
                         const std::optional<EncounterLatch>& encounters = std::nullopt);

inline Path plan(const WorldState& world, const PlannerConfig& config,
                 const std::optional<EncounterLatch>& encounters = std::nullopt) {
  return plan_detailed(world, config, encounters).path;
}

}  // namespace vorrt
