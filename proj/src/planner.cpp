#include "vorrt/planner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "vorrt/errors.hpp"

namespace vorrt {

ColregsParams PlannerConfig::colregs() const {
  ColregsParams p;
  p.mtd = mtd;
  p.head_on_tolerance_deg = head_on_tolerance;
  p.stand_on_heading_tol_deg = stand_on_heading_tolerance;
  p.stand_on_speed_tol = stand_on_speed_tolerance;
  return p;
}

void validate_config(const PlannerConfig& c) {
  if (!(c.step_distance > 0.0)) throw ConfigError("step_distance must be positive");
  if (!(c.d_th > 0.0)) throw ConfigError("d_th must be positive");
  if (!(c.mtd > 0.0)) throw ConfigError("mtd must be positive");
  if (!(c.goal_radius > 0.0)) throw ConfigError("goal_radius must be positive");
  if (c.phase_iterations <= 0) throw ConfigError("phase_iterations must be positive");
  if (c.max_phases < 1 || c.max_phases > 2) throw ConfigError("max_phases must be 1 or 2");
  if (c.max_restarts < 0) throw ConfigError("max_restarts must be non-negative");
  if (c.attempt_cap_factor <= 0) throw ConfigError("attempt_cap_factor must be positive");
  if (!(c.goal_bias_probability >= 0.0 && c.goal_bias_probability <= 1.0)) {
    throw ConfigError("goal_bias_probability must lie in [0, 1]");
  }
  if (!(c.unbiased_goal_probability >= 0.0 && c.unbiased_goal_probability <= 1.0)) {
    throw ConfigError("unbiased_goal_probability must lie in [0, 1]");
  }
  if (!(c.head_on_tolerance >= 0.0 && c.head_on_tolerance < 90.0)) {
    throw ConfigError("head_on_tolerance must lie in [0, 90)");
  }
  if (!(c.max_turn_per_step > 0.0)) throw ConfigError("max_turn_per_step must be positive");
  if (c.sampling_bounds) {
    const auto& b = *c.sampling_bounds;
    if (!(b.max_x > b.min_x && b.max_y > b.min_y)) throw ConfigError("sampling_bounds must have positive area");
  }
}

Bounds derive_sampling_bounds(const WorldState& world) {
  double min_x = std::numeric_limits<double>::infinity();
  double min_y = min_x;
  double max_x = -min_x;
  double max_y = -min_x;
  auto include = [&](const Vec2& p) {
    min_x = std::min(min_x, p.x());
    min_y = std::min(min_y, p.y());
    max_x = std::max(max_x, p.x());
    max_y = std::max(max_y, p.y());
  };
  include(world.ownship.position);
  include(world.ownship.goal);
  for (const auto& t : world.targets) {
    include(t.position);
    include(t.goal);
  }
  double pad = 0.25 * std::max(max_x - min_x, max_y - min_y);
  if (pad <= 0.0) pad = 1.0;
  return {min_x - pad, min_y - pad, max_x + pad, max_y + pad};
}

SampleRng::SampleRng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  engine_.seed(seq);
}

double SampleRng::uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

bool vo_collision(const Vec2& pos_new, const TreeNode& node, const WorldState& world_after, double d_th) {
  const VesselState& own_before = node.state.ownship;
  const Vec2 step = pos_new - own_before.position;
  const double len = step.norm();
  const Vec2 v_a = len > 0.0 ? step * (own_before.speed / len) : Vec2{};
  const double own_radius = world_after.ownship.radius;

  for (std::size_t i = 0; i < world_after.targets.size(); ++i) {
    const VesselState& tgt = world_after.targets[i];
    const Vec2 v_v = tgt.velocity();
    if (in_velocity_obstacle(pos_new, v_a, tgt.position, v_v, own_radius + tgt.radius)) return true;
    if (distance_at_cpa(pos_new, tgt.position, v_a, v_v) < d_th) return true;
    if (i < node.state.targets.size()) {
      const VesselState& tgt_before = node.state.targets[i];
      if (distance_at_cpa(own_before.position, tgt_before.position, v_a, tgt_before.velocity()) < d_th) {
        return true;
      }
    }
  }
  return false;
}

const TreeNode& nearest_node(const Tree& nodes, const Vec2& pos) {
  std::size_t best = 0;
  double best_d2 = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const double d2 = (nodes[i].state.ownship.position - pos).norm_sq();
    if (d2 < best_d2) {
      best_d2 = d2;
      best = i;
    }
  }
  return nodes.at(best);
}

Path extract_path(const Tree& nodes, std::size_t goal_index) {
  if (goal_index >= nodes.size()) throw StructuralError("goal node is not part of the tree");
  std::vector<Waypoint> reversed;
  std::optional<std::size_t> cur = goal_index;
  while (cur) {
    if (*cur >= nodes.size()) throw StructuralError("dangling parent index");
    if (reversed.size() > nodes.size()) throw StructuralError("cycle in parent chain");
    const TreeNode& n = nodes[*cur];
    reversed.push_back({n.state.ownship.position, n.state.time});
    cur = n.parent;
  }
  Path p;
  p.waypoints.assign(reversed.rbegin(), reversed.rend());
  return p;
}

Vec2 steering_target(const TreeNode& node, const Vec2& sample, const PlannerConfig& config) {
  if (!config.steer_compliant) return sample;
  const VesselState& own = node.state.ownship;
  bool hold = false;
  for (const Encounter& e : node.encounters.active()) {
    const RequiredAction a = required_action(e);
    if (a == RequiredAction::StandOn) {
      hold = true;
    } else if (a == RequiredAction::TurnStarboard && sample != own.position &&
               heading_change_deg(own.heading_deg, bearing_deg(own.position, sample)) < 0.0) {
      hold = true;
    }
  }
  if (!hold) return sample;
  return own.position + heading_unit(own.heading_deg) * config.step_distance;
}

namespace {

bool compliant_edge(const TreeNode& from, const WorldState& after, const ColregsParams& params) {
  for (const Encounter& e : from.encounters.active()) {
    for (const auto& t : after.targets) {
      if (t.id != e.target_id) continue;
      if (!is_compliant_motion(from.state.ownship, after.ownship, t, e, params)) return false;
    }
  }
  return true;
}

bool landed_on(const WorldState& after, const Vec2& target) { return distance(after.ownship.position, target) < 1e-6; }

}  // namespace

Path shortcut_path(const Tree& nodes, std::size_t goal_index, const PlannerConfig& config) {
  const Path raw = extract_path(nodes, goal_index);
  const auto& w = raw.waypoints;
  const ColregsParams params = config.colregs();
  TreeNode cur = nodes.front();
  Path out;
  out.waypoints.push_back(w.front());
  std::size_t i = 0;
  while (i + 1 < w.size()) {
    bool moved = false;
    for (std::size_t j = w.size() - 1; j > i; --j) {
      const double len = distance(cur.state.ownship.position, w[j].position);
      if (len <= 0.0) continue;
      const WorldState after = propagate(cur.state, w[j].position, len, config.max_turn_per_step);
      if (!landed_on(after, w[j].position) || vo_collision(after.ownship.position, cur, after, config.d_th) ||
          !compliant_edge(cur, after, params)) {
        continue;
      }
      cur.state = after;
      cur.encounters.update(after.ownship, after.targets, params);
      out.waypoints.push_back({after.ownship.position, after.time});
      i = j;
      moved = true;
      break;
    }
    if (!moved) return raw;
  }
  out.found_goal = raw.found_goal;
  return out;
}

GrowthResult grow_tree(Tree& nodes, bool toward_goal, int iterations, const PlannerConfig& config,
                       const Bounds& bounds, SampleRng& rng) {
  if (nodes.empty()) throw std::invalid_argument("grow_tree needs a root node");
  const ColregsParams params = config.colregs();
  const Vec2 goal = nodes.front().state.ownship.goal;
  const double goal_probability = toward_goal ? config.goal_bias_probability : config.unbiased_goal_probability;
  const long attempt_cap = static_cast<long>(config.attempt_cap_factor) * iterations;

  GrowthResult result;
  while (result.inserted < iterations) {
    if (result.attempts >= attempt_cap) {
      result.outcome = GrowthOutcome::Exhausted;
      return result;
    }
    ++result.attempts;

    const bool goal_sample = goal_probability >= 1.0 || (goal_probability > 0.0 && rng.uniform01() < goal_probability);
    const Vec2 pos = goal_sample ? goal
                                 : Vec2{rng.uniform(bounds.min_x, bounds.max_x), rng.uniform(bounds.min_y, bounds.max_y)};

    const TreeNode& selected = nearest_node(nodes, pos);
    const Vec2 aim = steering_target(selected, pos, config);
    bool accepted = false;
    if (selected.state.ownship.position != aim) {
      // The last edge toward the goal may be shorter so it lands on it.
      const double gap = distance(selected.state.ownship.position, aim);
      const double step = goal_sample && aim == pos ? std::min(config.step_distance, gap) : config.step_distance;
      const WorldState after = propagate(selected.state, aim, step, config.max_turn_per_step);
      if (!vo_collision(after.ownship.position, selected, after, config.d_th) &&
          compliant_edge(selected, after, params)) {
        TreeNode node;
        node.state = after;
        node.parent = selected.index;
        node.index = nodes.size();
        node.encounters = selected.encounters;
        node.encounters.update(after.ownship, after.targets, params);
        nodes.push_back(std::move(node));
        ++result.inserted;
        accepted = true;
        if (distance(nodes.back().state.ownship.position, goal) < config.goal_radius) {
          result.reached_goal = true;
          result.goal_index = nodes.back().index;
          result.outcome = GrowthOutcome::ReachedGoal;
          return result;
        }
      }
    }
    // Every later goal-only sample would pick the same node and edge.
    if (!accepted && goal_sample && goal_probability >= 1.0) {
      result.outcome = GrowthOutcome::Exhausted;
      return result;
    }
  }
  result.outcome = GrowthOutcome::BudgetSpent;
  return result;
}

PlanResult plan_detailed(const WorldState& world, const PlannerConfig& config,
                         const std::optional<EncounterLatch>& encounters) {
  validate_config(config);
  if (!(world.ownship.speed > 0.0)) throw ConfigError("ownship speed must be positive");
  const Bounds bounds = config.sampling_bounds.value_or(derive_sampling_bounds(world));
  if (!bounds.contains(world.ownship.goal)) throw ConfigError("ownship goal lies outside the sampling bounds");

  TreeNode root;
  root.state = world;
  root.index = 0;
  if (encounters) {
    root.encounters = *encounters;
  } else {
    root.encounters.update(world.ownship, world.targets, config.colregs());
  }

  PlanResult result;
  for (int attempt = 0; attempt <= config.max_restarts; ++attempt) {
    SampleRng rng(config.rng_seed, static_cast<std::uint64_t>(attempt));
    Tree tree{root};
    AttemptStats stats;

    stats.phase1 = grow_tree(tree, true, config.phase_iterations, config, bounds, rng);
    stats.phases_run = 1;
    std::optional<std::size_t> goal_index = stats.phase1.goal_index;
    if (!goal_index && config.max_phases >= 2) {
      stats.phase2 = grow_tree(tree, false, config.phase_iterations, config, bounds, rng);
      stats.phases_run = 2;
      goal_index = stats.phase2->goal_index;
    }
    stats.tree_size = tree.size();
    result.attempts.push_back(stats);

    if (goal_index) {
      result.path = config.smooth_path ? shortcut_path(tree, *goal_index, config) : extract_path(tree, *goal_index);
      result.path.found_goal = true;
      result.tree = std::move(tree);
      return result;
    }
    result.tree = std::move(tree);
  }
  result.path.waypoints = {{world.ownship.position, world.time}};
  result.path.found_goal = false;
  return result;
}

}  // namespace vorrt
