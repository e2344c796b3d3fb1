#include <doctest.h>

#include "support.hpp"
#include "vorrt/errors.hpp"
#include "vorrt/planner.hpp"
#include "vorrt/scenarios.hpp"

using namespace vorrt;
using testing::Gen;
using testing::vessel;

namespace {

TreeNode root_of(const WorldState& w, const ColregsParams& p = {}) {
  TreeNode n;
  n.state = w;
  n.index = 0;
  n.encounters.update(w.ownship, w.targets, p);
  return n;
}

// Ownship at the origin heading north at 10 m/s. The target is placed so
// that, after one 100 m edge, the pair's closest approach is exactly `d_cpa`.
std::pair<TreeNode, WorldState> crossing_edge(double d_cpa) {
  const Vec2 v_own{0, 10};
  const Vec2 v_tgt = velocity_from(270, 8);
  const Vec2 w = v_own - v_tgt;
  const Vec2 u = w / w.norm();
  const Vec2 n{u.y(), -u.x()};
  const Vec2 own_after{0, 100};
  // relative position at the new node: closing along -u, offset d_cpa along n
  const Vec2 rel = u * -1500.0 + n * d_cpa;
  const Vec2 tgt_after = own_after - rel;
  const Vec2 tgt_before = tgt_after - v_tgt * 10.0;
  const auto start = testing::world(vessel("own", {0, 0}, 0, 10), {vessel("t", tgt_before, 270, 8)});
  TreeNode node;
  node.state = start;
  return {node, propagate(start, {0, 1000}, 100)};
}

bool edge_is_clockwise_or_straight(const Tree& tree, const TreeNode& child) {
  const TreeNode& parent = tree[*child.parent];
  return heading_change_deg(parent.state.ownship.heading_deg, child.state.ownship.heading_deg) >= -1e-9;
}

WorldState random_scene(Gen& g, int targets) {
  std::vector<VesselState> ts;
  const auto own = vessel("own", {0, 0}, 0, 10, 20, {0, 5000});
  for (int i = 0; i < targets; ++i) {
    const Vec2 p{g.range(-4000, 4000), g.range(1000, 4500)};
    ts.push_back(vessel("t" + std::to_string(i), p, g.range(0, 360), g.range(3, 10), 40));
    ts.back().goal = p;
  }
  return testing::world(own, ts);
}

}  // namespace

TEST_CASE("config validation") {
  PlannerConfig c;
  CHECK_NOTHROW(validate_config(c));
  auto bad = [](auto change) {
    PlannerConfig k;
    change(k);
    return k;
  };
  CHECK_THROWS_AS(validate_config(bad([](auto& k) { k.step_distance = 0; })), ConfigError);
  CHECK_THROWS_AS(validate_config(bad([](auto& k) { k.d_th = -1; })), ConfigError);
  CHECK_THROWS_AS(validate_config(bad([](auto& k) { k.phase_iterations = 0; })), ConfigError);
  CHECK_THROWS_AS(validate_config(bad([](auto& k) { k.goal_radius = 0; })), ConfigError);
  CHECK_THROWS_AS(validate_config(bad([](auto& k) { k.goal_bias_probability = 1.5; })), ConfigError);
  CHECK(c.step_distance == 100.0);
  CHECK(c.phase_iterations == 200);
  CHECK(c.max_phases == 2);
  CHECK(c.goal_bias_probability == 1.0);
  CHECK(c.max_restarts == 3);
}

TEST_CASE("sampling bounds enclose every start and goal with margin") {
  const auto w = to_world(make_crossing());
  const Bounds b = derive_sampling_bounds(w);
  CHECK(b.contains(w.ownship.position));
  CHECK(b.contains(w.ownship.goal));
  for (const auto& t : w.targets) {
    CHECK(b.contains(t.position));
    CHECK(b.contains(t.goal));
  }
  // every side gets a quarter of the larger extent
  std::vector<Vec2> pts{w.ownship.position, w.ownship.goal};
  for (const auto& t : w.targets) pts.insert(pts.end(), {t.position, t.goal});
  double lo_x = 1e18, hi_x = -1e18, lo_y = 1e18, hi_y = -1e18;
  for (const auto& q : pts) {
    lo_x = std::min(lo_x, q.x());
    hi_x = std::max(hi_x, q.x());
    lo_y = std::min(lo_y, q.y());
    hi_y = std::max(hi_y, q.y());
  }
  const double pad = 0.25 * std::max(hi_x - lo_x, hi_y - lo_y);
  CHECK(b.min_x == doctest::Approx(lo_x - pad));
  CHECK(b.max_y == doctest::Approx(hi_y + pad));
  CHECK(b.max_y - b.min_y == doctest::Approx(hi_y - lo_y + 2 * pad));
}

TEST_CASE("vo_collision") {
  SUBCASE("no targets") {
    const auto w = testing::world(vessel("own", {0, 0}, 0, 10));
    TreeNode n = root_of(w);
    const auto after = propagate(w, {0, 500}, 100);
    CHECK_FALSE(vo_collision(after.ownship.position, n, after, 200));
  }
  SUBCASE("stationary target dead ahead") {
    const auto w = testing::world(vessel("own", {0, 0}, 0, 10, 20), {vessel("t", {0, 500}, 0, 0, 40)});
    TreeNode n = root_of(w);
    const auto after = propagate(w, {0, 1000}, 100);
    const Vec2 v = after.ownship.velocity();
    CHECK(in_velocity_obstacle(after.ownship.position, v, after.targets[0].position, {0, 0}, 60));
    CHECK(distance_at_cpa(after.ownship.position, after.targets[0].position, v, {0, 0}) < 200);
    CHECK(vo_collision(after.ownship.position, n, after, 200));
  }
  SUBCASE("closest approach straddling the threshold") {
    auto [near_node, near_after] = crossing_edge(199.9);
    auto [far_node, far_after] = crossing_edge(200.1);
    const auto& o = near_after.ownship;
    const auto& t = near_after.targets[0];
    CHECK(distance_at_cpa(o.position, t.position, o.velocity(), t.velocity()) == doctest::Approx(199.9));
    // brute force: 0.01 s over 600 s
    const auto m = testing::sampled_min_separation(o.position, t.position, o.velocity(), t.velocity(), 600, 0.01);
    CHECK(std::abs(m.distance - 199.9) < 0.05);
    CHECK(vo_collision(near_after.ownship.position, near_node, near_after, 200));
    const auto& fo = far_after.ownship;
    const auto& ft = far_after.targets[0];
    CHECK_FALSE(in_velocity_obstacle(fo.position, fo.velocity(), ft.position, ft.velocity(), 40));
    CHECK_FALSE(vo_collision(far_after.ownship.position, far_node, far_after, 200));
  }
}

TEST_CASE("nearest node") {
  Tree tree;
  for (int i = 0; i < 3; ++i) {
    TreeNode n;
    n.state = testing::world(vessel("own", {100.0 * i, 0}, 0, 10));
    n.index = tree.size();
    if (i) n.parent = 0;
    tree.push_back(n);
  }
  CHECK(nearest_node(Tree{tree[0]}, {500, 500}).index == 0);
  CHECK(nearest_node(tree, {140, 0}).index == 1);
  // equidistant from indices 0 and 1
  CHECK(nearest_node(tree, {50, 0}).index == 0);
  CHECK(nearest_node(tree, {100, 500}).index == 1);
  Tree ties;
  for (int i = 0; i < 8; ++i) {
    TreeNode n;
    n.state = testing::world(vessel("own", {i == 3 || i == 7 ? 0.0 : 1000.0 + i, i == 3 ? 10.0 : (i == 7 ? -10.0 : 0.0)}, 0, 10));
    n.index = ties.size();
    ties.push_back(n);
  }
  CHECK(nearest_node(ties, {0, 0}).index == 3);
}

TEST_CASE("extract path") {
  const auto w = testing::world(vessel("own", {0, 0}, 0, 10, 20, {0, 900}));
  Tree tree{root_of(w)};
  CHECK(extract_path(tree, 0).waypoints.size() == 1);
  for (int i = 1; i <= 9; ++i) {
    TreeNode n;
    n.state = propagate(tree.back().state, {0, 900}, 100);
    n.parent = tree.size() - 1;
    n.index = tree.size();
    tree.push_back(n);
  }
  const Path p = extract_path(tree, 9);
  REQUIRE(p.waypoints.size() == 10);
  for (int i = 0; i < 10; ++i) CHECK(p.waypoints[i].time == doctest::Approx(10.0 * i));
  CHECK_THROWS_AS(extract_path(tree, 10), StructuralError);
  Tree dangling = tree;
  dangling[5].parent = 42;
  CHECK_THROWS_AS(extract_path(dangling, 9), StructuralError);
  Tree cyclic = tree;
  cyclic[2].parent = 7;
  CHECK_THROWS_AS(extract_path(cyclic, 9), StructuralError);
}

TEST_CASE("branch length does not depend on tree size") {
  const auto spec = make_crossing();
  auto cfg = to_config(spec);
  cfg.smooth_path = false;
  const auto r = plan_detailed(to_world(spec), cfg);
  REQUIRE(r.path.found_goal);
  std::size_t depth = 0;
  for (std::size_t cur = r.tree.size(); cur-- > 0;) {
    if (distance(r.tree[cur].state.ownship.position, r.path.waypoints.back().position) == 0.0) {
      for (auto k = std::optional<std::size_t>(cur); k; k = r.tree[*k].parent) ++depth;
      break;
    }
  }
  CHECK(r.path.waypoints.size() == depth);
  CHECK(r.tree.size() >= depth);
}

TEST_CASE("goal bias on open water is a straight march") {
  const auto w = testing::world(vessel("own", {0, 0}, 0, 10, 20, {0, 900}));
  Tree tree{root_of(w)};
  PlannerConfig c;
  SampleRng rng(0, 0);
  const auto g = grow_tree(tree, true, 200, c, derive_sampling_bounds(w), rng);
  CHECK(g.reached_goal);
  CHECK(g.outcome == GrowthOutcome::ReachedGoal);
  CHECK(g.inserted == 9);
  const Path p = extract_path(tree, *g.goal_index);
  REQUIRE(p.waypoints.size() == 10);
  for (const auto& wp : p.waypoints) CHECK(std::abs(wp.position.x()) < 1e-9);
  CHECK(p.waypoints.back().position.y() == doctest::Approx(900.0));
}

TEST_CASE("an impassable barrier is reported honestly") {
  // stationary wall across the bounds with 10 m gaps between 60 m combined radii
  std::vector<VesselState> wall;
  for (int i = -40; i <= 40; ++i) wall.push_back(vessel("w" + std::to_string(i + 40), {i * 50.0, 1000}, 0, 0, 15));
  auto w = testing::world(vessel("own", {0, 0}, 0, 10, 20, {0, 2000}), wall);
  PlannerConfig c;
  c.sampling_bounds = Bounds{-1500, -500, 1500, 2500};
  Tree tree{root_of(w, c.colregs())};
  SampleRng rng(1, 1);
  const auto phase1 = grow_tree(tree, true, c.phase_iterations, c, *c.sampling_bounds, rng);
  const auto phase2 = grow_tree(tree, false, c.phase_iterations, c, *c.sampling_bounds, rng);
  CHECK_FALSE(phase1.reached_goal);
  CHECK_FALSE(phase2.reached_goal);
  const auto r = plan_detailed(w, c);
  CHECK_FALSE(r.path.found_goal);
  CHECK(r.attempts.size() == static_cast<std::size_t>(c.max_restarts + 1));
  CHECK(r.path.waypoints.size() == 1);
}

TEST_CASE("plan rejects unusable inputs") {
  auto w = testing::world(vessel("own", {0, 0}, 0, 0, 20, {0, 900}));
  CHECK_THROWS_AS(plan(w, PlannerConfig{}), ConfigError);
  w.ownship.speed = 10;
  PlannerConfig c;
  c.sampling_bounds = Bounds{-100, -100, 100, 100};
  CHECK_THROWS_AS(plan(w, c), ConfigError);
}

TEST_CASE("phase two extends the phase one tree") {
  const auto spec = make_crossing();
  const auto r = plan_detailed(to_world(spec), to_config(spec));
  REQUIRE_FALSE(r.attempts.empty());
  const auto& a = r.attempts.back();
  CHECK(a.phases_run <= 2);
  CHECK(a.phase1.inserted <= 200);
  const int second = a.phase2 ? a.phase2->inserted : 0;
  CHECK(a.tree_size == static_cast<std::size_t>(1 + a.phase1.inserted + second));
}

TEST_CASE("crossing tree turns to starboard near the conflict") {
  const auto spec = make_crossing();
  const auto r = plan_detailed(to_world(spec), to_config(spec));
  int latched_edges = 0;
  for (const auto& n : r.tree) {
    if (!n.parent) continue;
    const auto& parent = r.tree[*n.parent];
    const Encounter* e = parent.encounters.find("ts1");
    if (!e || e->kind != EncounterKind::CrossingGiveWay) continue;
    ++latched_edges;
    CHECK(heading_change_deg(parent.state.ownship.heading_deg, n.state.ownship.heading_deg) >= -1e-9);
  }
  CHECK(latched_edges > 0);
}

TEST_CASE("property: every tree is safe, well formed and deterministic") {
  Gen g(41);
  for (int s = 0; s < 12; ++s) {
    const auto w = random_scene(g, g.integer(1, 4));
    PlannerConfig c;
    c.rng_seed = s;
    c.max_restarts = 0;
    const auto r = plan_detailed(w, c);
    const auto again = plan_detailed(w, c);
    REQUIRE(again.tree.size() == r.tree.size());
    CHECK(again.path.waypoints.size() == r.path.waypoints.size());
    for (std::size_t i = 0; i < r.tree.size(); ++i) {
      const auto& n = r.tree[i];
      CHECK(n.index == i);
      CHECK(n.state.ownship.position == again.tree[i].state.ownship.position);
      if (!n.parent) {
        CHECK(i == 0);
        continue;
      }
      REQUIRE(*n.parent < i);
      const auto& p = r.tree[*n.parent];
      CHECK(n.state.time > p.state.time);
      const bool at_goal = distance(n.state.ownship.position, w.ownship.goal) < 1e-6;
      if (!at_goal) CHECK(distance(n.state.ownship.position, p.state.ownship.position) == doctest::Approx(100.0).epsilon(1e-8));
      const Vec2 v = n.state.ownship.velocity();
      for (std::size_t k = 0; k < n.state.targets.size(); ++k) {
        const auto& t = n.state.targets[k];
        const double combined = n.state.ownship.radius + t.radius;
        CHECK_FALSE(in_velocity_obstacle(n.state.ownship.position, v, t.position, t.velocity(), combined));
        CHECK(distance_at_cpa(n.state.ownship.position, t.position, v, t.velocity()) >= c.d_th);
      }
    }
  }
}

TEST_CASE("property: flown paths keep the threshold at 0.1 s resolution") {
  Gen g(42);
  int found = 0;
  for (int s = 0; s < 12; ++s) {
    const auto w = random_scene(g, g.integer(1, 4));
    PlannerConfig c;
    c.rng_seed = s;
    const Path p = plan(w, c);
    if (!p.found_goal) continue;
    ++found;
    CHECK(testing::replay_min_separation(p, w, 0.1) >= c.d_th - 1e-6);
  }
  CHECK(found >= 8);
}

TEST_CASE("property: latched rules are obeyed along every extracted path") {
  Gen g(43);
  int starboard_edges = 0, stand_on_edges = 0;
  for (int s = 0; s < 30; ++s) {
    const auto w = random_scene(g, g.integer(1, 5));
    PlannerConfig c;
    c.rng_seed = s;
    c.max_restarts = 0;
    const auto r = plan_detailed(w, c);
    for (const auto& n : r.tree) {
      if (!n.parent) continue;
      const auto& parent = r.tree[*n.parent];
      for (const auto& e : parent.encounters.active()) {
        if (required_action(e) == RequiredAction::TurnStarboard) {
          ++starboard_edges;
          CHECK(edge_is_clockwise_or_straight(r.tree, n));
        } else if (required_action(e) == RequiredAction::StandOn) {
          ++stand_on_edges;
          CHECK(std::abs(heading_change_deg(parent.state.ownship.heading_deg, n.state.ownship.heading_deg)) <= 1.0);
          CHECK(std::abs(parent.state.ownship.speed - n.state.ownship.speed) <= 0.1);
        }
      }
    }
  }
  CHECK(starboard_edges > 0);
  CHECK(stand_on_edges > 0);
}

TEST_CASE("literal steering rejects forbidden turns instead of holding course") {
  const auto spec = make_crossing();
  auto c = to_config(spec);
  c.steer_compliant = false;
  c.max_restarts = 0;
  const auto r = plan_detailed(to_world(spec), c);
  int gated = 0;
  for (const auto& n : r.tree) {
    if (!n.parent) continue;
    const auto& parent = r.tree[*n.parent];
    const auto* e = parent.encounters.find("ts1");
    if (e && required_action(*e) == RequiredAction::TurnStarboard) {
      ++gated;
      CHECK(heading_change_deg(parent.state.ownship.heading_deg, n.state.ownship.heading_deg) >= -1e-9);
    }
  }
  CHECK(gated > 0);
  TreeNode node = root_of(to_world(spec), c.colregs());
  c.steer_compliant = true;
  // the goal lies to port of a starboard-turned node: hold course
  node.state.ownship.heading_deg = 60;
  const Vec2 aim = steering_target(node, {-1000, 3000}, c);
  CHECK(bearing_deg(node.state.ownship.position, aim) == doctest::Approx(60.0));
  c.steer_compliant = false;
  CHECK(steering_target(node, {-1000, 3000}, c) == Vec2{-1000, 3000});
}

TEST_CASE("property: shortcuts keep a subsequence of the raw path and never slow it") {
  Gen g(44);
  int shortened = 0;
  for (int s = 0; s < 20; ++s) {
    const auto w = random_scene(g, g.integer(1, 4));
    PlannerConfig c;
    c.rng_seed = s;
    c.max_restarts = 0;
    const auto r = plan_detailed(w, c);
    if (!r.path.found_goal) continue;
    std::size_t goal = r.tree.size() - 1;
    const Path raw = extract_path(r.tree, goal);
    const Path& smooth = r.path;
    REQUIRE(smooth.waypoints.size() <= raw.waypoints.size());
    CHECK(distance(smooth.waypoints.back().position, raw.waypoints.back().position) < 1e-6);
    CHECK(smooth.waypoints.back().time <= raw.waypoints.back().time + 1e-9);
    std::size_t k = 0;
    for (const auto& wp : smooth.waypoints) {
      while (k < raw.waypoints.size() && distance(raw.waypoints[k].position, wp.position) > 1e-6) ++k;
      CHECK(k < raw.waypoints.size());
    }
    for (std::size_t i = 1; i < smooth.waypoints.size(); ++i) {
      const auto& a = smooth.waypoints[i - 1];
      const auto& b = smooth.waypoints[i];
      CHECK(distance(a.position, b.position) / (b.time - a.time) == doctest::Approx(w.ownship.speed));
    }
    shortened += smooth.waypoints.size() < raw.waypoints.size();
    CHECK(testing::replay_min_separation(smooth, w, 0.1) >= c.d_th - 1e-6);
  }
  CHECK(shortened > 0);
}
