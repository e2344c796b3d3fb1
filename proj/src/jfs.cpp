#include "vorrt/jfs.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "vorrt/errors.hpp"

namespace vorrt {

namespace {

void advance_target(VesselState& v, double dt) { v.position += v.velocity() * dt; }

}  // namespace

WorldState propagate(const WorldState& world, const Vec2& ownship_toward, double step_distance,
                     double max_turn_deg) {
  if (!(step_distance > 0.0)) throw std::invalid_argument("step distance must be positive");
  if (!(world.ownship.speed > 0.0)) throw std::invalid_argument("ownship speed must be positive to propagate");

  double heading = bearing_deg(world.ownship.position, ownship_toward);
  if (std::isfinite(max_turn_deg)) {
    const double turn = std::clamp(heading_change_deg(world.ownship.heading_deg, heading), -max_turn_deg,
                                   max_turn_deg);
    heading = normalize_deg(world.ownship.heading_deg + turn);
  }

  const double dt = step_distance / world.ownship.speed;
  WorldState next = world;
  next.time = world.time + dt;
  next.ownship.heading_deg = heading;
  next.ownship.position = world.ownship.position + heading_unit(heading) * step_distance;
  for (auto& t : next.targets) advance_target(t, dt);
  return next;
}

WorldState propagate_time(const WorldState& world, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("time step must be positive");
  WorldState next = world;
  next.time = world.time + dt;
  advance_target(next.ownship, dt);
  for (auto& t : next.targets) advance_target(t, dt);
  return next;
}

bool validate_path(const Path& path, const WorldState& world, double d_th, double check_horizon) {
  const double horizon_end = world.time + check_horizon;
  Vec2 leg_start = world.ownship.position;
  double leg_t0 = world.time;

  for (const auto& wp : path.waypoints) {
    if (wp.time <= leg_t0) continue;
    if (leg_t0 >= horizon_end) break;
    const Vec2 v_own = (wp.position - leg_start) / (wp.time - leg_t0);
    // Window relative to the leg start, cut at the horizon.
    const double window = std::min(wp.time, horizon_end) - leg_t0;
    const double since_now = leg_t0 - world.time;
    for (const auto& t : world.targets) {
      const Vec2 tgt_start = t.position + t.velocity() * since_now;
      if (min_separation_in_window(leg_start, tgt_start, v_own, t.velocity(), 0.0, window) < d_th) {
        return false;
      }
      if (in_velocity_obstacle(leg_start, v_own, tgt_start, t.velocity(), world.ownship.radius + t.radius)) {
        return false;
      }
    }
    leg_start = wp.position;
    leg_t0 = wp.time;
  }
  return true;
}

}  // namespace vorrt
