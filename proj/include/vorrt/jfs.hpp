#pragma once

// Joint forward simulation: every vessel moves with constant speed and
// heading, the ownship's heading is set per tree edge.

#include <limits>

#include "vorrt/world.hpp"

namespace vorrt {

inline constexpr double kUnlimitedTurn = std::numeric_limits<double>::infinity();

/// Steers the ownship toward `ownship_toward` and advances it `step_distance`
/// meters; every target advances for the same elapsed time
/// step_distance / ownship.speed along its current heading.
///
/// With a finite `max_turn_deg` the new heading is clamped to that many
/// degrees either side of the current one.
///
/// Throws std::invalid_argument for nonpositive step or ownship speed and
/// DegenerateGeometry when the target point coincides with the ownship.
WorldState propagate(const WorldState& world, const Vec2& ownship_toward, double step_distance,
                     double max_turn_deg = kUnlimitedTurn);

/// Advances every vessel, ownship included, `dt` seconds along its heading.
WorldState propagate_time(const WorldState& world, double dt);

inline constexpr double kDefaultCheckHorizon = 3600.0;

/// Re-checks the unflown part of a path against the current world.
///
/// The ownship flies from its current position through every waypoint later
/// than world.time, on the waypoint schedule; targets hold their current
/// velocity. Valid iff every ownship-target separation stays >= d_th until
/// the path ends or `check_horizon` seconds elapse, and no leg's velocity is
/// inside any target's velocity obstacle at the leg start. A path with no
/// remaining waypoints is valid.
bool validate_path(const Path& path, const WorldState& world, double d_th,
                   double check_horizon = kDefaultCheckHorizon);

}  // namespace vorrt
