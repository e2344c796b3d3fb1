#pragma once

#include <string>
#include <vector>

#include "vorrt/geometry.hpp"

namespace vorrt {

/// Kinematic state of one vessel. The footprint is a disc whose radius is the
/// vessel length.
struct VesselState {
  std::string id;
  Vec2 position;
  double speed = 0.0;        // m/s, >= 0
  double heading_deg = 0.0;  // clockwise from north
  double radius = 1.0;       // m, > 0
  Vec2 goal;

  Vec2 velocity() const { return velocity_from(heading_deg, speed); }
};

/// Bearing of `point` clockwise from the observer's heading, in [0, 360).
/// Throws DegenerateGeometry for coincident positions.
inline double relative_bearing(const VesselState& observer, const Vec2& point) {
  return relative_bearing_deg(observer.position, observer.heading_deg, point);
}

/// Joint snapshot of the ownship and every target vessel at one instant.
struct WorldState {
  VesselState ownship;
  std::vector<VesselState> targets;
  double time = 0.0;  // s since episode start

  const VesselState* find_target(const std::string& id) const;
};

/// Throws ValidationError on duplicate ids, negative speeds, nonpositive radii
/// or negative time.
void validate_world(const WorldState& world);

struct Waypoint {
  Vec2 position;
  double time = 0.0;
};

/// Ownship route as timed waypoints; consecutive legs are straight and flown
/// at constant speed.
struct Path {
  std::vector<Waypoint> waypoints;
  bool found_goal = false;

  bool empty() const { return waypoints.empty(); }
};

}  // namespace vorrt
