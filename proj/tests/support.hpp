#pragma once

// Shared helpers for the test binaries: a small seeded generator for property
// tests, brute-force sampling oracles, and world builders.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "vorrt/jfs.hpp"
#include "vorrt/planner.hpp"
#include "vorrt/world.hpp"

namespace testing {

// SplitMix64.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double range(double lo, double hi) { return lo + (hi - lo) * unit(); }
  int integer(int lo, int hi) { return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1)); }
  vorrt::Vec2 point(double half) { return {range(-half, half), range(-half, half)}; }
  vorrt::Vec2 velocity(double max_speed) { return vorrt::velocity_from(range(0, 360), range(0, max_speed)); }

 private:
  std::uint64_t state_;
};

// Minimum separation of two constant-velocity points sampled on a uniform grid.
struct SampledMin {
  double distance;
  double time;
};

inline SampledMin sampled_min_separation(const vorrt::Vec2& pa, const vorrt::Vec2& pb, const vorrt::Vec2& va,
                                         const vorrt::Vec2& vb, double horizon, double dt) {
  SampledMin best{std::numeric_limits<double>::infinity(), 0.0};
  const long steps = static_cast<long>(std::llround(horizon / dt));
  const vorrt::Vec2 dp = pa - pb;
  const vorrt::Vec2 dv = va - vb;
  for (long k = 0; k <= steps; ++k) {
    const double t = static_cast<double>(k) * dt;
    const double d = (dp + dv * t).norm();
    if (d < best.distance) best = {d, t};
  }
  return best;
}

inline vorrt::VesselState vessel(std::string id, vorrt::Vec2 pos, double heading, double speed, double radius = 20.0,
                                 vorrt::Vec2 goal = {}) {
  vorrt::VesselState v;
  v.id = std::move(id);
  v.position = pos;
  v.heading_deg = heading;
  v.speed = speed;
  v.radius = radius;
  v.goal = goal;
  return v;
}

inline vorrt::WorldState world(vorrt::VesselState own, std::vector<vorrt::VesselState> targets = {}) {
  vorrt::WorldState w;
  w.ownship = std::move(own);
  w.targets = std::move(targets);
  return w;
}

// Rotates a point about the origin by `deg` clockwise (compass sense).
inline vorrt::Vec2 rotate_cw(const vorrt::Vec2& p, double deg) {
  const double r = vorrt::deg_to_rad(deg);
  return {p.x() * std::cos(r) + p.y() * std::sin(r), -p.x() * std::sin(r) + p.y() * std::cos(r)};
}

// Straight-leg replay of a timed path at resolution dt against constant
// velocity targets; returns the smallest separation seen.
inline double replay_min_separation(const vorrt::Path& path, const vorrt::WorldState& start, double dt) {
  double best = std::numeric_limits<double>::infinity();
  if (path.waypoints.size() < 2) return best;
  const double t0 = path.waypoints.front().time;
  const double t1 = path.waypoints.back().time;
  std::size_t leg = 0;
  const long steps = static_cast<long>(std::ceil((t1 - t0) / dt));
  for (long k = 0; k <= steps; ++k) {
    const double t = std::min(t0 + static_cast<double>(k) * dt, t1);
    while (leg + 2 < path.waypoints.size() && path.waypoints[leg + 1].time < t) ++leg;
    const auto& a = path.waypoints[leg];
    const auto& b = path.waypoints[leg + 1];
    const double f = (t - a.time) / (b.time - a.time);
    const vorrt::Vec2 own = a.position + (b.position - a.position) * std::clamp(f, 0.0, 1.0);
    for (const auto& tgt : start.targets) {
      const vorrt::Vec2 p = tgt.position + tgt.velocity() * (t - start.time);
      best = std::min(best, vorrt::distance(own, p));
    }
  }
  return best;
}

}  // namespace testing
