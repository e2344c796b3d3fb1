#pragma once

// Planar kinematics for disc-shaped vessels: vectors, rays, velocity obstacles
// and closest-point-of-approach analytics.
//
// Frame: x is east, y is north, both in meters. Headings and bearings are
// compass style, degrees clockwise from north.

#include <cmath>
#include <stdexcept>

namespace vorrt {

class Vec2 {
 public:
  constexpr Vec2() = default;
  constexpr Vec2(double x, double y) : x_(x), y_(y) {
    if (!std::isfinite(x) || !std::isfinite(y)) {
      throw std::invalid_argument("Vec2 components must be finite");
    }
  }

  constexpr double x() const { return x_; }
  constexpr double y() const { return y_; }

  constexpr Vec2 operator+(const Vec2& o) const { return {x_ + o.x_, y_ + o.y_}; }
  constexpr Vec2 operator-(const Vec2& o) const { return {x_ - o.x_, y_ - o.y_}; }
  constexpr Vec2 operator-() const { return {-x_, -y_}; }
  constexpr Vec2 operator*(double s) const { return {x_ * s, y_ * s}; }
  constexpr Vec2 operator/(double s) const { return {x_ / s, y_ / s}; }
  Vec2& operator+=(const Vec2& o) { return *this = *this + o; }
  Vec2& operator-=(const Vec2& o) { return *this = *this - o; }

  constexpr bool operator==(const Vec2&) const = default;

  constexpr double dot(const Vec2& o) const { return x_ * o.x_ + y_ * o.y_; }
  // z-component of the 3D cross product; positive when o is counter-clockwise of this.
  constexpr double cross(const Vec2& o) const { return x_ * o.y_ - y_ * o.x_; }
  constexpr double norm_sq() const { return dot(*this); }
  double norm() const { return std::hypot(x_, y_); }

 private:
  double x_ = 0.0;
  double y_ = 0.0;
};

constexpr Vec2 operator*(double s, const Vec2& v) { return v * s; }

inline double distance(const Vec2& a, const Vec2& b) { return (a - b).norm(); }

/// Points origin + t * direction for t >= 0. The direction carries units of
/// velocity and need not be normalized.
struct Ray {
  Vec2 origin;
  Vec2 direction;
};

/// Closed disc; also the Minkowski sum of two vessel discs (radii add).
class DiscObstacle {
 public:
  DiscObstacle(Vec2 center, double radius);

  static DiscObstacle minkowski_sum(Vec2 center, double radius_a, double radius_b) {
    return {center, radius_a + radius_b};
  }

  const Vec2& center() const { return center_; }
  double radius() const { return radius_; }

 private:
  Vec2 center_;
  double radius_;
};

// --- angles -----------------------------------------------------------------

constexpr double kPi = 3.14159265358979323846;

constexpr double deg_to_rad(double deg) { return deg * kPi / 180.0; }
constexpr double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

/// Maps any angle into [0, 360).
double normalize_deg(double deg);

/// Signed turn from `from` to `to` in (-180, 180]; positive is clockwise (starboard).
double heading_change_deg(double from, double to);

/// Unit vector pointing along a compass heading.
Vec2 heading_unit(double heading_deg);

/// Velocity vector for a compass heading and a speed in m/s.
inline Vec2 velocity_from(double heading_deg, double speed) {
  return heading_unit(heading_deg) * speed;
}

/// Compass bearing of `to` as seen from `from`, in [0, 360).
/// Throws DegenerateGeometry for coincident points.
double bearing_deg(const Vec2& from, const Vec2& to);

/// Bearing of `point` measured clockwise from an observer's heading, in [0, 360).
/// Throws DegenerateGeometry when point coincides with the observer.
double relative_bearing_deg(const Vec2& observer, double observer_heading_deg, const Vec2& point);

// --- velocity obstacles and CPA ---------------------------------------------

/// True iff some point of the ray (t >= 0) lies inside or on the disc. A zero
/// direction reduces to a point-in-disc test of the origin.
bool ray_intersects_disc(const Ray& ray, const DiscObstacle& disc);

/// True iff v_a lies in the velocity obstacle that b (moving with v_b) induces
/// on a: the ray from p_a along v_a - v_b meets the combined disc around p_b.
bool in_velocity_obstacle(const Vec2& p_a, const Vec2& v_a, const Vec2& p_b, const Vec2& v_b,
                          double combined_radius);

/// Time until closest approach of two constant-velocity points, clamped to the
/// future: 0 for zero relative velocity or for pairs already diverging.
double time_to_cpa(const Vec2& p_a, const Vec2& p_b, const Vec2& v_a, const Vec2& v_b);

/// Separation at time_to_cpa. Never exceeds the current separation.
double distance_at_cpa(const Vec2& p_a, const Vec2& p_b, const Vec2& v_a, const Vec2& v_b);

/// Minimum separation of two constant-velocity points over t in [t0, t1]
/// (relative to now).
double min_separation_in_window(const Vec2& p_a, const Vec2& p_b, const Vec2& v_a, const Vec2& v_b,
                                double t0, double t1);

}  // namespace vorrt
