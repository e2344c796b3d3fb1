#include "vorrt/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "vorrt/errors.hpp"

namespace vorrt {

DiscObstacle::DiscObstacle(Vec2 center, double radius) : center_(center), radius_(radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw DegenerateGeometry("disc radius must be positive and finite");
  }
}

double normalize_deg(double deg) {
  double r = std::fmod(deg, 360.0);
  if (r < 0.0) r += 360.0;
  // fmod of a tiny negative number can round up to exactly 360
  if (r >= 360.0) r -= 360.0;
  return r;
}

double heading_change_deg(double from, double to) {
  double d = normalize_deg(to - from);
  return d > 180.0 ? d - 360.0 : d;
}

Vec2 heading_unit(double heading_deg) {
  const double rad = deg_to_rad(heading_deg);
  return {std::sin(rad), std::cos(rad)};
}

double bearing_deg(const Vec2& from, const Vec2& to) {
  const Vec2 d = to - from;
  if (d.x() == 0.0 && d.y() == 0.0) {
    throw DegenerateGeometry("bearing between coincident points is undefined");
  }
  return normalize_deg(rad_to_deg(std::atan2(d.x(), d.y())));
}

double relative_bearing_deg(const Vec2& observer, double observer_heading_deg, const Vec2& point) {
  return normalize_deg(bearing_deg(observer, point) - observer_heading_deg);
}

bool ray_intersects_disc(const Ray& ray, const DiscObstacle& disc) {
  const Vec2 to_center = disc.center() - ray.origin;
  const double dd = ray.direction.norm_sq();
  double t = 0.0;
  if (dd > 0.0) t = std::max(0.0, to_center.dot(ray.direction) / dd);
  const Vec2 closest = ray.origin + ray.direction * t;
  return distance(closest, disc.center()) <= disc.radius();
}

bool in_velocity_obstacle(const Vec2& p_a, const Vec2& v_a, const Vec2& p_b, const Vec2& v_b,
                          double combined_radius) {
  return ray_intersects_disc(Ray{p_a, v_a - v_b}, DiscObstacle{p_b, combined_radius});
}

double time_to_cpa(const Vec2& p_a, const Vec2& p_b, const Vec2& v_a, const Vec2& v_b) {
  const Vec2 dv = v_a - v_b;
  const double dv2 = dv.norm_sq();
  if (dv2 == 0.0) return 0.0;
  return std::max(0.0, -(p_a - p_b).dot(dv) / dv2);
}

double distance_at_cpa(const Vec2& p_a, const Vec2& p_b, const Vec2& v_a, const Vec2& v_b) {
  const double t = time_to_cpa(p_a, p_b, v_a, v_b);
  return distance(p_a + v_a * t, p_b + v_b * t);
}

double min_separation_in_window(const Vec2& p_a, const Vec2& p_b, const Vec2& v_a, const Vec2& v_b,
                                double t0, double t1) {
  const Vec2 dp = p_a - p_b;
  const Vec2 dv = v_a - v_b;
  const double dv2 = dv.norm_sq();
  double t = t0;
  if (dv2 > 0.0) t = std::clamp(-dp.dot(dv) / dv2, t0, t1);
  return (dp + dv * t).norm();
}

}  // namespace vorrt
