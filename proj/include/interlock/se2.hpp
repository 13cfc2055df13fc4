/**
 * @file se2.hpp
 * Minimal planar vector / pose helpers. Headings are CCW-positive radians,
 * normalized to (-pi, pi]; +x forward at heading 0, left side is +y.
 */
#pragma once

#include <cmath>

namespace interlock {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double k) const { return {x * k, y * k}; }
  double dot(const Vec2& o) const { return x * o.x + y * o.y; }
  double norm() const { return std::hypot(x, y); }
};

inline Vec2 rotate(const Vec2& v, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {c * v.x - s * v.y, s * v.x + c * v.y};
}

/* Map any angle into (-pi, pi]. */
inline double normalize_angle(double a) {
  const double two_pi = 2.0 * M_PI;
  double r = std::remainder(a, two_pi);
  if (r <= -M_PI) r += two_pi;
  return r;
}

struct Pose {
  double x = 0.0;
  double y = 0.0;
  double heading = 0.0;  // radians, (-pi, pi]

  Vec2 position() const { return {x, y}; }
  Vec2 forward() const { return {std::cos(heading), std::sin(heading)}; }

  /* Frame-local point -> world. */
  Vec2 to_world(const Vec2& local) const {
    return position() + rotate(local, heading);
  }

  /* World point -> frame-local. */
  Vec2 to_local(const Vec2& world) const {
    return rotate(world - position(), -heading);
  }
};

inline double deg(double radians) { return radians * 180.0 / M_PI; }
inline double rad(double degrees) { return degrees * M_PI / 180.0; }

}  // namespace interlock
