#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <tuple>

#include "stratolink/scenario.hpp"
#include "stratolink/units.hpp"

namespace stratolink {

/// Minimal 3D vector in km, geocentric frame.
struct Vec3 {
  double x = 0, y = 0, z = 0;

  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
};

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

/// Geocentric position of a node. Ground coordinates (arc, cross-range) map
/// onto the sphere through geodesic polar coordinates around the ground
/// station, so chain nodes (cross = 0) lie exactly on one great circle.
inline Vec3 node_position(const Node& n) {
  const double ground_dist = std::hypot(n.ground_arc_km, n.cross_range_km);
  const double rho = ground_dist / kEarthRadiusKm;
  const double beta = std::atan2(n.cross_range_km, n.ground_arc_km);
  const double r = kEarthRadiusKm + n.altitude_km;
  return {r * std::sin(rho) * std::cos(beta), r * std::sin(rho) * std::sin(beta),
          r * std::cos(rho)};
}

/// Inverse of node_position; recovers (arc, cross, altitude) from a
/// geocentric point. Used to split rays at intermediate chord points.
inline Node node_from_position(const Vec3& p, std::string id = {},
                               NodeKind kind = NodeKind::HandheldUser) {
  Node n;
  n.id = std::move(id);
  n.kind = kind;
  const double r = norm(p);
  n.altitude_km = r - kEarthRadiusKm;
  const double horiz = std::hypot(p.x, p.y);
  const double rho = std::atan2(horiz, p.z);
  const double beta = horiz > 0 ? std::atan2(p.y, p.x) : 0.0;
  n.ground_arc_km = kEarthRadiusKm * rho * std::cos(beta);
  n.cross_range_km = kEarthRadiusKm * rho * std::sin(beta);
  return n;
}

/// Straight-line (chord) distance between two nodes, km.
inline double slant_range(const Node& a, const Node& b) {
  return norm(node_position(b) - node_position(a));
}

/// Tolerance for the earth-occlusion test, 1 mm. Rays that merely touch the
/// surface (a ground endpoint evaluates to altitude 0 up to rounding) are
/// not blocked.
inline constexpr double kLosBlockToleranceKm = 1e-6;

/// A straight ray between two nodes with its clearance above the sphere.
struct GeoRay {
  Node a, b;
  double chord_km = 0.0;
  double min_ray_altitude_km = 0.0;  // lowest altitude of the segment
  double elevation_deg = 0.0;        // elevation at the lower endpoint

  /// A hop dips into the weather volume when the ray's lowest point sits
  /// below the weather ceiling.
  bool tropospheric(double weather_ceiling_km) const {
    return min_ray_altitude_km < weather_ceiling_km;
  }

  /// The straight path dives below the surface (horizon occlusion).
  bool blocked() const { return min_ray_altitude_km < -kLosBlockToleranceKm; }
};

inline GeoRay ray_clearance(const Node& a, const Node& b) {
  GeoRay ray;
  ray.a = a;
  ray.b = b;

  // canonical endpoint order makes the result exactly symmetric in (a, b)
  auto key = [](const Node& n) {
    return std::tuple{n.altitude_km, n.ground_arc_km, n.cross_range_km};
  };
  const Node& lo_node = key(a) <= key(b) ? a : b;
  const Node& hi_node = key(a) <= key(b) ? b : a;

  const Vec3 L = node_position(lo_node);
  const Vec3 H = node_position(hi_node);
  const Vec3 d = H - L;
  const double len2 = dot(d, d);
  ray.chord_km = std::sqrt(len2);

  if (len2 == 0.0) {
    ray.min_ray_altitude_km = a.altitude_km;
    ray.elevation_deg = 0.0;
    return ray;
  }

  // |L + t d| is minimized at t0; clamped to the segment.
  const double t0 = std::clamp(-dot(L, d) / len2, 0.0, 1.0);
  ray.min_ray_altitude_km = norm(L + d * t0) - kEarthRadiusKm;

  const double s = dot(d, L) / (ray.chord_km * norm(L));
  ray.elevation_deg = rad_to_deg(std::asin(std::clamp(s, -1.0, 1.0)));
  return ray;
}

namespace detail {

/// Length of the chord segment lying below the sphere of radius
/// kEarthRadiusKm + ceiling_km, clamped to the segment.
inline double chord_below_radius(const Vec3& A, const Vec3& B, double shell_radius_km) {
  const Vec3 d = B - A;
  const double a2 = dot(d, d);
  const double len = std::sqrt(a2);
  if (len == 0.0) return 0.0;

  // f(t) = |A + t d|^2 - s^2 is convex; below-shell set on the line is one
  // interval [t1, t2].
  const double b = 2.0 * dot(A, d);
  const double c = dot(A, A) - shell_radius_km * shell_radius_km;
  const double disc = b * b - 4.0 * a2 * c;
  if (disc <= 0.0) return 0.0;

  const double sq = std::sqrt(disc);
  const double q = -0.5 * (b + (b >= 0 ? sq : -sq));
  double t1 = q / a2;
  double t2 = (q != 0.0) ? c / q : 0.0;
  if (t1 > t2) std::swap(t1, t2);
  const double lo = std::max(t1, 0.0);
  const double hi = std::min(t2, 1.0);
  return hi > lo ? (hi - lo) * len : 0.0;
}

}  // namespace detail

/// Length of the chord segment below the given ceiling altitude, km.
inline double tropospheric_length(const Node& a, const Node& b, double ceiling_km) {
  if (!(ceiling_km > 0)) throw DomainError("tropospheric_length: ceiling_km must be > 0");
  const Vec3 A = node_position(a);
  const Vec3 B = node_position(b);
  return detail::chord_below_radius(A, B, kEarthRadiusKm + ceiling_km);
}

/// Length of the chord segment inside the altitude slab [layer.lo, layer.hi].
inline double layer_length(const Node& a, const Node& b, const AltitudeLayer& layer) {
  if (layer.empty()) return 0.0;
  const Vec3 A = node_position(a);
  const Vec3 B = node_position(b);
  const double below_hi = detail::chord_below_radius(A, B, kEarthRadiusKm + layer.hi_km);
  const double below_lo =
      layer.lo_km > 0 ? detail::chord_below_radius(A, B, kEarthRadiusKm + layer.lo_km) : 0.0;
  return std::max(0.0, below_hi - below_lo);
}

}  // namespace stratolink
