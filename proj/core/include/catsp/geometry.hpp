#pragma once

#include <cmath>
#include <numbers>

namespace catsp {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(Vec2 a, double s) { return {a.x * s, a.y * s}; }
  friend Vec2 operator*(double s, Vec2 a) { return {a.x * s, a.y * s}; }
  Vec2& operator+=(Vec2 o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  friend bool operator==(Vec2, Vec2) = default;
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double distance(Vec2 a, Vec2 b) { return norm(a - b); }

// Unsigned angle in [0, pi] between two vectors. Zero-length input yields 0.
inline double angle_between(Vec2 a, Vec2 b) {
  const double na = norm(a);
  const double nb = norm(b);
  if (na == 0.0 || nb == 0.0) return 0.0;
  return std::atan2(std::abs(cross(a, b)), dot(a, b));
}

inline constexpr double kEarthRadiusMeters = 6371008.8;

// Equirectangular projection to meters. x grows east, y grows north; the
// reference latitude fixes the east-west scale.
class Projection {
 public:
  Projection() = default;
  explicit Projection(double ref_lat_deg)
      : ref_lat_deg_(ref_lat_deg),
        x_scale_(kEarthRadiusMeters * std::cos(ref_lat_deg * std::numbers::pi / 180.0) *
                 std::numbers::pi / 180.0) {}

  double ref_lat() const { return ref_lat_deg_; }

  Vec2 to_xy(double lat, double lng) const {
    return {lng * x_scale_, lat * kYScale};
  }
  // Inverse of to_xy.
  void to_latlng(Vec2 p, double& lat, double& lng) const {
    lat = p.y / kYScale;
    lng = p.x / x_scale_;
  }

 private:
  static constexpr double kYScale = kEarthRadiusMeters * std::numbers::pi / 180.0;
  double ref_lat_deg_ = 0.0;
  double x_scale_ = kEarthRadiusMeters * std::numbers::pi / 180.0;
};

}  // namespace catsp
