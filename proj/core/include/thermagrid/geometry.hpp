#pragma once

#include <cmath>
#include <string>

#include "thermagrid/errors.hpp"

namespace thermagrid {

/// A position in chip units. One chip unit equals the radius of the unit
/// sphere used by the contribution model, so every distance in the project
/// is expressed on that scale.
struct Point3 {
  double x{0.0};
  double y{0.0};
  double z{0.0};

  friend bool operator==(const Point3&, const Point3&) = default;
};

inline bool is_finite(const Point3& p) noexcept {
  return std::isfinite(p.x) && std::isfinite(p.y) && std::isfinite(p.z);
}

inline double euclidean_distance(const Point3& a, const Point3& b) noexcept {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  const double dz = a.z - b.z;
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

inline double manhattan_distance(const Point3& a, const Point3& b) noexcept {
  return std::abs(a.x - b.x) + std::abs(a.y - b.y) + std::abs(a.z - b.z);
}

/// Axis-aligned chip volume. Membership is closed: points on a face count
/// as inside, so probe lattices touching the boundary stay valid.
struct Box3 {
  Point3 origin{};
  double lx{0.0};
  double ly{0.0};
  double lz{0.0};

  Box3() = default;
  Box3(Point3 origin_, double lx_, double ly_, double lz_)
      : origin(origin_), lx(lx_), ly(ly_), lz(lz_) {
    if (!is_finite(origin)) {
      throw ValidationError("box.origin: coordinates must be finite");
    }
    if (!(lx > 0.0) || !(ly > 0.0) || !(lz > 0.0) || !std::isfinite(lx) ||
        !std::isfinite(ly) || !std::isfinite(lz)) {
      throw ValidationError("box.dims: all dimensions must be finite and > 0");
    }
  }

  friend bool operator==(const Box3&, const Box3&) = default;
};

inline bool contains(const Box3& box, const Point3& p) noexcept {
  return p.x >= box.origin.x && p.x <= box.origin.x + box.lx &&
         p.y >= box.origin.y && p.y <= box.origin.y + box.ly &&
         p.z >= box.origin.z && p.z <= box.origin.z + box.lz;
}

}  // namespace thermagrid
