#pragma once

#include <vector>

#include "latefuse/types.hpp"

namespace latefuse {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

/// Convex polygon on the ground plane, vertices in counter-clockwise order.
/// Intersection areas below kAreaEps are treated as empty.
struct BevPolygon {
  static constexpr double kAreaEps = 1e-12;

  std::vector<Vec2> vertices;
};

/// Shoelace area of a CCW polygon (0 for fewer than 3 vertices).
double polygon_area(const BevPolygon& p) noexcept;

/// Ground-plane footprint of a yawed box: a 4-vertex CCW rectangle centered
/// at (x, y) with half-extents (l/2, w/2) rotated by theta.
BevPolygon bev_footprint(const BBox3D& b);

/// Area of the intersection of two convex polygons (Sutherland-Hodgman
/// clipping). Returns 0 when disjoint or degenerate.
double convex_intersection_area(const BevPolygon& a, const BevPolygon& b);

/// Convex hull (CCW, collinear points dropped) of a point set.
BevPolygon convex_hull(std::vector<Vec2> pts);

/// Point-in-convex-polygon test (boundary counts as inside).
bool polygon_contains(const BevPolygon& p, const Vec2& q) noexcept;

/// Volume overlap over union for yaw-only boxes: BEV footprint clipping
/// times vertical interval overlap. Symmetric, in [0, 1].
double iou_3d(const BBox3D& a, const BBox3D& b);

/// Generalized IoU: iou minus the relative dead volume of the enclosing
/// hull, where the hull is (BEV convex hull of both footprints) x (union of
/// vertical extents). Symmetric, in (-1, 1].
double giou_3d(const BBox3D& a, const BBox3D& b);

}  // namespace latefuse
