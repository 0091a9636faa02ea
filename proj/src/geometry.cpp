#include "latefuse/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace latefuse {

namespace {

double cross(const Vec2& o, const Vec2& a, const Vec2& b) noexcept {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

// Intersection of segment p1->p2 with the infinite line through a->b.
Vec2 line_intersection(const Vec2& p1, const Vec2& p2, const Vec2& a, const Vec2& b) {
  const double dx = p2.x - p1.x;
  const double dy = p2.y - p1.y;
  const double ex = b.x - a.x;
  const double ey = b.y - a.y;
  const double denom = dx * ey - dy * ex;
  const double t = ((a.x - p1.x) * ey - (a.y - p1.y) * ex) / denom;
  return {p1.x + t * dx, p1.y + t * dy};
}

// Vertical extent [bottom, top] of a box.
std::pair<double, double> z_interval(const BBox3D& b) noexcept {
  return {b.z - 0.5 * b.h, b.z + 0.5 * b.h};
}

}  // namespace

double polygon_area(const BevPolygon& p) noexcept {
  const auto& v = p.vertices;
  if (v.size() < 3) return 0.0;
  double s = 0.0;
  for (std::size_t i = 0, n = v.size(); i < n; ++i) {
    const Vec2& a = v[i];
    const Vec2& b = v[(i + 1) % n];
    s += a.x * b.y - b.x * a.y;
  }
  return 0.5 * s;
}

BevPolygon bev_footprint(const BBox3D& b) {
  const double c = std::cos(b.theta);
  const double s = std::sin(b.theta);
  const double hl = 0.5 * b.l;
  const double hw = 0.5 * b.w;
  // Local corners in CCW order for theta = 0, rotated into the map frame.
  const Vec2 local[4] = {{hl, -hw}, {hl, hw}, {-hl, hw}, {-hl, -hw}};
  BevPolygon poly;
  poly.vertices.reserve(4);
  for (const Vec2& p : local) {
    poly.vertices.push_back({b.x + c * p.x - s * p.y, b.y + s * p.x + c * p.y});
  }
  return poly;
}

double convex_intersection_area(const BevPolygon& a, const BevPolygon& b) {
  if (a.vertices.size() < 3 || b.vertices.size() < 3) return 0.0;
  std::vector<Vec2> poly = a.vertices;
  std::vector<Vec2> next;
  const auto& clip = b.vertices;
  for (std::size_t i = 0, n = clip.size(); i < n && !poly.empty(); ++i) {
    const Vec2& ca = clip[i];
    const Vec2& cb = clip[(i + 1) % n];
    next.clear();
    for (std::size_t j = 0, m = poly.size(); j < m; ++j) {
      const Vec2& p = poly[j];
      const Vec2& q = poly[(j + 1) % m];
      const bool p_in = cross(ca, cb, p) >= 0.0;
      const bool q_in = cross(ca, cb, q) >= 0.0;
      if (p_in) {
        next.push_back(p);
        if (!q_in) next.push_back(line_intersection(p, q, ca, cb));
      } else if (q_in) {
        next.push_back(line_intersection(p, q, ca, cb));
      }
    }
    poly.swap(next);
  }
  BevPolygon result{std::move(poly)};
  const double area = polygon_area(result);
  return area < BevPolygon::kAreaEps ? 0.0 : area;
}

BevPolygon convex_hull(std::vector<Vec2> pts) {
  std::sort(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const Vec2& a, const Vec2& b) {
                          return a.x == b.x && a.y == b.y;
                        }),
            pts.end());
  const std::size_t n = pts.size();
  if (n < 3) return BevPolygon{std::move(pts)};
  std::vector<Vec2> hull(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {  // lower chain
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = n - 1, t = k + 1; i-- > 0;) {  // upper chain
    while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return BevPolygon{std::move(hull)};
}

bool polygon_contains(const BevPolygon& p, const Vec2& q) noexcept {
  const auto& v = p.vertices;
  if (v.size() < 3) return false;
  for (std::size_t i = 0, n = v.size(); i < n; ++i) {
    if (cross(v[i], v[(i + 1) % n], q) < 0.0) return false;
  }
  return true;
}

double iou_3d(const BBox3D& a, const BBox3D& b) {
  const auto [za0, za1] = z_interval(a);
  const auto [zb0, zb1] = z_interval(b);
  const double dz = std::min(za1, zb1) - std::max(za0, zb0);
  if (dz <= 0.0) return 0.0;
  // Cheap reject: BEV circumscribed-circle distance.
  const double r = 0.5 * (std::hypot(a.l, a.w) + std::hypot(b.l, b.w));
  if (std::hypot(a.x - b.x, a.y - b.y) > r) return 0.0;
  const double inter_area = convex_intersection_area(bev_footprint(a), bev_footprint(b));
  if (inter_area <= 0.0) return 0.0;
  const double inter = inter_area * dz;
  const double uni = box_volume(a) + box_volume(b) - inter;
  return inter / uni;
}

double giou_3d(const BBox3D& a, const BBox3D& b) {
  const auto [za0, za1] = z_interval(a);
  const auto [zb0, zb1] = z_interval(b);
  const double dz = std::min(za1, zb1) - std::max(za0, zb0);
  const BevPolygon fa = bev_footprint(a);
  const BevPolygon fb = bev_footprint(b);

  double inter = 0.0;
  if (dz > 0.0) inter = convex_intersection_area(fa, fb) * dz;
  const double uni = box_volume(a) + box_volume(b) - inter;
  const double iou = inter / uni;

  std::vector<Vec2> pts;
  pts.reserve(fa.vertices.size() + fb.vertices.size());
  pts.insert(pts.end(), fa.vertices.begin(), fa.vertices.end());
  pts.insert(pts.end(), fb.vertices.begin(), fb.vertices.end());
  const double hull_area = polygon_area(convex_hull(std::move(pts)));
  const double hull_dz = std::max(za1, zb1) - std::min(za0, zb0);
  const double hull_vol = hull_area * hull_dz;
  return iou - (hull_vol - uni) / hull_vol;
}

}  // namespace latefuse
