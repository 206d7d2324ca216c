// Exact rational plane geometry: half-planes a1*x + a2*y {<, <=} b,
// their common intersection as a convex polygon with rational vertices,
// and strictness-aware membership. No floating point.
#ifndef EXPSUM_GEOMETRY_HPP
#define EXPSUM_GEOMETRY_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <string>
#include <vector>

namespace expsum {

using rational = boost::multiprecision::cpp_rational;

struct RatPoint {
  rational x;
  rational y;
  bool operator==(const RatPoint& o) const { return x == o.x && y == o.y; }
};

struct HalfPlane {
  rational a1, a2, b;
  bool strict = false;  // a1*x + a2*y < b; otherwise <=

  bool contains(const RatPoint& pt) const {
    const rational lhs = a1 * pt.x + a2 * pt.y;
    return strict ? lhs < b : lhs <= b;
  }
  bool contains_closure(const RatPoint& pt) const {
    return a1 * pt.x + a2 * pt.y <= b;
  }
};

inline HalfPlane hp_le(rational a1, rational a2, rational b) {
  return {std::move(a1), std::move(a2), std::move(b), false};
}
inline HalfPlane hp_lt(rational a1, rational a2, rational b) {
  return {std::move(a1), std::move(a2), std::move(b), true};
}

inline bool in_all(const RatPoint& pt, const std::vector<HalfPlane>& planes) {
  for (const auto& h : planes)
    if (!h.contains(pt)) return false;
  return true;
}

enum class CellKind { empty, point, segment, polygon };

struct ConvexCell {
  CellKind kind = CellKind::empty;
  std::vector<RatPoint> vertices;  // CCW for polygons, no collinear triples
};

namespace geom_detail {

inline rational cross(const RatPoint& o, const RatPoint& a, const RatPoint& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

inline std::vector<RatPoint> convex_hull(std::vector<RatPoint> pts) {
  std::sort(pts.begin(), pts.end(), [](const RatPoint& a, const RatPoint& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  const std::size_t n = pts.size();
  if (n <= 2) return pts;
  std::vector<RatPoint> hull(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {  // lower
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  const std::size_t lower = k + 1;
  for (std::size_t i = n - 1; i-- > 0;) {  // upper
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

}  // namespace geom_detail

// Vertices of the closed intersection of the given half-planes (strictness
// ignored for vertex placement: vertices lie on the boundary lines).
// Assumes the intersection is bounded by the supplied planes.
inline ConvexCell halfplane_intersect(const std::vector<HalfPlane>& planes) {
  ConvexCell cell;
  std::vector<RatPoint> candidates;
  for (std::size_t i = 0; i < planes.size(); ++i) {
    for (std::size_t j = i + 1; j < planes.size(); ++j) {
      const rational det = planes[i].a1 * planes[j].a2 - planes[j].a1 * planes[i].a2;
      if (det == 0) continue;
      RatPoint pt;
      pt.x = (planes[i].b * planes[j].a2 - planes[j].b * planes[i].a2) / det;
      pt.y = (planes[i].a1 * planes[j].b - planes[j].a1 * planes[i].b) / det;
      bool inside = true;
      for (const auto& h : planes) {
        if (!h.contains_closure(pt)) { inside = false; break; }
      }
      if (inside) candidates.push_back(std::move(pt));
    }
  }
  std::vector<RatPoint> hull = geom_detail::convex_hull(std::move(candidates));
  if (hull.empty()) {
    cell.kind = CellKind::empty;
  } else if (hull.size() == 1) {
    cell.kind = CellKind::point;
  } else if (hull.size() == 2) {
    cell.kind = CellKind::segment;
  } else {
    cell.kind = CellKind::polygon;
  }
  cell.vertices = std::move(hull);
  return cell;
}

inline rational polygon_area_twice(const std::vector<RatPoint>& v) {
  rational a = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto& p = v[i];
    const auto& q = v[(i + 1) % v.size()];
    a += p.x * q.y - q.x * p.y;
  }
  return a;
}

inline RatPoint vertex_centroid(const std::vector<RatPoint>& v) {
  RatPoint c{0, 0};
  for (const auto& pt : v) {
    c.x += pt.x;
    c.y += pt.y;
  }
  c.x /= int(v.size());
  c.y /= int(v.size());
  return c;
}

inline std::string rational_to_string(const rational& r) {
  const auto num = boost::multiprecision::numerator(r);
  const auto den = boost::multiprecision::denominator(r);
  return num.str() + "/" + den.str();
}

inline double rational_to_double(const rational& r) { return r.convert_to<double>(); }

}  // namespace expsum

#endif  // EXPSUM_GEOMETRY_HPP
