#pragma once

#include <array>
#include <cmath>
#include <vector>

namespace covplan {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  bool operator==(const Vec2&) const = default;
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double dist(Vec2 a, Vec2 b) { return norm(a - b); }
inline Vec2 rotate(Vec2 p, double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  return {c * p.x - s * p.y, s * p.x + c * p.y};
}

// Closed ring; the edge from back() to front() is implicit.
using Polygon = std::vector<Vec2>;

struct Aabb {
  Vec2 lo;
  Vec2 hi;
  double width() const { return hi.x - lo.x; }
  double height() const { return hi.y - lo.y; }
  double area() const { return width() * height(); }
  Polygon as_polygon() const;
};

double signed_area(const Polygon& poly);
inline double polygon_area(const Polygon& poly) { return std::abs(signed_area(poly)); }
Vec2 centroid(const Polygon& poly);
Aabb bounding_box(const Polygon& poly);

// Even-odd rule; points exactly on the boundary are not guaranteed either way.
bool point_in_polygon(Vec2 p, const Polygon& poly);

bool polygon_is_simple(const Polygon& poly);
Polygon convex_hull(std::vector<Vec2> pts);
bool point_in_convex(Vec2 p, const Polygon& hull, double eps = 1e-9);
bool polygons_overlap(const Polygon& a, const Polygon& b);

// Sutherland-Hodgman clips. The output of a concave subject may contain
// degenerate bridge edges along the clip boundary; its signed area is still
// the exact intersection area, which is all we use it for.
Polygon clip_half_plane(const Polygon& poly, Vec2 normal, double offset);
Polygon clip_aabb(const Polygon& poly, const Aabb& box);
Polygon clip_convex(const Polygon& subject, const Polygon& convex_clip);

double intersection_area(const Polygon& poly, const Aabb& box);

// Ear clipping for simple polygons. Throws std::runtime_error on degenerate
// input it cannot untangle.
std::vector<std::array<Vec2, 3>> triangulate(const Polygon& poly);

}  // namespace covplan
