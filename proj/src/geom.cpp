#include "covplan/geom.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace covplan {

namespace {

constexpr double kCollinearEps = 1e-12;

int orientation_sign(Vec2 a, Vec2 b, Vec2 c) {
  const double v = cross(b - a, c - a);
  if (v > kCollinearEps) return 1;
  if (v < -kCollinearEps) return -1;
  return 0;
}

bool on_segment(Vec2 a, Vec2 b, Vec2 p) {
  return std::min(a.x, b.x) - kCollinearEps <= p.x && p.x <= std::max(a.x, b.x) + kCollinearEps &&
         std::min(a.y, b.y) - kCollinearEps <= p.y && p.y <= std::max(a.y, b.y) + kCollinearEps;
}

bool segments_intersect(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
  const int o1 = orientation_sign(a, b, c);
  const int o2 = orientation_sign(a, b, d);
  const int o3 = orientation_sign(c, d, a);
  const int o4 = orientation_sign(c, d, b);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(a, b, c)) return true;
  if (o2 == 0 && on_segment(a, b, d)) return true;
  if (o3 == 0 && on_segment(c, d, a)) return true;
  if (o4 == 0 && on_segment(c, d, b)) return true;
  return false;
}

// Clip against x<=v / x>=v / y<=v / y>=v with the fixed coordinate forced to
// the clip line, so axis-aligned cells produce exact areas.
Polygon clip_axis(const Polygon& poly, int axis, double value, bool keep_less) {
  Polygon out;
  const size_t n = poly.size();
  if (n == 0) return out;
  out.reserve(n + 4);
  auto coord = [axis](Vec2 p) { return axis == 0 ? p.x : p.y; };
  auto inside = [&](Vec2 p) { return keep_less ? coord(p) <= value : coord(p) >= value; };
  auto intersect = [&](Vec2 a, Vec2 b) {
    const double t = (value - coord(a)) / (coord(b) - coord(a));
    Vec2 p = a + (b - a) * t;
    if (axis == 0) p.x = value; else p.y = value;
    return p;
  };
  for (size_t i = 0; i < n; ++i) {
    const Vec2 cur = poly[i];
    const Vec2 nxt = poly[(i + 1) % n];
    const bool cur_in = inside(cur);
    const bool nxt_in = inside(nxt);
    if (cur_in) out.push_back(cur);
    if (cur_in != nxt_in) out.push_back(intersect(cur, nxt));
  }
  return out;
}

}  // namespace

Polygon Aabb::as_polygon() const {
  return {{lo.x, lo.y}, {hi.x, lo.y}, {hi.x, hi.y}, {lo.x, hi.y}};
}

double signed_area(const Polygon& poly) {
  const size_t n = poly.size();
  if (n < 3) return 0.0;
  double acc = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const Vec2 a = poly[i];
    const Vec2 b = poly[(i + 1) % n];
    acc += cross(a, b);
  }
  return 0.5 * acc;
}

Vec2 centroid(const Polygon& poly) {
  Vec2 c;
  if (poly.empty()) return c;
  for (const Vec2& p : poly) c = c + p;
  return c * (1.0 / static_cast<double>(poly.size()));
}

Aabb bounding_box(const Polygon& poly) {
  Aabb box{{std::numeric_limits<double>::max(), std::numeric_limits<double>::max()},
           {std::numeric_limits<double>::lowest(), std::numeric_limits<double>::lowest()}};
  for (const Vec2& p : poly) {
    box.lo.x = std::min(box.lo.x, p.x);
    box.lo.y = std::min(box.lo.y, p.y);
    box.hi.x = std::max(box.hi.x, p.x);
    box.hi.y = std::max(box.hi.y, p.y);
  }
  return box;
}

bool point_in_polygon(Vec2 p, const Polygon& poly) {
  const size_t n = poly.size();
  bool in = false;
  for (size_t i = 0, j = n - 1; i < n; j = i++) {
    const Vec2 a = poly[i];
    const Vec2 b = poly[j];
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
      if (p.x < x) in = !in;
    }
  }
  return in;
}

bool polygon_is_simple(const Polygon& poly) {
  const size_t n = poly.size();
  if (n < 3) return false;
  for (size_t i = 0; i < n; ++i) {
    const Vec2 a = poly[i];
    const Vec2 b = poly[(i + 1) % n];
    if (dist(a, b) < kCollinearEps) return false;
    for (size_t j = i + 1; j < n; ++j) {
      // Skip edges sharing an endpoint.
      if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;
      const Vec2 c = poly[j];
      const Vec2 d = poly[(j + 1) % n];
      if (segments_intersect(a, b, c, d)) return false;
    }
  }
  return true;
}

Polygon convex_hull(std::vector<Vec2> pts) {
  std::sort(pts.begin(), pts.end(), [](Vec2 a, Vec2 b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  const size_t n = pts.size();
  if (n < 3) return pts;
  Polygon hull(2 * n);
  size_t k = 0;
  for (size_t i = 0; i < n; ++i) {
    while (k >= 2 && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0) --k;
    hull[k++] = pts[i];
  }
  for (size_t i = n - 1, t = k + 1; i > 0; --i) {
    while (k >= t && cross(hull[k - 1] - hull[k - 2], pts[i - 1] - hull[k - 2]) <= 0) --k;
    hull[k++] = pts[i - 1];
  }
  hull.resize(k - 1);
  return hull;
}

bool point_in_convex(Vec2 p, const Polygon& hull, double eps) {
  const size_t n = hull.size();
  if (n < 3) return false;
  for (size_t i = 0; i < n; ++i) {
    const Vec2 a = hull[i];
    const Vec2 b = hull[(i + 1) % n];
    if (cross(b - a, p - a) < -eps) return false;
  }
  return true;
}

bool polygons_overlap(const Polygon& a, const Polygon& b) {
  const size_t na = a.size(), nb = b.size();
  for (size_t i = 0; i < na; ++i)
    for (size_t j = 0; j < nb; ++j)
      if (segments_intersect(a[i], a[(i + 1) % na], b[j], b[(j + 1) % nb])) return true;
  if (!a.empty() && point_in_polygon(a[0], b)) return true;
  if (!b.empty() && point_in_polygon(b[0], a)) return true;
  return false;
}

Polygon clip_half_plane(const Polygon& poly, Vec2 normal, double offset) {
  Polygon out;
  const size_t n = poly.size();
  if (n == 0) return out;
  out.reserve(n + 2);
  auto inside = [&](Vec2 p) { return dot(normal, p) <= offset; };
  for (size_t i = 0; i < n; ++i) {
    const Vec2 cur = poly[i];
    const Vec2 nxt = poly[(i + 1) % n];
    const bool cur_in = inside(cur);
    const bool nxt_in = inside(nxt);
    if (cur_in) out.push_back(cur);
    if (cur_in != nxt_in) {
      const double da = dot(normal, cur);
      const double db = dot(normal, nxt);
      const double t = (offset - da) / (db - da);
      out.push_back(cur + (nxt - cur) * t);
    }
  }
  return out;
}

Polygon clip_aabb(const Polygon& poly, const Aabb& box) {
  Polygon p = clip_axis(poly, 0, box.lo.x, false);
  p = clip_axis(p, 0, box.hi.x, true);
  p = clip_axis(p, 1, box.lo.y, false);
  p = clip_axis(p, 1, box.hi.y, true);
  return p;
}

Polygon clip_convex(const Polygon& subject, const Polygon& convex_clip) {
  const size_t n = convex_clip.size();
  if (n < 3) return {};
  // A collapsed clip region has no interior; its zero-length edges would
  // yield null normals that keep everything.
  const double clip_area = signed_area(convex_clip);
  if (std::abs(clip_area) <= 1e-14) return {};
  const bool ccw = clip_area > 0;
  Polygon out = subject;
  for (size_t i = 0; i < n && !out.empty(); ++i) {
    Vec2 a = convex_clip[i];
    Vec2 b = convex_clip[(i + 1) % n];
    if (!ccw) std::swap(a, b);
    const Vec2 e = b - a;
    if (norm(e) == 0.0) continue;
    // Inward normal for CCW edge is (-e.y, e.x); keep dot(outward, p) <= c.
    const Vec2 outward{e.y, -e.x};
    out = clip_half_plane(out, outward, dot(outward, a));
  }
  return out;
}

double intersection_area(const Polygon& poly, const Aabb& box) {
  return std::abs(signed_area(clip_aabb(poly, box)));
}

std::vector<std::array<Vec2, 3>> triangulate(const Polygon& poly) {
  Polygon ring = poly;
  // Drop consecutive duplicates.
  ring.erase(std::unique(ring.begin(), ring.end(),
                         [](Vec2 a, Vec2 b) { return dist(a, b) < kCollinearEps; }),
             ring.end());
  while (ring.size() > 1 && dist(ring.front(), ring.back()) < kCollinearEps) ring.pop_back();
  if (ring.size() < 3) throw std::runtime_error("triangulate: polygon has fewer than 3 vertices");
  if (signed_area(ring) < 0) std::reverse(ring.begin(), ring.end());

  std::vector<std::array<Vec2, 3>> tris;
  std::vector<size_t> idx(ring.size());
  for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;

  auto tri_contains = [](Vec2 a, Vec2 b, Vec2 c, Vec2 p) {
    const double d1 = cross(b - a, p - a);
    const double d2 = cross(c - b, p - b);
    const double d3 = cross(a - c, p - c);
    const bool has_neg = d1 < -kCollinearEps || d2 < -kCollinearEps || d3 < -kCollinearEps;
    const bool has_pos = d1 > kCollinearEps || d2 > kCollinearEps || d3 > kCollinearEps;
    return !(has_neg && has_pos);
  };

  size_t guard = 0;
  const size_t guard_max = idx.size() * idx.size() + 16;
  while (idx.size() > 3) {
    if (++guard > guard_max) throw std::runtime_error("triangulate: no ear found");
    bool clipped = false;
    for (size_t i = 0; i < idx.size(); ++i) {
      const size_t ip = idx[(i + idx.size() - 1) % idx.size()];
      const size_t ic = idx[i];
      const size_t in = idx[(i + 1) % idx.size()];
      const Vec2 a = ring[ip], b = ring[ic], c = ring[in];
      const double turn = cross(b - a, c - b);
      if (turn < -kCollinearEps) continue;  // reflex
      bool ear = true;
      for (size_t j : idx) {
        if (j == ip || j == ic || j == in) continue;
        if (tri_contains(a, b, c, ring[j])) {
          ear = false;
          break;
        }
      }
      if (!ear) continue;
      if (turn > kCollinearEps) tris.push_back({a, b, c});
      idx.erase(idx.begin() + static_cast<std::ptrdiff_t>(i));
      clipped = true;
      break;
    }
    if (!clipped) throw std::runtime_error("triangulate: polygon is degenerate");
  }
  const Vec2 a = ring[idx[0]], b = ring[idx[1]], c = ring[idx[2]];
  if (std::abs(cross(b - a, c - b)) > kCollinearEps) tris.push_back({a, b, c});
  return tris;
}

}  // namespace covplan
