#include <doctest.h>

#include <random>

#include "covplan/geom.hpp"
#include "test_support.hpp"

using namespace covplan;
using test::rect_poly;

TEST_CASE("signed area and orientation") {
  Polygon sq = rect_poly(0, 0, 2, 3);
  CHECK(signed_area(sq) == doctest::Approx(6.0));
  Polygon cw(sq.rbegin(), sq.rend());
  CHECK(signed_area(cw) == doctest::Approx(-6.0));
  CHECK(polygon_area(cw) == doctest::Approx(6.0));
}

TEST_CASE("centroid and bounding box") {
  Polygon sq = rect_poly(1, 1, 3, 5);
  Vec2 c = centroid(sq);
  CHECK(c.x == doctest::Approx(2.0));
  CHECK(c.y == doctest::Approx(3.0));
  Aabb bb = bounding_box(sq);
  CHECK(bb.lo == Vec2{1, 1});
  CHECK(bb.hi == Vec2{3, 5});
  CHECK(bb.area() == doctest::Approx(8.0));
}

TEST_CASE("point in polygon") {
  Polygon sq = rect_poly(0, 0, 4, 4);
  CHECK(point_in_polygon({2, 2}, sq));
  CHECK_FALSE(point_in_polygon({5, 2}, sq));
  Polygon concave{{0, 0}, {4, 0}, {4, 4}, {2, 1}, {0, 4}};
  CHECK(point_in_polygon({3.5, 2}, concave));
  CHECK_FALSE(point_in_polygon({2, 3}, concave));
}

TEST_CASE("simplicity") {
  CHECK(polygon_is_simple(rect_poly(0, 0, 1, 1)));
  Polygon bowtie{{0, 0}, {2, 2}, {2, 0}, {0, 2}};
  CHECK_FALSE(polygon_is_simple(bowtie));
}

TEST_CASE("convex hull and membership") {
  std::vector<Vec2> pts{{0, 0}, {4, 0}, {4, 4}, {0, 4}, {2, 2}, {1, 1}};
  Polygon hull = convex_hull(pts);
  CHECK(hull.size() == 4);
  CHECK(polygon_area(hull) == doctest::Approx(16.0));
  CHECK(point_in_convex({2, 2}, hull));
  CHECK(point_in_convex({4, 4}, hull));  // vertex counts as inside
  CHECK_FALSE(point_in_convex({4.1, 2}, hull));
}

TEST_CASE("half-plane clip") {
  Polygon sq = rect_poly(0, 0, 4, 4);
  Polygon half = clip_half_plane(sq, {1, 0}, 2.0);  // keep x <= 2
  CHECK(polygon_area(half) == doctest::Approx(8.0));
  CHECK(clip_half_plane(sq, {1, 0}, -1.0).empty());
}

TEST_CASE("aabb clip forces exact coordinates") {
  Polygon tri{{-1, 0}, {3, 0}, {1, 5}};
  Aabb box{{0, 0}, {2, 2}};
  Polygon out = clip_aabb(tri, box);
  for (Vec2 p : out) {
    CHECK(p.x >= 0.0);
    CHECK(p.x <= 2.0);
    CHECK(p.y >= 0.0);
    CHECK(p.y <= 2.0);
  }
}

TEST_CASE("intersection area examples") {
  Polygon sq = rect_poly(0, 0, 4, 4);
  CHECK(intersection_area(sq, {{1, 1}, {3, 3}}) == doctest::Approx(4.0));
  CHECK(intersection_area(sq, {{-2, 0}, {2, 4}}) == doctest::Approx(8.0));
  CHECK(intersection_area(sq, {{10, 10}, {12, 12}}) == doctest::Approx(0.0));
  Polygon tri{{0, 0}, {2, 0}, {0, 2}};
  CHECK(intersection_area(tri, {{0, 0}, {2, 2}}) == doctest::Approx(2.0));
}

TEST_CASE("concave subject clipped by convex window keeps exact area") {
  // U-shape: bridge edges introduced by Sutherland-Hodgman must cancel.
  Polygon u{{0, 0}, {6, 0}, {6, 4}, {4, 4}, {4, 1}, {2, 1}, {2, 4}, {0, 4}};
  CHECK(polygon_area(u) == doctest::Approx(18.0));
  // Window catching both prongs but not the notch floor.
  Aabb box{{0, 2}, {6, 4}};
  CHECK(std::abs(signed_area(clip_aabb(u, box))) == doctest::Approx(8.0));
}

TEST_CASE("degenerate convex clip yields nothing") {
  Polygon sq = rect_poly(0, 0, 4, 4);
  Polygon line_like{{0, 0}, {2, 0}, {1, 0}};
  CHECK(clip_convex(sq, line_like).empty());
  CHECK(clip_convex(sq, {}).empty());
}

TEST_CASE("clip_convex handles either clip orientation") {
  Polygon sq = rect_poly(0, 0, 4, 4);
  Polygon ccw = rect_poly(1, 1, 3, 3);
  Polygon cw(ccw.rbegin(), ccw.rend());
  CHECK(std::abs(signed_area(clip_convex(sq, ccw))) == doctest::Approx(4.0));
  CHECK(std::abs(signed_area(clip_convex(sq, cw))) == doctest::Approx(4.0));
}

TEST_CASE("triangulation partitions the polygon") {
  Polygon concave{{0, 0}, {4, 0}, {4, 4}, {2, 1}, {0, 4}};
  auto tris = triangulate(concave);
  CHECK(tris.size() == concave.size() - 2);
  double total = 0.0;
  for (const auto& t : tris) total += polygon_area({t[0], t[1], t[2]});
  CHECK(total == doctest::Approx(polygon_area(concave)));
}

TEST_CASE("clip area matches rasterization on random convex cases") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 8.0);
  for (int it = 0; it < 20; ++it) {
    std::vector<Vec2> pts;
    for (int i = 0; i < 8; ++i) pts.push_back({u(rng), u(rng)});
    Polygon hull = convex_hull(pts);
    if (hull.size() < 3) continue;
    Aabb box{{2, 2}, {6, 6}};
    double exact = intersection_area(hull, box) / box.area();
    double approx = test::raster_ratio(box, Roi{hull, {}});
    CHECK(std::abs(exact - approx) < 0.02);
  }
}

TEST_CASE("rotate round trip") {
  Vec2 p{3, 4};
  Vec2 q = rotate(rotate(p, 0.7), -0.7);
  CHECK(q.x == doctest::Approx(3.0));
  CHECK(q.y == doctest::Approx(4.0));
}
