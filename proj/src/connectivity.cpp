#include "covplan/connectivity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <queue>

#include "covplan/format_util.hpp"
#include "covplan/parallel.hpp"

namespace covplan {

namespace {

double dist2(Vec2 a, Vec2 b) {
  double dx = a.x - b.x, dy = a.y - b.y;
  return dx * dx + dy * dy;
}

// Heaviest-edge weight (squared) of the MST, dense Prim.
double prim_bottleneck2(const std::vector<Vec2>& pts) {
  const size_t n = pts.size();
  std::vector<double> best(n, std::numeric_limits<double>::infinity());
  std::vector<bool> done(n, false);
  best[0] = 0.0;
  double bottleneck2 = 0.0;
  for (size_t it = 0; it < n; ++it) {
    size_t u = n;
    for (size_t v = 0; v < n; ++v)
      if (!done[v] && (u == n || best[v] < best[u])) u = v;
    done[u] = true;
    bottleneck2 = std::max(bottleneck2, best[u]);
    for (size_t v = 0; v < n; ++v)
      if (!done[v]) best[v] = std::min(best[v], dist2(pts[u], pts[v]));
  }
  return bottleneck2;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[b] = a;
    return true;
  }
};

struct Tri {
  int a, b, c;
};

// det > 0 iff p lies inside the circumcircle of CCW triangle (a, b, c).
bool in_circumcircle(Vec2 a, Vec2 b, Vec2 c, Vec2 p) {
  if (cross(b - a, c - a) < 0) std::swap(b, c);
  double ax = a.x - p.x, ay = a.y - p.y;
  double bx = b.x - p.x, by = b.y - p.y;
  double cx = c.x - p.x, cy = c.y - p.y;
  double det = (ax * ax + ay * ay) * (bx * cy - cx * by) -
               (bx * bx + by * by) * (ax * cy - cx * ay) +
               (cx * cx + cy * cy) * (ax * by - bx * ay);
  return det > 0;
}

// Bowyer-Watson triangulation; returns unique point-index edges. Throws on
// degeneracy; the caller falls back to the dense path.
std::vector<std::pair<int, int>> delaunay_edges(const std::vector<Vec2>& pts) {
  const int n = static_cast<int>(pts.size());
  Aabb box = bounding_box(pts);
  double span = std::max({box.width(), box.height(), 1.0});
  Vec2 mid{(box.lo.x + box.hi.x) / 2, (box.lo.y + box.hi.y) / 2};
  std::vector<Vec2> v(pts);
  v.push_back({mid.x - 30 * span, mid.y - 10 * span});
  v.push_back({mid.x + 30 * span, mid.y - 10 * span});
  v.push_back({mid.x, mid.y + 30 * span});

  std::vector<Tri> tris{{n, n + 1, n + 2}};
  for (int p = 0; p < n; ++p) {
    std::map<std::pair<int, int>, int> edge_count;
    std::vector<Tri> keep;
    keep.reserve(tris.size());
    for (const Tri& t : tris) {
      if (in_circumcircle(v[t.a], v[t.b], v[t.c], v[p])) {
        auto add = [&](int x, int y) {
          edge_count[{std::min(x, y), std::max(x, y)}]++;
        };
        add(t.a, t.b);
        add(t.b, t.c);
        add(t.c, t.a);
      } else {
        keep.push_back(t);
      }
    }
    if (edge_count.empty())
      throw std::runtime_error("delaunay: point in no circumcircle");
    tris = std::move(keep);
    for (const auto& [e, count] : edge_count)
      if (count == 1) tris.push_back({e.first, e.second, p});
  }

  std::map<std::pair<int, int>, bool> seen;
  std::vector<std::pair<int, int>> edges;
  for (const Tri& t : tris) {
    const int idx[3] = {t.a, t.b, t.c};
    for (int i = 0; i < 3; ++i) {
      int x = idx[i], y = idx[(i + 1) % 3];
      if (x >= n || y >= n) continue;
      auto key = std::make_pair(std::min(x, y), std::max(x, y));
      if (!seen[key]) {
        seen[key] = true;
        edges.push_back(key);
      }
    }
  }
  return edges;
}

// Heaviest MST edge (squared) via Kruskal over the Delaunay edge set, which
// is a superset of the Euclidean MST. Returns false when the edge set does
// not span (degenerate input).
bool delaunay_bottleneck2(const std::vector<Vec2>& pts, double& out2) {
  std::vector<std::pair<int, int>> edges;
  try {
    edges = delaunay_edges(pts);
  } catch (const std::runtime_error&) {
    return false;
  }
  std::vector<double> w(edges.size());
  std::vector<size_t> order(edges.size());
  for (size_t i = 0; i < edges.size(); ++i)
    w[i] = dist2(pts[static_cast<size_t>(edges[i].first)],
                 pts[static_cast<size_t>(edges[i].second)]);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](size_t a, size_t b) { return w[a] < w[b]; });
  UnionFind uf(pts.size());
  size_t used = 0;
  double bottleneck2 = 0.0;
  for (size_t i : order) {
    if (uf.unite(edges[i].first, edges[i].second)) {
      bottleneck2 = std::max(bottleneck2, w[i]);
      if (++used + 1 == pts.size()) break;
    }
  }
  if (used + 1 != pts.size()) return false;
  out2 = bottleneck2;
  return true;
}

}  // namespace

double radius_at(const std::vector<Vec2>& positions) {
  if (positions.empty())
    throw std::invalid_argument("radius_at: no positions");
  // Coincident UAVs attach with zero-weight edges; collapse them so the
  // triangulation never sees duplicates.
  std::vector<Vec2> pts(positions);
  std::sort(pts.begin(), pts.end(), [](Vec2 a, Vec2 b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](Vec2 a, Vec2 b) { return a.x == b.x && a.y == b.y; }),
            pts.end());
  if (pts.size() <= 1) return 0.0;
  double b2 = 0.0;
  if (pts.size() > kDenseMstMaxN && delaunay_bottleneck2(pts, b2))
    return std::sqrt(b2);
  return std::sqrt(prim_bottleneck2(pts));
}

RadiusProfile radius_profile_grid(const MultiTrajectory& traj, int workers) {
  RadiusProfile profile;
  if (traj.samples.empty() || traj.samples[0].empty()) return profile;
  const size_t n_samples = traj.samples[0].size();
  profile.samples.resize(n_samples);
  parallel_for(n_samples, workers, [&](size_t k) {
    double t = std::min(static_cast<double>(k) * traj.dt, traj.horizon_T);
    std::vector<Vec2> pos;
    pos.reserve(traj.samples.size());
    for (const auto& row : traj.samples) pos.push_back(row[k].pos);
    profile.samples[k] = {t, radius_at(pos)};
  });
  profile.r_max = profile.samples[0].second;
  profile.argmax_t = profile.samples[0].first;
  for (const auto& [t, r] : profile.samples) {
    if (r > profile.r_max) {
      profile.r_max = r;
      profile.argmax_t = t;
    }
  }
  return profile;
}

LipschitzResult radius_max_lipschitz(const MultiTrajectory& traj, double v,
                                     double eps) {
  if (!(eps > 0.0))
    throw std::invalid_argument("radius_max_lipschitz: eps must be positive");
  if (!(v > 0.0))
    throw std::invalid_argument("radius_max_lipschitz: v must be positive");
  const double L = 2.0 * v;
  const double T = traj.horizon_T;

  LipschitzResult res;
  auto eval = [&](double t) {
    ++res.evaluations;
    return radius_at(traj.positions_at(t));
  };

  double fa = eval(0.0);
  res.r_max = fa;
  res.argmax_t = 0.0;
  if (T <= 0.0) return res;
  double fb = eval(T);
  if (fb > res.r_max) {
    res.r_max = fb;
    res.argmax_t = T;
  }

  struct Interval {
    double ub;  // sawtooth peak over [a, b]
    double a, b, fa, fb;
    bool operator<(const Interval& o) const { return ub < o.ub; }
  };
  auto make = [&](double a, double b, double fva, double fvb) {
    return Interval{(fva + fvb) / 2 + L * (b - a) / 2, a, b, fva, fvb};
  };
  std::priority_queue<Interval> heap;
  heap.push(make(0.0, T, fa, fb));

  const size_t max_evals =
      1000 + static_cast<size_t>(std::min(8.0 * L * T / eps, 1e8));
  while (!heap.empty()) {
    Interval iv = heap.top();
    if (iv.ub <= res.r_max + eps) break;
    heap.pop();
    if (res.evaluations > max_evals)
      throw std::runtime_error("radius_max_lipschitz: evaluation cap hit");
    double t = (iv.a + iv.b) / 2 + (iv.fb - iv.fa) / (2 * L);
    if (!(t > iv.a && t < iv.b)) t = (iv.a + iv.b) / 2;
    double ft = eval(t);
    if (ft > res.r_max) {
      res.r_max = ft;
      res.argmax_t = t;
    }
    heap.push(make(iv.a, t, iv.fa, ft));
    heap.push(make(t, iv.b, ft, iv.fb));
  }
  return res;
}

std::string radius_profile_csv(const RadiusProfile& profile) {
  std::string out = "t,r\n";
  for (const auto& [t, r] : profile.samples) {
    out += format_double(t);
    out += ',';
    out += format_double(r);
    out += '\n';
  }
  return out;
}

}  // namespace covplan
