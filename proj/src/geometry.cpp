#include "covplan/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "covplan/parallel.hpp"

namespace covplan {

namespace {

constexpr double kHalfPi = 1.5707963267948966;
constexpr double kRatioEps = 1e-12;

double nfz_area_in(const Polygon& outer, const Polygon& nfz, const Aabb& cell) {
  double area = 0.0;
  for (const auto& tri : triangulate(nfz)) {
    Polygon in_cell = clip_aabb({tri[0], tri[1], tri[2]}, cell);
    if (in_cell.size() < 3) continue;
    area += std::fabs(signed_area(clip_convex(outer, in_cell)));
  }
  return area;
}

}  // namespace

std::vector<std::string> Roi::validate() const {
  std::vector<std::string> issues;
  if (outer.size() < 3) {
    issues.push_back("roi: outer ring needs at least 3 vertices");
    return issues;
  }
  if (!polygon_is_simple(outer))
    issues.push_back("roi: outer ring self-intersects or has repeated edges");
  if (std::fabs(signed_area(outer)) <= 0.0)
    issues.push_back("roi: outer ring has zero area");
  Polygon hull = convex_hull(outer);
  for (size_t i = 0; i < nfzs.size(); ++i) {
    const std::string tag = "roi: nfz[" + std::to_string(i) + "]";
    if (nfzs[i].size() < 3) {
      issues.push_back(tag + " needs at least 3 vertices");
      continue;
    }
    if (!polygon_is_simple(nfzs[i]))
      issues.push_back(tag + " self-intersects or has repeated edges");
    if (std::fabs(signed_area(nfzs[i])) <= 0.0)
      issues.push_back(tag + " has zero area");
    for (const Vec2& v : nfzs[i]) {
      if (!point_in_convex(v, hull)) {
        issues.push_back(tag + " extends outside the outer ring's convex hull");
        break;
      }
    }
    for (size_t j = i + 1; j < nfzs.size(); ++j) {
      if (nfzs[j].size() >= 3 && polygons_overlap(nfzs[i], nfzs[j]))
        issues.push_back(tag + " overlaps nfz[" + std::to_string(j) + "]");
    }
  }
  return issues;
}

double Roi::usable_area() const {
  double area = std::fabs(signed_area(outer));
  Aabb box = bounding_box(outer);
  for (const auto& nfz : nfzs) area -= nfz_area_in(outer, nfz, box);
  return area;
}

Roi rotate_roi(const Roi& roi, double theta) {
  Roi out;
  out.outer.reserve(roi.outer.size());
  for (const Vec2& v : roi.outer) out.outer.push_back(rotate(v, theta));
  out.nfzs.reserve(roi.nfzs.size());
  for (const auto& nfz : roi.nfzs) {
    Polygon r;
    r.reserve(nfz.size());
    for (const Vec2& v : nfz) r.push_back(rotate(v, theta));
    out.nfzs.push_back(std::move(r));
  }
  return out;
}

SensorFootprint SensorFootprint::from_area(double area_m2) {
  if (!(area_m2 > 0.0))
    throw std::invalid_argument("sensor footprint area must be positive");
  return SensorFootprint{std::sqrt(area_m2)};
}

Vec2 Grid::cell_center_grid(CellCoord c) const {
  return {(c.col + 0.5) * spec.cell_side, (c.row + 0.5) * spec.cell_side};
}

Vec2 Grid::cell_center_world(CellCoord c) const {
  return grid_to_world(cell_center_grid(c));
}

Vec2 Grid::world_to_grid(Vec2 p) const {
  return rotate(p, -spec.rotation_theta) - spec.origin;
}

Vec2 Grid::grid_to_world(Vec2 q) const {
  return rotate(q + spec.origin, spec.rotation_theta);
}

CellCoord Grid::cell_of_world_point(Vec2 p) const {
  Vec2 q = world_to_grid(p);
  return {static_cast<int>(std::floor(q.x / spec.cell_side)),
          static_cast<int>(std::floor(q.y / spec.cell_side))};
}

int Grid::index_of(CellCoord c) const {
  auto it = std::lower_bound(cells.begin(), cells.end(), c, cell_less);
  if (it == cells.end() || !(*it == c)) return -1;
  return static_cast<int>(it - cells.begin());
}

double cell_inclusion_ratio(const Aabb& cell, const Roi& roi_grid_frame) {
  double cell_area = cell.area();
  if (!(cell_area > 0.0))
    throw std::invalid_argument("cell_inclusion_ratio: degenerate cell");
  double inter = intersection_area(roi_grid_frame.outer, cell);
  for (const auto& nfz : roi_grid_frame.nfzs)
    inter -= nfz_area_in(roi_grid_frame.outer, nfz, cell);
  double ratio = inter / cell_area;
  return std::clamp(ratio, 0.0, 1.0);
}

GridSpec make_grid_spec(const Roi& roi, double side_w, double tau,
                        double rotation_theta, Vec2 shift) {
  if (!(side_w > 0.0))
    throw std::invalid_argument("make_grid_spec: side_w must be positive");
  if (!(tau > 0.0 && tau <= 1.0))
    throw std::invalid_argument("make_grid_spec: tau must be in (0, 1]");
  GridSpec spec;
  spec.cell_side = 2.0 * side_w;
  spec.tau = tau;
  double theta = std::fmod(rotation_theta, kHalfPi);
  if (theta < 0.0) theta += kHalfPi;
  spec.rotation_theta = theta;
  auto wrap = [&](double v) {
    double r = std::fmod(v, spec.cell_side);
    return r < 0.0 ? r + spec.cell_side : r;
  };
  spec.shift = {wrap(shift.x), wrap(shift.y)};
  Polygon rotated;
  rotated.reserve(roi.outer.size());
  for (const Vec2& v : roi.outer) rotated.push_back(rotate(v, -theta));
  spec.origin = bounding_box(rotated).lo - spec.shift;
  return spec;
}

Grid discretize(const Roi& roi, const GridSpec& spec) {
  Grid grid;
  grid.spec = spec;
  Roi local = rotate_roi(roi, -spec.rotation_theta);
  auto translate = [&](Polygon& poly) {
    for (Vec2& v : poly) v = v - spec.origin;
  };
  translate(local.outer);
  for (auto& nfz : local.nfzs) translate(nfz);

  const double s = spec.cell_side;
  Aabb box = bounding_box(local.outer);
  int col_lo = static_cast<int>(std::floor(box.lo.x / s)) - 1;
  int col_hi = static_cast<int>(std::floor(box.hi.x / s)) + 1;
  int row_lo = static_cast<int>(std::floor(box.lo.y / s)) - 1;
  int row_hi = static_cast<int>(std::floor(box.hi.y / s)) + 1;
  for (int row = row_lo; row <= row_hi; ++row) {
    for (int col = col_lo; col <= col_hi; ++col) {
      Aabb cell{{col * s, row * s}, {(col + 1) * s, (row + 1) * s}};
      if (cell_inclusion_ratio(cell, local) + kRatioEps >= spec.tau)
        grid.cells.push_back({col, row});
    }
  }
  if (grid.cells.empty()) throw InfeasibleError("ROI too small for footprint");
  return grid;
}

double covered_area_ratio(const Roi& roi, const GridSpec& spec) {
  double denom = roi.usable_area();
  if (!(denom > 0.0)) return 0.0;
  Grid grid;
  try {
    grid = discretize(roi, spec);
  } catch (const InfeasibleError&) {
    return 0.0;
  }
  Roi local = rotate_roi(roi, -spec.rotation_theta);
  for (Vec2& v : local.outer) v = v - spec.origin;
  for (auto& nfz : local.nfzs)
    for (Vec2& v : nfz) v = v - spec.origin;
  const double s = spec.cell_side;
  double covered = 0.0;
  for (CellCoord c : grid.cells) {
    Aabb cell{{c.col * s, c.row * s}, {(c.col + 1) * s, (c.row + 1) * s}};
    covered += cell_inclusion_ratio(cell, local) * cell.area();
  }
  return covered / denom;
}

GridSpec optimize_alignment(const Roi& roi, double side_w, double tau, int budget,
                            int workers) {
  if (budget < 1)
    throw std::invalid_argument("optimize_alignment: budget must be >= 1");
  const double cell_side = 2.0 * side_w;

  // Half the budget sweeps rotations uniformly (shift 0), so the angular
  // resolution is (pi/2)/n_rot; the rest samples (theta, shift) triples.
  struct Candidate {
    double theta;
    Vec2 shift;
  };
  std::vector<Candidate> candidates;
  candidates.reserve(static_cast<size_t>(budget));
  int n_rot = std::max(1, (budget + 1) / 2);
  for (int k = 0; k < n_rot && static_cast<int>(candidates.size()) < budget; ++k)
    candidates.push_back({k * kHalfPi / n_rot, {0.0, 0.0}});
  std::mt19937 rng(0x5eed);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  while (static_cast<int>(candidates.size()) < budget) {
    double theta = u01(rng) * kHalfPi;
    Vec2 shift{u01(rng) * cell_side, u01(rng) * cell_side};
    candidates.push_back({theta, shift});
  }

  std::vector<GridSpec> specs(candidates.size());
  std::vector<double> scores(candidates.size());
  parallel_for(candidates.size(), workers, [&](size_t i) {
    specs[i] = make_grid_spec(roi, side_w, tau, candidates[i].theta,
                              candidates[i].shift);
    scores[i] = covered_area_ratio(roi, specs[i]);
  });
  size_t best = 0;
  for (size_t i = 1; i < scores.size(); ++i)
    if (scores[i] > scores[best]) best = i;
  return specs[best];
}

}  // namespace covplan
