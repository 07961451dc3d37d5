#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "covplan/errors.hpp"
#include "covplan/geom.hpp"

namespace covplan {

// Region of interest: one outer ring plus no-fly-zone holes, meters, local
// ENU frame.
struct Roi {
  Polygon outer;
  std::vector<Polygon> nfzs;

  // Returns human-readable problems; empty when the Roi is usable.
  std::vector<std::string> validate() const;
  double usable_area() const;  // outer minus NFZ overlap
};

Roi rotate_roi(const Roi& roi, double theta);

struct SensorFootprint {
  double side_w = 0.0;  // square side, meters

  static SensorFootprint from_area(double area_m2);
};

struct GridSpec {
  Vec2 origin;                  // grid-frame anchor (rotated-frame coordinates)
  double rotation_theta = 0.0;  // [0, pi/2)
  Vec2 shift;                   // [0, cell_side)^2
  double cell_side = 0.0;       // 2 * footprint side
  double tau = 1.0;             // coverage threshold, (0, 1]
};

struct CellCoord {
  int col = 0;
  int row = 0;
  bool operator==(const CellCoord&) const = default;
};

// (row, col) lexicographic order; the tie-break order used everywhere.
inline bool cell_less(CellCoord a, CellCoord b) {
  return a.row < b.row || (a.row == b.row && a.col < b.col);
}

struct Grid {
  GridSpec spec;
  std::vector<CellCoord> cells;  // sorted by cell_less, unique

  size_t size() const { return cells.size(); }
  Vec2 cell_center_grid(CellCoord c) const;
  Vec2 cell_center_world(CellCoord c) const;
  Vec2 world_to_grid(Vec2 p) const;
  Vec2 grid_to_world(Vec2 q) const;
  CellCoord cell_of_world_point(Vec2 p) const;
  // Index into `cells`, or -1.
  int index_of(CellCoord c) const;
};

// Fraction of an axis-aligned square cell covered by the ROI, NFZ interiors
// excluded. The cell and the ROI must be expressed in the same (grid) frame.
double cell_inclusion_ratio(const Aabb& cell, const Roi& roi_grid_frame);

GridSpec make_grid_spec(const Roi& roi, double side_w, double tau,
                        double rotation_theta = 0.0, Vec2 shift = {});

// Keeps exactly the cells whose inclusion ratio reaches spec.tau.
// Throws InfeasibleError when no cell qualifies.
Grid discretize(const Roi& roi, const GridSpec& spec);

// Bounded search over rotation [0, pi/2) x shift [0, cell_side)^2 maximizing
// the covered-area ratio. Candidate 0 is always the identity alignment.
GridSpec optimize_alignment(const Roi& roi, double side_w, double tau, int budget,
                            int workers = 1);

// Sum over included cells of area(cell ∩ ROI) divided by the ROI area.
double covered_area_ratio(const Roi& roi, const GridSpec& spec);

}  // namespace covplan
