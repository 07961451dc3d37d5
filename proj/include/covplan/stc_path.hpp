#pragma once

#include <vector>

#include "covplan/geometry.hpp"

namespace covplan {

// Closed coverage loop; waypoints are sub-cell centers in world coordinates,
// the edge from the last back to the first is implicit. Consecutive waypoints
// are one sub-cell side (side_w) apart.
struct CoveragePath {
  std::vector<Vec2> waypoints;
  int region_id = 0;
};

// Per-UAV launch waypoint indices, k[i] into paths[i].waypoints.
using LaunchVector = std::vector<int>;

// Spanning-tree coverage loop over the region's mega-cells. The tree is the
// minimum-lexicographic spanning tree (Kruskal over (row,col)-sorted edges),
// circumnavigated counterclockwise through the four side_w sub-cells of each
// mega-cell, starting at the (row, col)-smallest sub-cell. Loop length is
// exactly 4 * side_w * |region|.
CoveragePath stc_loop(const std::vector<int>& region, const Grid& grid,
                      int region_id = 0);

// Same cyclic sequence starting at waypoint k, direction preserved.
CoveragePath rotate_start(const CoveragePath& path, int k);

}  // namespace covplan
