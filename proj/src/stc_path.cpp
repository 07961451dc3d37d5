#include "covplan/stc_path.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace covplan {

namespace {

struct SubCell {
  int x;  // 2*col + {0,1}
  int y;  // 2*row + {0,1}
  bool operator==(const SubCell&) const = default;
};

// (y, x) lexicographic, consistent with the mega-cell (row, col) order.
bool sub_less(SubCell a, SubCell b) {
  return a.y < b.y || (a.y == b.y && a.x < b.x);
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

}  // namespace

CoveragePath stc_loop(const std::vector<int>& region, const Grid& grid,
                      int region_id) {
  if (region.empty()) throw std::invalid_argument("stc_loop: empty region");
  std::vector<CellCoord> cells;
  cells.reserve(region.size());
  for (int idx : region) {
    if (idx < 0 || static_cast<size_t>(idx) >= grid.size())
      throw std::invalid_argument("stc_loop: cell index out of range");
    cells.push_back(grid.cells[static_cast<size_t>(idx)]);
  }
  std::sort(cells.begin(), cells.end(), cell_less);
  auto local_index = [&](CellCoord c) -> int {
    auto it = std::lower_bound(cells.begin(), cells.end(), c, cell_less);
    if (it == cells.end() || !(*it == c)) return -1;
    return static_cast<int>(it - cells.begin());
  };

  // Candidate edges to east/north neighbors, already in lexicographic order
  // because cells are; Kruskal then yields the min-lex spanning tree.
  const size_t m = cells.size();
  std::vector<bool> east_edge(m, false), north_edge(m, false);
  UnionFind uf(m);
  size_t tree_edges = 0;
  for (size_t i = 0; i < m && tree_edges + 1 < m; ++i) {
    int e = local_index({cells[i].col + 1, cells[i].row});
    if (e >= 0 && uf.unite(static_cast<int>(i), e)) {
      east_edge[i] = true;
      ++tree_edges;
    }
    int n = local_index({cells[i].col, cells[i].row + 1});
    if (n >= 0 && uf.unite(static_cast<int>(i), n)) {
      north_edge[i] = true;
      ++tree_edges;
    }
  }
  if (tree_edges + 1 != m)
    throw std::invalid_argument("stc_loop: region is not 4-connected");

  auto has_east = [&](CellCoord c) {
    int i = local_index(c);
    return i >= 0 && east_edge[static_cast<size_t>(i)];
  };
  auto has_north = [&](CellCoord c) {
    int i = local_index(c);
    return i >= 0 && north_edge[static_cast<size_t>(i)];
  };

  // Neighbors of a sub-cell in the circumnavigation graph. Moves crossing a
  // tree edge are blocked; moves between mega-cells exist only along a tree
  // edge. Every sub-cell ends up with exactly two neighbors.
  auto neighbors = [&](SubCell s) {
    std::vector<SubCell> out;
    const int col = s.x >> 1, row = s.y >> 1;
    const int sx = s.x & 1, sy = s.y & 1;
    const CellCoord cell{col, row};
    // vertical, within the cell
    {
      SubCell t{s.x, sy == 0 ? s.y + 1 : s.y - 1};
      bool blocked = sx == 1 ? has_east(cell) : has_east({col - 1, row});
      if (!blocked) out.push_back(t);
    }
    // horizontal, within the cell
    {
      SubCell t{sx == 0 ? s.x + 1 : s.x - 1, s.y};
      bool blocked = sy == 1 ? has_north(cell) : has_north({col, row - 1});
      if (!blocked) out.push_back(t);
    }
    // across the east or west boundary
    if (sx == 1 && has_east(cell)) out.push_back({s.x + 1, s.y});
    if (sx == 0 && has_east({col - 1, row})) out.push_back({s.x - 1, s.y});
    // across the north or south boundary
    if (sy == 1 && has_north(cell)) out.push_back({s.x, s.y + 1});
    if (sy == 0 && has_north({col, row - 1})) out.push_back({s.x, s.y - 1});
    return out;
  };

  SubCell start{cells[0].col * 2, cells[0].row * 2};
  for (const CellCoord& c : cells) {
    SubCell s{c.col * 2, c.row * 2};
    if (sub_less(s, start)) start = s;
  }

  std::vector<SubCell> loop;
  loop.reserve(4 * m);
  SubCell prev{-1, -1};
  SubCell cur = start;
  do {
    loop.push_back(cur);
    auto nbrs = neighbors(cur);
    if (nbrs.size() != 2)
      throw std::runtime_error("stc_loop: sub-cell degree != 2");
    std::sort(nbrs.begin(), nbrs.end(), sub_less);
    SubCell next = (nbrs[0] == prev) ? nbrs[1] : nbrs[0];
    prev = cur;
    cur = next;
  } while (!(cur == start) && loop.size() <= 4 * m);
  if (loop.size() != 4 * m)
    throw std::runtime_error("stc_loop: circumnavigation did not close");

  // Normalize to counterclockwise while keeping the start waypoint.
  double area2 = 0.0;
  for (size_t i = 0; i < loop.size(); ++i) {
    const SubCell& a = loop[i];
    const SubCell& b = loop[(i + 1) % loop.size()];
    area2 += static_cast<double>(a.x) * b.y - static_cast<double>(b.x) * a.y;
  }
  if (area2 < 0) std::reverse(loop.begin() + 1, loop.end());

  const double w = grid.spec.cell_side / 2.0;
  CoveragePath path;
  path.region_id = region_id;
  path.waypoints.reserve(loop.size());
  for (const SubCell& s : loop)
    path.waypoints.push_back(
        grid.grid_to_world({(s.x + 0.5) * w, (s.y + 0.5) * w}));
  return path;
}

CoveragePath rotate_start(const CoveragePath& path, int k) {
  if (k < 0 || static_cast<size_t>(k) >= path.waypoints.size())
    throw std::invalid_argument("rotate_start: index out of range");
  CoveragePath out;
  out.region_id = path.region_id;
  out.waypoints.reserve(path.waypoints.size());
  out.waypoints.insert(out.waypoints.end(), path.waypoints.begin() + k,
                       path.waypoints.end());
  out.waypoints.insert(out.waypoints.end(), path.waypoints.begin(),
                       path.waypoints.begin() + k);
  return out;
}

}  // namespace covplan
