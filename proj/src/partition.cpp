#include "covplan/partition.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <random>
#include <unordered_set>

namespace covplan {

namespace {

// Priority-queue entry: squared lattice distance to the seed, then (row, col).
// Cell centers sit on a half-integer lattice, so center-to-center squared
// distances are exact integers in lattice units.
struct FrontierEntry {
  int64_t d2;
  int row;
  int col;
  int cell_index;
  bool operator>(const FrontierEntry& o) const {
    if (d2 != o.d2) return d2 > o.d2;
    if (row != o.row) return row > o.row;
    return col > o.col;
  }
};

using FrontierQueue =
    std::priority_queue<FrontierEntry, std::vector<FrontierEntry>,
                        std::greater<FrontierEntry>>;

int64_t seed_distance2(CellCoord cell, CellCoord seed) {
  int64_t dx = cell.col - seed.col;
  int64_t dy = cell.row - seed.row;
  return dx * dx + dy * dy;
}

}  // namespace

std::vector<std::string> validate_workloads(const WorkloadVector& w) {
  std::vector<std::string> issues;
  if (w.empty()) {
    issues.push_back("workloads: need at least one entry");
    return issues;
  }
  double sum = 0.0;
  for (size_t i = 0; i < w.size(); ++i) {
    if (!(w[i] > 0.0))
      issues.push_back("workloads: w[" + std::to_string(i) +
                       "] must be positive");
    sum += w[i];
  }
  if (std::fabs(sum - 1.0) > 1e-9)
    issues.push_back("workloads: entries must sum to 1 (got " +
                     std::to_string(sum) + ")");
  return issues;
}

std::vector<int> apportion_targets(size_t total, const WorkloadVector& w) {
  if (w.empty()) throw std::invalid_argument("apportion_targets: empty w");
  const size_t n = w.size();
  std::vector<int> targets(n);
  std::vector<std::pair<double, size_t>> remainders(n);
  size_t assigned = 0;
  for (size_t i = 0; i < n; ++i) {
    double exact = w[i] * static_cast<double>(total);
    targets[i] = static_cast<int>(std::floor(exact));
    remainders[i] = {exact - targets[i], i};
    assigned += static_cast<size_t>(targets[i]);
  }
  // Hand out the leftover units by largest fractional part, lowest index
  // first on ties.
  std::stable_sort(remainders.begin(), remainders.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (size_t k = 0; assigned < total; ++k, ++assigned)
    ++targets[remainders[k % n].second];
  return targets;
}

Partition darp_partition(const Grid& grid, const SeedVector& seeds,
                         const WorkloadVector& w, size_t max_iters) {
  const size_t n_cells = grid.size();
  const size_t n = seeds.size();
  if (n == 0 || n != w.size())
    throw std::invalid_argument("darp_partition: seeds/workloads size mismatch");
  {
    std::vector<std::string> issues = validate_workloads(w);
    if (!issues.empty())
      throw std::invalid_argument("darp_partition: " + issues.front());
  }
  if (n > n_cells)
    throw std::invalid_argument("darp_partition: more seeds than cells");
  {
    std::unordered_set<int> uniq;
    for (int s : seeds) {
      if (s < 0 || static_cast<size_t>(s) >= n_cells)
        throw std::invalid_argument("darp_partition: seed index out of range");
      if (!uniq.insert(s).second)
        throw std::invalid_argument("darp_partition: duplicate seed");
    }
  }
  if (max_iters == 0) max_iters = 4 * n_cells;

  std::vector<int> targets = apportion_targets(n_cells, w);
  // A seed occupies its region, so every target is at least 1; steal the
  // shortfall from the largest targets.
  for (size_t i = 0; i < n; ++i) {
    while (targets[i] < 1) {
      size_t donor = std::max_element(targets.begin(), targets.end()) -
                     targets.begin();
      if (targets[donor] <= 1)
        throw std::invalid_argument("darp_partition: unsatisfiable targets");
      --targets[donor];
      ++targets[i];
    }
  }

  std::vector<int> owner(n_cells, -1);
  std::vector<size_t> sizes(n, 0);
  std::vector<FrontierQueue> frontiers(n);
  auto push_neighbors = [&](size_t region, int cell_index) {
    CellCoord c = grid.cells[static_cast<size_t>(cell_index)];
    CellCoord seed = grid.cells[static_cast<size_t>(seeds[region])];
    const CellCoord nbrs[4] = {{c.col + 1, c.row},
                               {c.col - 1, c.row},
                               {c.col, c.row + 1},
                               {c.col, c.row - 1}};
    for (CellCoord nb : nbrs) {
      int idx = grid.index_of(nb);
      if (idx < 0 || owner[static_cast<size_t>(idx)] >= 0) continue;
      frontiers[region].push(
          {seed_distance2(nb, seed), nb.row, nb.col, idx});
    }
  };
  for (size_t i = 0; i < n; ++i) {
    owner[static_cast<size_t>(seeds[i])] = static_cast<int>(i);
    sizes[i] = 1;
    push_neighbors(i, seeds[i]);
  }

  size_t remaining = n_cells - n;
  size_t steps = 0;
  while (remaining > 0) {
    for (size_t i = 0; i < n && remaining > 0; ++i) {
      if (sizes[i] >= static_cast<size_t>(targets[i])) continue;
      if (++steps > max_iters)
        throw NonTerminatingError("darp_partition: exceeded max_iters");
      int picked = -1;
      while (!frontiers[i].empty()) {
        FrontierEntry top = frontiers[i].top();
        frontiers[i].pop();
        if (owner[static_cast<size_t>(top.cell_index)] < 0) {
          picked = top.cell_index;
          break;
        }
      }
      if (picked < 0)
        throw NonTerminatingError(
            "darp_partition: region " + std::to_string(i) +
            " ran out of frontier before reaching its target size");
      owner[static_cast<size_t>(picked)] = static_cast<int>(i);
      ++sizes[i];
      --remaining;
      push_neighbors(i, picked);
    }
  }

  Partition part;
  part.seeds = seeds;
  part.regions.assign(n, {});
  for (size_t i = 0; i < n; ++i)
    part.regions[i].reserve(sizes[i]);
  for (size_t c = 0; c < n_cells; ++c)
    part.regions[static_cast<size_t>(owner[c])].push_back(static_cast<int>(c));
  return part;
}

SeedVector sample_seed_vector(const Grid& grid, size_t n, uint64_t rng_seed) {
  if (n > grid.size())
    throw std::invalid_argument("sample_seed_vector: n exceeds grid size");
  std::vector<int> pool(grid.size());
  for (size_t i = 0; i < pool.size(); ++i) pool[i] = static_cast<int>(i);
  std::mt19937_64 rng(rng_seed);
  SeedVector out;
  out.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    std::uniform_int_distribution<size_t> pick(i, pool.size() - 1);
    std::swap(pool[i], pool[pick(rng)]);
    out.push_back(pool[i]);
  }
  return out;
}

}  // namespace covplan
