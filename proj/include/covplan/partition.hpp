#pragma once

#include <cstdint>
#include <vector>

#include "covplan/geometry.hpp"

namespace covplan {

// Per-UAV workload fractions; each > 0 and summing to 1 within 1e-9.
using WorkloadVector = std::vector<double>;

// Distinct indices into Grid.cells, one seed per UAV.
using SeedVector = std::vector<int>;

std::vector<std::string> validate_workloads(const WorkloadVector& w);

struct Partition {
  std::vector<std::vector<int>> regions;  // sorted cell indices, one per UAV
  SeedVector seeds;
};

// Largest-remainder apportionment of `total` items by fractions w.
// Sums exactly to total.
std::vector<int> apportion_targets(size_t total, const WorkloadVector& w);

// Seed-grown round-robin partition. Each growth step assigns the unassigned
// frontier cell nearest (Euclidean, center-to-center) to the region's seed,
// ties broken by (row, col). Throws NonTerminatingError when a region's
// frontier empties before its target size, or after max_iters growth steps
// (default 4 * grid size).
Partition darp_partition(const Grid& grid, const SeedVector& seeds,
                         const WorkloadVector& w, size_t max_iters = 0);

// n distinct cell indices drawn without replacement, deterministic in
// rng_seed.
SeedVector sample_seed_vector(const Grid& grid, size_t n, uint64_t rng_seed);

}  // namespace covplan
