#pragma once

#include "covplan/connectivity.hpp"
#include "covplan/energy.hpp"
#include "covplan/partition.hpp"
#include "covplan/stc_path.hpp"

namespace covplan {

enum class RadiusSolver { Grid, Lipschitz };

struct ObjectiveConfig {
  double lambda = 1.0;  // meters per Wh
  double dt = 1.0;      // sample interval, s
  double eps = 0.1;     // Lipschitz certification tolerance, m
  RadiusSolver solver = RadiusSolver::Grid;

  std::vector<std::string> validate() const;
};

struct CandidateEvaluation {
  SeedVector seeds;
  LaunchVector launch;
  double r = 0.0;    // m, via cfg.solver
  double e_wh = 0.0; // loop energy, Wh
  double f_o = 0.0;  // r + lambda * e_wh
  double horizon_T = 0.0;
};

// Full pipeline for one (seeds, launch) candidate: partition, STC loops,
// trajectory, loop energy, connectivity radius. Propagates
// NonTerminatingError from the partition.
CandidateEvaluation evaluate_candidate(const Grid& grid, const SeedVector& seeds,
                                       const WorkloadVector& w,
                                       const LaunchVector& launch,
                                       const SpeedProfile& profile,
                                       const PowerModel& power,
                                       const ObjectiveConfig& cfg);

}  // namespace covplan
