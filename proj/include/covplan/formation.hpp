#pragma once

#include "covplan/connectivity.hpp"
#include "covplan/stc_path.hpp"
#include "covplan/trajectory.hpp"

namespace covplan {

// Line formation riding one reference loop; member i sits at lateral offset
// offsets[i] along the instantaneous left normal of the reference heading.
struct FormationSpec {
  int n = 1;       // fleet size
  double w = 1.0;  // per-UAV footprint side, m

  std::vector<std::string> validate() const;
};

// d_i = (2i - N - 1) * w / 2 for i = 1..N; symmetric about 0, spacing w.
std::vector<double> formation_offsets(int n, double w);

struct FormationPlan {
  Grid grid;               // combined-footprint grid, cell side 2*N*w
  CoveragePath reference;  // single STC loop over the combined grid
  std::vector<double> offsets;
  MultiTrajectory traj;    // per-member tracks, knots at sample resolution
};

// Discretizes the ROI with the combined footprint (side N*w), builds one STC
// loop, and places members on rigid lateral offsets; across a corner's slow
// zones the heading rotates linearly in time, so the formation pivots rather
// than snapping. Throws InfeasibleError when the ROI has NFZs or the combined
// footprint does not fit.
FormationPlan formation_plan(const Roi& roi, const FormationSpec& spec,
                             const SpeedProfile& profile, double tau, double dt);

// Trajectory-only convenience wrapper around formation_plan.
MultiTrajectory formation_paths(const Roi& roi, const FormationSpec& spec,
                                const SpeedProfile& profile, double tau,
                                double dt);

// Mission-wide connectivity radius of the formation (grid search).
double formation_radius(const MultiTrajectory& traj);

}  // namespace covplan
