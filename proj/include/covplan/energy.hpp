#pragma once

#include "covplan/trajectory.hpp"

namespace covplan {

// Constant per-state powers, watts. Defaults are the measured means.
struct PowerModel {
  double p_hover = 492.0;
  double p_forward = 488.0;
  double p_turn = 509.0;

  std::vector<std::string> validate() const;
};

inline double joules_to_wh(double joules) { return joules / 3600.0; }

// Total fleet energy over the whole horizon, hover included, joules.
double mission_energy(const MultiTrajectory& traj, const PowerModel& model);

// Energy of the coverage loops alone: forward and turn states only. This is
// what the planner's objective charges, so the score does not reward making
// other UAVs finish earlier merely to cut synchronization hover.
double loop_energy(const MultiTrajectory& traj, const PowerModel& model);

// Energy spent in [t0, t1] by all UAVs; additive over disjoint slices.
double energy_between(const MultiTrajectory& traj, const PowerModel& model,
                      double t0, double t1);

}  // namespace covplan
