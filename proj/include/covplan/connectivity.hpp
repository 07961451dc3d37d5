#pragma once

#include <string>
#include <utility>
#include <vector>

#include "covplan/trajectory.hpp"

namespace covplan {

// Dense O(N^2) Prim handles fleets up to this size; larger ones go through
// the Delaunay-filtered MST.
inline constexpr size_t kDenseMstMaxN = 16;

// Smallest r such that the graph with edges of weight <= r is connected:
// the heaviest edge of the Euclidean MST (= the MBST bottleneck).
double radius_at(const std::vector<Vec2>& positions);

struct RadiusProfile {
  std::vector<std::pair<double, double>> samples;  // (t, r)
  double r_max = 0.0;
  double argmax_t = 0.0;
};

// radius_at over every sample instant of the trajectory.
RadiusProfile radius_profile_grid(const MultiTrajectory& traj, int workers = 1);

struct LipschitzResult {
  double r_max = 0.0;    // best value found; true max <= r_max + eps
  double argmax_t = 0.0;
  size_t evaluations = 0;
};

// Shubert-Piyavskii maximization of r(t) on [0, horizon_T] with Lipschitz
// constant 2v, refining the sawtooth upper envelope until its peak is within
// eps of the best evaluation. Uses exact continuous-time positions.
LipschitzResult radius_max_lipschitz(const MultiTrajectory& traj, double v,
                                     double eps);

// CSV rows `t,r`, header included.
std::string radius_profile_csv(const RadiusProfile& profile);

}  // namespace covplan
