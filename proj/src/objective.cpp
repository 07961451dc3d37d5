#include "covplan/objective.hpp"

namespace covplan {

std::vector<std::string> ObjectiveConfig::validate() const {
  std::vector<std::string> issues;
  if (lambda < 0.0) issues.push_back("objective: lambda must be >= 0");
  if (!(dt > 0.0)) issues.push_back("objective: dt must be positive");
  if (!(eps > 0.0)) issues.push_back("objective: eps must be positive");
  return issues;
}

CandidateEvaluation evaluate_candidate(const Grid& grid, const SeedVector& seeds,
                                       const WorkloadVector& w,
                                       const LaunchVector& launch,
                                       const SpeedProfile& profile,
                                       const PowerModel& power,
                                       const ObjectiveConfig& cfg) {
  Partition part = darp_partition(grid, seeds, w);
  std::vector<CoveragePath> paths;
  paths.reserve(part.regions.size());
  for (size_t i = 0; i < part.regions.size(); ++i)
    paths.push_back(stc_loop(part.regions[i], grid, static_cast<int>(i)));
  MultiTrajectory traj = sample_trajectory(paths, launch, profile, cfg.dt);

  CandidateEvaluation eval;
  eval.seeds = seeds;
  eval.launch = launch;
  eval.horizon_T = traj.horizon_T;
  eval.e_wh = joules_to_wh(loop_energy(traj, power));
  if (cfg.solver == RadiusSolver::Lipschitz)
    eval.r = radius_max_lipschitz(traj, profile.v_f, cfg.eps).r_max;
  else
    eval.r = radius_profile_grid(traj).r_max;
  eval.f_o = eval.r + cfg.lambda * eval.e_wh;
  return eval;
}

}  // namespace covplan
