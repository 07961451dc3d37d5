#pragma once

#include <mutex>
#include <optional>
#include <queue>
#include <string>

#include "covplan/objective.hpp"
#include "covplan/tpe.hpp"

namespace covplan {

// Running median over every r(i*dt) computed by inner trials. Median of an
// empty ledger is +infinity, so the very first inner trial can never be
// pruned. Thread-safe.
class PruneLedger {
 public:
  void insert(double r);
  double median() const;
  size_t size() const;
  void clear();

 private:
  mutable std::mutex mu_;
  // Two-heap invariant: |lower| == |upper| or |lower| == |upper| + 1.
  std::priority_queue<double> lower_;
  std::priority_queue<double, std::vector<double>, std::greater<>> upper_;
};

struct OptimizerConfig {
  TpeOptions outer_tpe;
  TpeOptions inner_tpe;
  uint64_t rng_seed = 0;
  size_t max_darp_iters = 0;        // 0: 4 * |grid|
  bool reset_ledger_per_outer = false;
  int workers = 1;
};

struct InnerResult {
  LaunchVector launch;
  double r = 0.0;       // grid-search r of the incumbent, unpruned by
                        // construction (see pruning soundness note below)
  bool all_pruned = false;
  size_t trials_run = 0;
};

// n_launch TPE trials over launch indices for fixed paths. Each trial walks
// the r(i*dt) profile in time order, inserting every value into the ledger;
// the trial aborts (score +inf) the moment a value exceeds the ledger median
// snapshotted at trial start. A trial whose true max r stays at or below that
// median is therefore never pruned, so the incumbent's r always equals its
// full-profile evaluation.
InnerResult inner_optimize(const std::vector<CoveragePath>& paths,
                           const SpeedProfile& profile,
                           const ObjectiveConfig& cfg, PruneLedger& ledger,
                           size_t n_launch, const TpeOptions& tpe_opts,
                           uint64_t rng_seed, int workers = 1);

struct TrialLog {
  size_t trial = 0;  // 1-based
  double f_o = 0.0;
  double r = 0.0;
  double e_wh = 0.0;
  std::string status;  // ok | pruned-out | nonterminating
};

std::string trial_log_csv(const std::vector<TrialLog>& trials);

struct PlanResult {
  SeedVector seeds;
  LaunchVector launch;  // waypoint index into the matching canonical loop
  Partition partition;
  std::vector<CoveragePath> paths;  // canonical loops, launch not applied
  double r_grid = 0.0;              // grid-search r(T) at cfg.dt
  double argmax_t_grid = 0.0;
  double e_wh = 0.0;
  double f_o = 0.0;                 // r_grid + lambda * e_wh
  double horizon_T = 0.0;
  RadiusProfile profile;
  std::optional<LipschitzResult> certified;  // filled when solver=lipschitz
  std::vector<TrialLog> trials;
  size_t inner_trials = 0;
};

// Algorithm: outer TPE proposes seed vectors (duplicate cells rejected);
// nonterminating partitions score +inf; otherwise STC paths are built once
// per seed vector and the inner loop picks launch points; outer score is
// f_o = r + lambda * e_wh with the inner grid-search r. Throws
// InfeasibleError when no outer trial yields a finite score.
PlanResult outer_optimize(const Grid& grid, const WorkloadVector& w,
                          const SpeedProfile& profile, const PowerModel& power,
                          const ObjectiveConfig& obj_cfg,
                          const OptimizerConfig& opt_cfg, size_t n_darp,
                          size_t n_launch);

}  // namespace covplan
