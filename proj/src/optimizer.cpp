#include "covplan/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "covplan/format_util.hpp"
#include "covplan/parallel.hpp"

namespace covplan {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

uint64_t mix_seed(uint64_t seed, uint64_t salt) {
  uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Walks the profile in time order against the median snapshot. Returns the
// profile max, or nullopt when pruned. Every value computed up to and
// including the pruning one is recorded in the ledger.
std::optional<double> pruned_profile_max(const MultiTrajectory& traj,
                                         PruneLedger& ledger,
                                         double median_snapshot, int workers) {
  const size_t n_samples = traj.samples.empty() ? 0 : traj.samples[0].size();
  double r_max = 0.0;
  auto radius_at_sample = [&](size_t k) {
    std::vector<Vec2> pos;
    pos.reserve(traj.samples.size());
    for (const auto& row : traj.samples) pos.push_back(row[k].pos);
    return radius_at(pos);
  };
  const size_t chunk = workers > 1 ? 64 * static_cast<size_t>(workers) : 1;
  std::vector<double> block(chunk);
  for (size_t base = 0; base < n_samples; base += chunk) {
    const size_t count = std::min(chunk, n_samples - base);
    if (count == 1) {
      block[0] = radius_at_sample(base);
    } else {
      parallel_for(count, workers,
                   [&](size_t i) { block[i] = radius_at_sample(base + i); });
    }
    for (size_t i = 0; i < count; ++i) {
      ledger.insert(block[i]);
      if (block[i] > median_snapshot) return std::nullopt;
      r_max = std::max(r_max, block[i]);
    }
  }
  return r_max;
}

}  // namespace

void PruneLedger::insert(double r) {
  std::lock_guard<std::mutex> lock(mu_);
  if (lower_.empty() || r <= lower_.top())
    lower_.push(r);
  else
    upper_.push(r);
  if (lower_.size() > upper_.size() + 1) {
    upper_.push(lower_.top());
    lower_.pop();
  } else if (upper_.size() > lower_.size()) {
    lower_.push(upper_.top());
    upper_.pop();
  }
}

double PruneLedger::median() const {
  std::lock_guard<std::mutex> lock(mu_);
  if (lower_.empty()) return kInf;
  if (lower_.size() > upper_.size()) return lower_.top();
  return (lower_.top() + upper_.top()) / 2.0;
}

size_t PruneLedger::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return lower_.size() + upper_.size();
}

void PruneLedger::clear() {
  std::lock_guard<std::mutex> lock(mu_);
  lower_ = {};
  upper_ = {};
}

InnerResult inner_optimize(const std::vector<CoveragePath>& paths,
                           const SpeedProfile& profile,
                           const ObjectiveConfig& cfg, PruneLedger& ledger,
                           size_t n_launch, const TpeOptions& tpe_opts,
                           uint64_t rng_seed, int workers) {
  if (n_launch < 1)
    throw std::invalid_argument("inner_optimize: n_launch must be >= 1");
  if (paths.empty())
    throw std::invalid_argument("inner_optimize: no paths");
  std::vector<int> domain_sizes;
  domain_sizes.reserve(paths.size());
  for (const CoveragePath& p : paths)
    domain_sizes.push_back(static_cast<int>(p.waypoints.size()));
  TpeSampler sampler(domain_sizes, tpe_opts, rng_seed);

  InnerResult best;
  best.r = kInf;
  best.all_pruned = true;
  for (size_t trial = 0; trial < n_launch; ++trial) {
    LaunchVector k = sampler.suggest();
    MultiTrajectory traj = sample_trajectory(paths, k, profile, cfg.dt);
    double median_snapshot = ledger.median();
    std::optional<double> r =
        pruned_profile_max(traj, ledger, median_snapshot, workers);
    ++best.trials_run;
    sampler.observe(k, r ? *r : kInf);
    if (r && *r < best.r) {
      best.r = *r;
      best.launch = k;
      best.all_pruned = false;
    }
  }
  return best;
}

std::string trial_log_csv(const std::vector<TrialLog>& trials) {
  std::string out = "trial,f_o,r,e,status\n";
  for (const TrialLog& t : trials) {
    out += std::to_string(t.trial);
    out += ',';
    out += format_double(t.f_o);
    out += ',';
    out += format_double(t.r);
    out += ',';
    out += format_double(t.e_wh);
    out += ',';
    out += t.status;
    out += '\n';
  }
  return out;
}

PlanResult outer_optimize(const Grid& grid, const WorkloadVector& w,
                          const SpeedProfile& profile, const PowerModel& power,
                          const ObjectiveConfig& obj_cfg,
                          const OptimizerConfig& opt_cfg, size_t n_darp,
                          size_t n_launch) {
  if (n_darp < 1)
    throw std::invalid_argument("outer_optimize: n_darp must be >= 1");
  const size_t n_uavs = w.size();
  if (n_uavs == 0) throw std::invalid_argument("outer_optimize: empty w");
  if (n_uavs > grid.size())
    throw InfeasibleError("more UAVs than grid cells");

  TpeSampler outer(
      std::vector<int>(n_uavs, static_cast<int>(grid.size())),
      opt_cfg.outer_tpe, mix_seed(opt_cfg.rng_seed, 0));
  PruneLedger ledger;

  PlanResult result;
  result.f_o = kInf;
  bool have_incumbent = false;
  for (size_t trial = 1; trial <= n_darp; ++trial) {
    if (opt_cfg.reset_ledger_per_outer) ledger.clear();
    SeedVector seeds = outer.suggest_distinct();
    TrialLog log;
    log.trial = trial;

    Partition part;
    bool terminated = true;
    try {
      part = darp_partition(grid, seeds, w, opt_cfg.max_darp_iters);
    } catch (const NonTerminatingError&) {
      terminated = false;
    }
    if (!terminated) {
      log.f_o = log.r = log.e_wh = kInf;
      log.status = "nonterminating";
      outer.observe(seeds, kInf);
      result.trials.push_back(log);
      continue;
    }

    std::vector<CoveragePath> paths;
    paths.reserve(part.regions.size());
    for (size_t i = 0; i < part.regions.size(); ++i)
      paths.push_back(stc_loop(part.regions[i], grid, static_cast<int>(i)));

    InnerResult inner = inner_optimize(
        paths, profile, obj_cfg, ledger, n_launch, opt_cfg.inner_tpe,
        mix_seed(opt_cfg.rng_seed, trial), opt_cfg.workers);
    result.inner_trials += inner.trials_run;
    if (inner.all_pruned) {
      log.f_o = log.r = log.e_wh = kInf;
      log.status = "pruned-out";
      outer.observe(seeds, kInf);
      result.trials.push_back(log);
      continue;
    }

    MultiTrajectory traj =
        sample_trajectory(paths, inner.launch, profile, obj_cfg.dt);
    double e_wh = joules_to_wh(loop_energy(traj, power));
    double f_o = inner.r + obj_cfg.lambda * e_wh;
    log.f_o = f_o;
    log.r = inner.r;
    log.e_wh = e_wh;
    log.status = "ok";
    result.trials.push_back(log);
    outer.observe(seeds, f_o);

    if (f_o < result.f_o) {
      have_incumbent = true;
      result.f_o = f_o;
      result.seeds = seeds;
      result.launch = inner.launch;
      result.partition = std::move(part);
      result.r_grid = inner.r;
      result.e_wh = e_wh;
      result.horizon_T = traj.horizon_T;
      result.paths = std::move(paths);
    }
  }
  if (!have_incumbent) throw InfeasibleError("no feasible partition found");

  // Incumbent profile recomputed unpruned.
  MultiTrajectory traj =
      sample_trajectory(result.paths, result.launch, profile, obj_cfg.dt);
  result.profile = radius_profile_grid(traj, opt_cfg.workers);
  result.r_grid = result.profile.r_max;
  result.argmax_t_grid = result.profile.argmax_t;
  if (obj_cfg.solver == RadiusSolver::Lipschitz)
    result.certified = radius_max_lipschitz(traj, profile.v_f, obj_cfg.eps);
  return result;
}

}  // namespace covplan
