#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

#include "covplan/errors.hpp"
#include "covplan/optimizer.hpp"
#include "test_support.hpp"

using namespace covplan;
using test::full_grid;
using test::make_grid;

namespace {

// Median oracle: sort and average the middle pair.
double median_oracle(std::vector<double> v) {
  if (v.empty()) return std::numeric_limits<double>::infinity();
  std::sort(v.begin(), v.end());
  size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

OptimizerConfig quick_opt(uint64_t seed) {
  OptimizerConfig cfg;
  cfg.rng_seed = seed;
  cfg.outer_tpe.n_startup = 4;
  cfg.inner_tpe.n_startup = 4;
  return cfg;
}

ObjectiveConfig obj_grid(double lambda = 1.0, double dt = 1.0) {
  ObjectiveConfig cfg;
  cfg.lambda = lambda;
  cfg.dt = dt;
  return cfg;
}

}  // namespace

TEST_CASE("prune ledger median") {
  PruneLedger ledger;
  CHECK(std::isinf(ledger.median()));
  CHECK(ledger.size() == 0);
  ledger.insert(50);
  ledger.insert(60);
  ledger.insert(70);
  CHECK(ledger.median() == 60.0);
  ledger.insert(80);
  CHECK(ledger.median() == 65.0);  // even count: mean of the middle pair
  ledger.clear();
  CHECK(ledger.size() == 0);
  CHECK(std::isinf(ledger.median()));
}

TEST_CASE("prune ledger matches a sort-based oracle") {
  std::mt19937_64 rng(97);
  std::uniform_real_distribution<> u(0.0, 100.0);
  PruneLedger ledger;
  std::vector<double> seen;
  for (int i = 0; i < 500; ++i) {
    double v = u(rng);
    ledger.insert(v);
    seen.push_back(v);
    CHECK(ledger.median() == doctest::Approx(median_oracle(seen)));
  }
  CHECK(ledger.size() == 500);
}

TEST_CASE("inner optimizer on singleton launch domains") {
  std::vector<CoveragePath> paths{{{{0, 0}}, 0}, {{{6, 0}}, 1}};
  PruneLedger ledger;
  InnerResult res = inner_optimize(paths, SpeedProfile{5, 3, 0}, obj_grid(),
                                   ledger, 3, TpeOptions{}, 1);
  CHECK(res.launch == LaunchVector{0, 0});
  CHECK(res.r == doctest::Approx(6.0));
  CHECK_FALSE(res.all_pruned);
  CHECK(res.trials_run == 3);
  CHECK(ledger.size() > 0);  // every computed r enters the ledger
}

TEST_CASE("first inner trial is never pruned") {
  Grid g = full_grid(3, 1);
  std::vector<int> region(g.size());
  std::iota(region.begin(), region.end(), 0);
  std::vector<CoveragePath> paths{stc_loop(region, g)};
  PruneLedger ledger;
  InnerResult res = inner_optimize(paths, SpeedProfile{5, 3, 0}, obj_grid(),
                                   ledger, 1, TpeOptions{}, 7);
  CHECK_FALSE(res.all_pruned);
  CHECK(res.r == 0.0);  // single UAV
}

TEST_CASE("inner optimizer validates n_launch") {
  std::vector<CoveragePath> paths{{{{0, 0}}, 0}};
  PruneLedger ledger;
  CHECK_THROWS_AS(inner_optimize(paths, SpeedProfile{}, obj_grid(), ledger, 0,
                                 TpeOptions{}, 1),
                  std::invalid_argument);
}

TEST_CASE("trial log csv") {
  std::vector<TrialLog> trials{{1, 10.0, 4.0, 6.0, "ok"},
                               {2, std::numeric_limits<double>::infinity(),
                                0.0, 0.0, "nonterminating"}};
  std::string csv = trial_log_csv(trials);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "trial,f_o,r,e,status");
  std::getline(in, line);
  CHECK(line.find("ok") != std::string::npos);
  std::getline(in, line);
  CHECK(line.find("nonterminating") != std::string::npos);
}

TEST_CASE("degenerate budgets still produce a plan") {
  Grid g = full_grid(3, 2);
  PlanResult res = outer_optimize(g, {0.5, 0.5}, SpeedProfile{5, 3, 0.5},
                                  PowerModel{}, obj_grid(), quick_opt(3), 1, 1);
  CHECK(res.trials.size() == 1);
  CHECK(res.inner_trials <= 1);
  CHECK(res.seeds.size() == 2);
  CHECK(res.paths.size() == 2);
  CHECK(res.f_o == res.r_grid + 1.0 * res.e_wh);
}

TEST_CASE("single UAV has zero radius everywhere") {
  Grid g = full_grid(3, 2);
  PlanResult res = outer_optimize(g, {1.0}, SpeedProfile{5, 3, 0.5},
                                  PowerModel{}, obj_grid(), quick_opt(4), 5, 2);
  CHECK(res.r_grid == 0.0);
  CHECK(res.f_o == doctest::Approx(res.e_wh));
  for (const auto& t : res.trials)
    if (t.status == "ok") CHECK(t.r == 0.0);
}

TEST_CASE("incumbent is monotone and matches the best logged trial") {
  Grid g = full_grid(4, 3);
  PlanResult res = outer_optimize(g, {0.5, 0.5}, SpeedProfile{5, 3, 0.5},
                                  PowerModel{}, obj_grid(), quick_opt(11), 12,
                                  4);
  CHECK(res.trials.size() == 12);
  double best = std::numeric_limits<double>::infinity();
  for (const auto& t : res.trials) best = std::min(best, t.f_o);
  CHECK(res.f_o == best);
  CHECK(res.inner_trials <= 12 * 4);
}

TEST_CASE("optimizer is deterministic in the seed") {
  Grid g = full_grid(3, 3);
  auto run = [&] {
    return outer_optimize(g, {0.5, 0.5}, SpeedProfile{5, 3, 0.5}, PowerModel{},
                          obj_grid(), quick_opt(21), 8, 3);
  };
  PlanResult a = run();
  PlanResult b = run();
  CHECK(a.seeds == b.seeds);
  CHECK(a.launch == b.launch);
  CHECK(a.f_o == b.f_o);
  CHECK(a.r_grid == b.r_grid);
  CHECK(a.e_wh == b.e_wh);
}

TEST_CASE("final metrics reproduce without pruning") {
  Grid g = full_grid(4, 3);
  WorkloadVector w{0.5, 0.5};
  SpeedProfile prof{5, 3, 0.5};
  for (uint64_t seed : {1ull, 2ull, 3ull}) {
    PlanResult res = outer_optimize(g, w, prof, PowerModel{}, obj_grid(),
                                    quick_opt(seed), 10, 5);
    CandidateEvaluation clean = evaluate_candidate(
        g, res.seeds, w, res.launch, prof, PowerModel{}, obj_grid());
    CHECK(clean.r == res.r_grid);  // pruning soundness, exact
    CHECK(clean.e_wh == res.e_wh);
    CHECK(clean.f_o == res.f_o);
  }
}

TEST_CASE("all partitions infeasible raises") {
  // Two far-apart components sized 8 and 2; w = (0.9, 0.1) needs 9 cells on
  // one side, so every seed pair starves.
  std::vector<CellCoord> cells;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 4; ++c) cells.push_back({c, r});
  cells.push_back({7, 0});
  cells.push_back({7, 1});
  Grid g = make_grid(cells);
  CHECK_THROWS_AS(outer_optimize(g, {0.9, 0.1}, SpeedProfile{5, 3, 0.5},
                                 PowerModel{}, obj_grid(), quick_opt(5), 6, 2),
                  InfeasibleError);
}

TEST_CASE("more UAVs than cells is infeasible") {
  Grid g = full_grid(1, 2);
  CHECK_THROWS_AS(outer_optimize(g, {0.4, 0.3, 0.3}, SpeedProfile{5, 3, 0.5},
                                 PowerModel{}, obj_grid(), quick_opt(6), 2, 1),
                  InfeasibleError);
}

TEST_CASE("worker count does not change the result") {
  Grid g = full_grid(4, 3);
  OptimizerConfig serial = quick_opt(31);
  OptimizerConfig parallel = quick_opt(31);
  parallel.workers = 4;
  PlanResult a = outer_optimize(g, {0.5, 0.5}, SpeedProfile{5, 3, 0.5},
                                PowerModel{}, obj_grid(), serial, 8, 4);
  PlanResult b = outer_optimize(g, {0.5, 0.5}, SpeedProfile{5, 3, 0.5},
                                PowerModel{}, obj_grid(), parallel, 8, 4);
  CHECK(a.seeds == b.seeds);
  CHECK(a.launch == b.launch);
  CHECK(a.f_o == b.f_o);
  CHECK(a.r_grid == b.r_grid);
}

TEST_CASE("ledger reset flag keeps runs deterministic") {
  Grid g = full_grid(3, 3);
  OptimizerConfig cfg = quick_opt(41);
  cfg.reset_ledger_per_outer = true;
  PlanResult a = outer_optimize(g, {0.5, 0.5}, SpeedProfile{5, 3, 0.5},
                                PowerModel{}, obj_grid(), cfg, 6, 3);
  PlanResult b = outer_optimize(g, {0.5, 0.5}, SpeedProfile{5, 3, 0.5},
                                PowerModel{}, obj_grid(), cfg, 6, 3);
  CHECK(a.f_o == b.f_o);
  WorkloadVector w{0.5, 0.5};
  CandidateEvaluation clean = evaluate_candidate(
      g, a.seeds, w, a.launch, SpeedProfile{5, 3, 0.5}, PowerModel{},
      obj_grid());
  CHECK(clean.r == a.r_grid);
}

TEST_CASE("lipschitz certification is attached when requested") {
  Grid g = full_grid(3, 2);
  ObjectiveConfig cfg = obj_grid();
  cfg.solver = RadiusSolver::Lipschitz;
  cfg.eps = 0.05;
  PlanResult res = outer_optimize(g, {0.5, 0.5}, SpeedProfile{5, 3, 0.5},
                                  PowerModel{}, cfg, quick_opt(51), 4, 2);
  REQUIRE(res.certified.has_value());
  // Certified bracket: r_grid <= true max <= certified + eps.
  CHECK(res.r_grid <= res.certified->r_max + cfg.eps + 1e-9);
  CHECK(res.certified->r_max <= res.r_grid + cfg.eps + 1e-9);
}

TEST_CASE("stored paths are canonical loops with explicit launch") {
  Grid g = full_grid(4, 2);
  PlanResult res = outer_optimize(g, {0.5, 0.5}, SpeedProfile{5, 3, 0.5},
                                  PowerModel{}, obj_grid(), quick_opt(61), 6,
                                  4);
  REQUIRE(res.paths.size() == 2);
  for (size_t i = 0; i < res.paths.size(); ++i) {
    const auto& region = res.partition.regions[i];
    CHECK(res.paths[i].waypoints.size() == 4 * region.size());
    CHECK(res.launch[i] >= 0);
    CHECK(res.launch[i] < static_cast<int>(res.paths[i].waypoints.size()));
    // Canonical loop: exactly what stc_loop yields for the stored region.
    CoveragePath expect = stc_loop(region, g, static_cast<int>(i));
    CHECK(res.paths[i].waypoints == expect.waypoints);
  }
}
