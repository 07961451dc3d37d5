#pragma once

#include <string>

#include "covplan/formation.hpp"
#include "covplan/mission.hpp"

namespace covplan {

struct PlanSummary {
  double r = 0.0;
  double e_wh = 0.0;
  double f_o = 0.0;
  double horizon_T = 0.0;
  size_t n_cells = 0;
  std::string plan_path;
};

// Runs the full pipeline for the config's mode and writes plan.json,
// paths.geojson, radius.csv, trials.csv and plots.gp under out_dir.
PlanSummary run_plan(const MissionConfig& cfg, const std::string& out_dir,
                     int workers = 1);

struct EvaluateReport {
  bool match = true;
  std::vector<std::string> deltas;
  double r = 0.0;
  double e_wh = 0.0;
  double f_o = 0.0;
};

// Recomputes r, e and f_o from the stored loops and launch indices and
// compares them with the stored metrics (exact equality).
EvaluateReport evaluate_plan_file(const std::string& plan_path);

struct ParetoPoint {
  double lambda = 0.0;
  double r = 0.0;
  double e_wh = 0.0;
  double f_o = 0.0;
  bool nondominated = false;
};

// One full plan per lambda; writes pareto.csv, pareto.gp and per-lambda plan
// directories under out_dir.
std::vector<ParetoPoint> run_pareto(const MissionConfig& cfg,
                                    const std::vector<double>& lambdas,
                                    const std::string& out_dir,
                                    int workers = 1);

}  // namespace covplan
