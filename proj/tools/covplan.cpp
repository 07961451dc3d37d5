#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "covplan/plan_io.hpp"
#include "covplan/version.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitConfig = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitInternal = 4;

covplan::MissionConfig load_config(const std::string& path) {
  covplan::MissionConfig cfg = covplan::MissionConfig::load(path);
  if (const char* env = std::getenv("COVPLAN_SEED")) {
    char* end = nullptr;
    unsigned long long seed = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0')
      throw covplan::ConfigError("COVPLAN_SEED must be a whole number");
    cfg.rng_seed = seed;
  }
  return cfg;
}

int run(int argc, char** argv) {
  CLI::App app{"Multi-UAV coverage path planner"};
  app.set_version_flag("--version", covplan::kVersion);
  app.require_subcommand(1);
  int workers = 1;
  app.add_option("--workers", workers, "Evaluator threads (determinism is only guaranteed with 1)")
      ->check(CLI::PositiveNumber);

  std::string config_path, out_dir = "out", plan_path;
  std::vector<double> lambdas;

  CLI::App* plan = app.add_subcommand("plan", "Optimize a mission and write plan artifacts");
  plan->add_option("-c,--config", config_path, "Mission config JSON")->required();
  plan->add_option("-o,--out", out_dir, "Output directory");

  CLI::App* evaluate = app.add_subcommand("evaluate", "Recompute a plan's metrics and compare");
  evaluate->add_option("plan", plan_path, "plan.json produced by `covplan plan`")->required();

  CLI::App* pareto = app.add_subcommand("pareto", "Sweep lambda and report the trade-off front");
  pareto->add_option("-c,--config", config_path, "Mission config JSON")->required();
  pareto->add_option("-o,--out", out_dir, "Output directory");
  pareto->add_option("--lambdas", lambdas, "Comma-separated lambda values")
      ->required()
      ->delimiter(',');

  CLI11_PARSE(app, argc, argv);

  if (plan->parsed()) {
    covplan::PlanSummary s = covplan::run_plan(load_config(config_path), out_dir, workers);
    std::printf("cells=%zu r=%.6g m e=%.6g Wh f_o=%.6g T=%.6g s\n", s.n_cells,
                s.r, s.e_wh, s.f_o, s.horizon_T);
    std::printf("wrote %s\n", s.plan_path.c_str());
    return kExitOk;
  }
  if (evaluate->parsed()) {
    covplan::EvaluateReport rep = covplan::evaluate_plan_file(plan_path);
    if (rep.match) {
      std::printf("match: r=%.17g e=%.17g f_o=%.17g\n", rep.r, rep.e_wh,
                  rep.f_o);
      return kExitOk;
    }
    std::fprintf(stderr, "mismatch:\n");
    for (const std::string& d : rep.deltas)
      std::fprintf(stderr, "  %s\n", d.c_str());
    return kExitMismatch;
  }
  // pareto
  auto points = covplan::run_pareto(load_config(config_path), lambdas, out_dir,
                                    workers);
  std::printf("lambda,r,e,f_o,nondominated\n");
  for (const auto& p : points)
    std::printf("%g,%.6g,%.6g,%.6g,%d\n", p.lambda, p.r, p.e_wh, p.f_o,
                p.nondominated ? 1 : 0);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const covplan::ConfigError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return kExitConfig;
  } catch (const covplan::InfeasibleError& e) {
    std::fprintf(stderr, "infeasible: %s\n", e.what());
    return kExitInfeasible;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return kExitInternal;
  }
}
