#include "covplan/plan_io.hpp"

#include <filesystem>
#include <fstream>

#include "covplan/format_util.hpp"
#include "covplan/version.hpp"

namespace covplan {

namespace {

using nlohmann::json;

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

json vec_json(Vec2 v) { return json::array({v.x, v.y}); }

json waypoints_json(const std::vector<Vec2>& pts) {
  json arr = json::array();
  for (Vec2 p : pts) arr.push_back(vec_json(p));
  return arr;
}

json coords_for_export(const std::vector<Vec2>& pts,
                       const std::optional<Vec2>& origin) {
  json arr = json::array();
  for (Vec2 p : pts)
    arr.push_back(vec_json(origin ? local_to_lonlat(p, *origin) : p));
  return arr;
}

json geojson_paths(const std::vector<CoveragePath>& paths,
                   const LaunchVector& launch,
                   const std::optional<Vec2>& origin) {
  json features = json::array();
  for (size_t i = 0; i < paths.size(); ++i) {
    std::vector<Vec2> ring = paths[i].waypoints;
    if (!ring.empty()) ring.push_back(ring.front());  // visually closed
    features.push_back({{"type", "Feature"},
                        {"properties", {{"uav", i}, {"kind", "loop"}}},
                        {"geometry",
                         {{"type", "LineString"},
                          {"coordinates", coords_for_export(ring, origin)}}}});
    if (i < launch.size() && !paths[i].waypoints.empty()) {
      Vec2 lp = paths[i].waypoints[static_cast<size_t>(launch[i])];
      features.push_back(
          {{"type", "Feature"},
           {"properties", {{"uav", i}, {"kind", "launch"}}},
           {"geometry",
            {{"type", "Point"},
             {"coordinates",
              vec_json(origin ? local_to_lonlat(lp, *origin) : lp)}}}});
    }
  }
  return json{{"type", "FeatureCollection"}, {"features", features}};
}

std::string paths_csv(const std::vector<CoveragePath>& paths) {
  std::string out = "uav,idx,x,y\n";
  for (size_t i = 0; i < paths.size(); ++i) {
    if (i) out += '\n';  // blank record separates the polylines for gnuplot
    const auto& wp = paths[i].waypoints;
    for (size_t k = 0; k <= wp.size(); ++k) {  // repeat first point to close
      Vec2 p = wp[k % wp.size()];
      out += std::to_string(i);
      out += ',';
      out += std::to_string(k);
      out += ',';
      out += format_double(p.x);
      out += ',';
      out += format_double(p.y);
      out += '\n';
    }
  }
  return out;
}

const char* kPlotScript =
    "set datafile separator ','\n"
    "set terminal pngcairo size 1200,500\n"
    "set output 'plan.png'\n"
    "set multiplot layout 1,2\n"
    "set title 'Coverage paths'\n"
    "set size ratio -1\n"
    "plot 'paths.csv' using 3:4:1 skip 1 with lines lc variable notitle\n"
    "set title 'Range requirement vs time'\n"
    "set size noratio\n"
    "set xlabel 't (s)'\n"
    "set ylabel 'r(t) (m)'\n"
    "plot 'radius.csv' using 1:2 skip 1 with lines notitle\n"
    "unset multiplot\n";

struct PipelineOutput {
  json plan;
  std::vector<CoveragePath> paths;
  LaunchVector launch;
  RadiusProfile profile;
  std::vector<TrialLog> trials;
  PlanSummary summary;
};

json metrics_json(double r, double argmax_t, double e_wh, double f_o,
                  double horizon) {
  return json{{"r", r},
              {"argmax_t", argmax_t},
              {"e_wh", e_wh},
              {"f_o", f_o},
              {"horizon_T", horizon}};
}

PipelineOutput run_standard(const MissionConfig& cfg, int workers) {
  GridSpec spec = optimize_alignment(cfg.roi, cfg.footprint_side, cfg.tau,
                                     cfg.alignment_budget, workers);
  Grid grid = discretize(cfg.roi, spec);
  PlanResult result =
      outer_optimize(grid, cfg.workloads, cfg.speeds, cfg.power,
                     cfg.objective_config(), cfg.optimizer_config(workers),
                     cfg.n_darp, cfg.n_launch);

  PipelineOutput out;
  out.paths = result.paths;
  out.launch = result.launch;
  out.profile = result.profile;
  out.trials = result.trials;

  json cells = json::array();
  for (CellCoord c : grid.cells) cells.push_back({c.col, c.row});
  json uavs = json::array();
  for (size_t i = 0; i < result.paths.size(); ++i)
    uavs.push_back({{"region_id", result.paths[i].region_id},
                    {"launch", result.launch[i]},
                    {"waypoints", waypoints_json(result.paths[i].waypoints)}});
  out.plan = json{
      {"schema", kSchemaVersion},
      {"version", kVersion},
      {"mode", "standard"},
      {"config", cfg.to_json()},
      {"grid",
       {{"origin", vec_json(spec.origin)},
        {"rotation_theta", spec.rotation_theta},
        {"shift", vec_json(spec.shift)},
        {"cell_side", spec.cell_side},
        {"tau", spec.tau},
        {"cells", cells}}},
      {"seeds", result.seeds},
      {"regions", result.partition.regions},
      {"uavs", uavs},
      {"metrics", metrics_json(result.r_grid, result.argmax_t_grid,
                               result.e_wh, result.f_o, result.horizon_T)}};
  if (result.certified)
    out.plan["certified"] = {{"r", result.certified->r_max},
                             {"argmax_t", result.certified->argmax_t},
                             {"evaluations", result.certified->evaluations}};

  out.summary.r = result.r_grid;
  out.summary.e_wh = result.e_wh;
  out.summary.f_o = result.f_o;
  out.summary.horizon_T = result.horizon_T;
  out.summary.n_cells = grid.size();
  return out;
}

PipelineOutput run_formation(const MissionConfig& cfg, int workers) {
  FormationSpec fspec{cfg.n_uavs, cfg.footprint_side};
  FormationPlan fplan =
      formation_plan(cfg.roi, fspec, cfg.speeds, cfg.tau, cfg.dt);
  RadiusProfile profile = radius_profile_grid(fplan.traj, workers);
  double e_wh = joules_to_wh(loop_energy(fplan.traj, cfg.power));
  double f_o = profile.r_max + cfg.lambda * e_wh;

  PipelineOutput out;
  out.launch.assign(static_cast<size_t>(cfg.n_uavs), 0);
  for (int i = 0; i < cfg.n_uavs; ++i) {
    CoveragePath member;
    member.region_id = i;
    for (const TrajectorySample& s : fplan.traj.samples[static_cast<size_t>(i)])
      member.waypoints.push_back(s.pos);
    out.paths.push_back(std::move(member));
  }
  out.profile = profile;

  json cells = json::array();
  for (CellCoord c : fplan.grid.cells) cells.push_back({c.col, c.row});
  out.plan = json{
      {"schema", kSchemaVersion},
      {"version", kVersion},
      {"mode", "formation"},
      {"config", cfg.to_json()},
      {"grid",
       {{"origin", vec_json(fplan.grid.spec.origin)},
        {"rotation_theta", fplan.grid.spec.rotation_theta},
        {"shift", vec_json(fplan.grid.spec.shift)},
        {"cell_side", fplan.grid.spec.cell_side},
        {"tau", fplan.grid.spec.tau},
        {"cells", cells}}},
      {"formation",
       {{"offsets", fplan.offsets},
        {"reference", waypoints_json(fplan.reference.waypoints)}}},
      {"metrics", metrics_json(profile.r_max, profile.argmax_t, e_wh, f_o,
                               fplan.traj.horizon_T)}};
  if (cfg.solver == RadiusSolver::Lipschitz) {
    LipschitzResult cert =
        radius_max_lipschitz(fplan.traj, cfg.speeds.v_f, cfg.eps);
    out.plan["certified"] = {{"r", cert.r_max},
                             {"argmax_t", cert.argmax_t},
                             {"evaluations", cert.evaluations}};
  }

  out.summary.r = profile.r_max;
  out.summary.e_wh = e_wh;
  out.summary.f_o = f_o;
  out.summary.horizon_T = fplan.traj.horizon_T;
  out.summary.n_cells = fplan.grid.size();
  return out;
}

}  // namespace

PlanSummary run_plan(const MissionConfig& cfg, const std::string& out_dir,
                     int workers) {
  std::filesystem::create_directories(out_dir);
  PipelineOutput out = cfg.mode == MissionMode::Formation
                           ? run_formation(cfg, workers)
                           : run_standard(cfg, workers);
  std::filesystem::path dir(out_dir);
  write_file(dir / "plan.json", out.plan.dump(2) + "\n");
  write_file(dir / "paths.geojson",
             geojson_paths(out.paths, out.launch, cfg.origin_lonlat).dump(2) +
                 "\n");
  write_file(dir / "radius.csv", radius_profile_csv(out.profile));
  write_file(dir / "trials.csv", trial_log_csv(out.trials));
  write_file(dir / "paths.csv", paths_csv(out.paths));
  write_file(dir / "plots.gp", kPlotScript);
  out.summary.plan_path = (dir / "plan.json").string();
  return out.summary;
}

EvaluateReport evaluate_plan_file(const std::string& plan_path) {
  std::ifstream in(plan_path);
  if (!in) throw ConfigError("cannot open plan file: " + plan_path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("plan is not valid JSON: " + std::string(e.what()));
  }
  if (!j.is_object() || !j.contains("schema") || j.at("schema") != 1)
    throw ConfigError("plan: unsupported or missing schema");
  for (const char* key : {"config", "mode", "metrics"})
    if (!j.contains(key))
      throw ConfigError(std::string("plan: missing ") + key);
  MissionConfig cfg = MissionConfig::from_json(j.at("config"));
  const json& metrics = j.at("metrics");
  for (const char* key : {"r", "e_wh", "f_o"})
    if (!metrics.contains(key) || !metrics.at(key).is_number())
      throw ConfigError(std::string("plan: missing metrics.") + key);
  double stored_r = metrics.at("r").get<double>();
  double stored_e = metrics.at("e_wh").get<double>();
  double stored_f = metrics.at("f_o").get<double>();

  EvaluateReport report;
  if (j.at("mode") == "formation") {
    FormationSpec fspec{cfg.n_uavs, cfg.footprint_side};
    FormationPlan fplan =
        formation_plan(cfg.roi, fspec, cfg.speeds, cfg.tau, cfg.dt);
    report.r = radius_profile_grid(fplan.traj).r_max;
    report.e_wh = joules_to_wh(loop_energy(fplan.traj, cfg.power));
  } else {
    if (!j.contains("uavs") || !j.at("uavs").is_array() ||
        j.at("uavs").empty())
      throw ConfigError("plan: missing uavs");
    std::vector<CoveragePath> paths;
    LaunchVector launch;
    for (const auto& u : j.at("uavs")) {
      CoveragePath p;
      p.region_id = u.value("region_id", 0);
      if (!u.contains("waypoints") || !u.at("waypoints").is_array())
        throw ConfigError("plan: uav entry missing waypoints");
      for (const auto& wp : u.at("waypoints")) {
        if (!wp.is_array() || wp.size() != 2)
          throw ConfigError("plan: waypoint must be [x,y]");
        p.waypoints.push_back({wp[0].get<double>(), wp[1].get<double>()});
      }
      int k = u.value("launch", 0);
      if (k < 0 || static_cast<size_t>(k) >= p.waypoints.size())
        throw ConfigError("plan: launch index out of range");
      launch.push_back(k);
      paths.push_back(std::move(p));
    }
    MultiTrajectory traj = sample_trajectory(paths, launch, cfg.speeds, cfg.dt);
    report.r = radius_profile_grid(traj).r_max;
    report.e_wh = joules_to_wh(loop_energy(traj, cfg.power));
  }
  report.f_o = report.r + cfg.lambda * report.e_wh;

  auto check = [&](const char* name, double got, double want) {
    if (got != want) {
      report.match = false;
      report.deltas.push_back(std::string(name) + ": recomputed " +
                              format_double(got) + ", stored " +
                              format_double(want) + " (delta " +
                              format_double(got - want) + ")");
    }
  };
  check("r", report.r, stored_r);
  check("e_wh", report.e_wh, stored_e);
  check("f_o", report.f_o, stored_f);
  return report;
}

std::vector<ParetoPoint> run_pareto(const MissionConfig& cfg,
                                    const std::vector<double>& lambdas,
                                    const std::string& out_dir, int workers) {
  if (lambdas.size() < 2)
    throw ConfigError("pareto: need at least 2 lambda values");
  std::filesystem::create_directories(out_dir);
  std::vector<ParetoPoint> points;
  for (size_t i = 0; i < lambdas.size(); ++i) {
    MissionConfig sweep = cfg;
    sweep.lambda = lambdas[i];
    std::string sub =
        (std::filesystem::path(out_dir) / ("lambda_" + std::to_string(i)))
            .string();
    PlanSummary s = run_plan(sweep, sub, workers);
    points.push_back({lambdas[i], s.r, s.e_wh, s.f_o, false});
  }
  for (size_t i = 0; i < points.size(); ++i) {
    bool dominated = false;
    for (size_t k = 0; k < points.size() && !dominated; ++k) {
      if (k == i) continue;
      dominated = points[k].r <= points[i].r && points[k].e_wh <= points[i].e_wh &&
                  (points[k].r < points[i].r || points[k].e_wh < points[i].e_wh);
    }
    points[i].nondominated = !dominated;
  }
  std::string csv = "lambda,r,e,f_o,nondominated\n";
  for (const ParetoPoint& p : points) {
    csv += format_double(p.lambda);
    csv += ',';
    csv += format_double(p.r);
    csv += ',';
    csv += format_double(p.e_wh);
    csv += ',';
    csv += format_double(p.f_o);
    csv += ',';
    csv += p.nondominated ? '1' : '0';
    csv += '\n';
  }
  write_file(std::filesystem::path(out_dir) / "pareto.csv", csv);
  write_file(std::filesystem::path(out_dir) / "pareto.gp",
             "set datafile separator ','\n"
             "set terminal pngcairo size 700,500\n"
             "set output 'pareto.png'\n"
             "set xlabel 'e (Wh)'\n"
             "set ylabel 'r (m)'\n"
             "plot 'pareto.csv' using 3:2 skip 1 with points pt 7 notitle\n");
  return points;
}

}  // namespace covplan
