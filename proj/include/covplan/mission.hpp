#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "covplan/energy.hpp"
#include "covplan/objective.hpp"
#include "covplan/optimizer.hpp"
#include "covplan/partition.hpp"

namespace covplan {

enum class MissionMode { Standard, Formation };

// Equirectangular local tangent plane; origin is (lon, lat) in degrees.
Vec2 lonlat_to_local(Vec2 lonlat, Vec2 origin_lonlat);
Vec2 local_to_lonlat(Vec2 xy, Vec2 origin_lonlat);

struct MissionConfig {
  Roi roi;
  std::optional<Vec2> origin_lonlat;  // set when the ROI came in as lon/lat
  int n_uavs = 1;
  WorkloadVector workloads;  // defaults to uniform over n_uavs
  double footprint_side = 1.0;
  PowerModel power;
  SpeedProfile speeds;
  double lambda = 1.0;
  double tau = 1.0;
  double dt = 1.0;
  double eps = 0.1;
  size_t n_darp = 3000;
  size_t n_launch = 1000;
  uint64_t rng_seed = 0;
  MissionMode mode = MissionMode::Standard;
  RadiusSolver solver = RadiusSolver::Grid;
  int alignment_budget = 1;
  TpeOptions tpe;
  bool reset_ledger_per_outer = false;

  // Throws ConfigError listing every problem found.
  static MissionConfig from_json(const nlohmann::json& j);
  static MissionConfig load(const std::string& path);
  nlohmann::json to_json() const;

  ObjectiveConfig objective_config() const;
  OptimizerConfig optimizer_config(int workers) const;
};

}  // namespace covplan
