#include "covplan/mission.hpp"

#include <cmath>
#include <fstream>

namespace covplan {

namespace {

constexpr double kEarthRadius = 6378137.0;  // m, WGS84 equatorial
constexpr double kDegToRad = 3.141592653589793 / 180.0;

using nlohmann::json;

Polygon parse_ring(const json& arr, const std::string& what,
                   std::vector<std::string>& issues) {
  Polygon ring;
  if (!arr.is_array()) {
    issues.push_back(what + " must be an array of [x,y] pairs");
    return ring;
  }
  for (const auto& v : arr) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() ||
        !v[1].is_number()) {
      issues.push_back(what + " must contain [x,y] number pairs");
      return {};
    }
    ring.push_back({v[0].get<double>(), v[1].get<double>()});
  }
  return ring;
}

json ring_to_json(const Polygon& ring) {
  json arr = json::array();
  for (const Vec2& v : ring) arr.push_back({v.x, v.y});
  return arr;
}

template <typename T>
void read_number(const json& j, const char* key, T& out, bool integer,
                 std::vector<std::string>& issues) {
  if (!j.contains(key)) return;
  const json& v = j.at(key);
  if (integer ? !v.is_number_integer() : !v.is_number()) {
    issues.push_back(std::string(key) + " must be a " +
                     (integer ? "whole " : "") + "number");
    return;
  }
  out = v.get<T>();
}

}  // namespace

Vec2 lonlat_to_local(Vec2 lonlat, Vec2 origin_lonlat) {
  double lat0 = origin_lonlat.y * kDegToRad;
  return {(lonlat.x - origin_lonlat.x) * kDegToRad * kEarthRadius *
              std::cos(lat0),
          (lonlat.y - origin_lonlat.y) * kDegToRad * kEarthRadius};
}

Vec2 local_to_lonlat(Vec2 xy, Vec2 origin_lonlat) {
  double lat0 = origin_lonlat.y * kDegToRad;
  return {origin_lonlat.x + xy.x / (kEarthRadius * std::cos(lat0)) / kDegToRad,
          origin_lonlat.y + xy.y / kEarthRadius / kDegToRad};
}

MissionConfig MissionConfig::from_json(const json& j) {
  std::vector<std::string> issues;
  MissionConfig cfg;
  if (!j.is_object()) throw ConfigError("config root must be a JSON object");
  if (j.contains("schema") && j.at("schema") != 1)
    issues.push_back("schema: unsupported version");

  if (!j.contains("roi") || !j.at("roi").is_object()) {
    issues.push_back("roi: required object missing");
  } else {
    const json& roi = j.at("roi");
    if (roi.contains("origin_lonlat")) {
      Polygon o = parse_ring(json::array({roi.at("origin_lonlat")}),
                             "roi.origin_lonlat", issues);
      if (o.size() == 1) cfg.origin_lonlat = o[0];
    }
    Polygon outer;
    if (roi.contains("outer"))
      outer = parse_ring(roi.at("outer"), "roi.outer", issues);
    else
      issues.push_back("roi.outer: required");
    std::vector<Polygon> nfzs;
    if (roi.contains("nfzs")) {
      if (!roi.at("nfzs").is_array()) {
        issues.push_back("roi.nfzs must be an array of rings");
      } else {
        size_t idx = 0;
        for (const auto& ring : roi.at("nfzs"))
          nfzs.push_back(parse_ring(
              ring, "roi.nfzs[" + std::to_string(idx++) + "]", issues));
      }
    }
    if (cfg.origin_lonlat) {
      for (Vec2& v : outer) v = lonlat_to_local(v, *cfg.origin_lonlat);
      for (Polygon& nfz : nfzs)
        for (Vec2& v : nfz) v = lonlat_to_local(v, *cfg.origin_lonlat);
    }
    cfg.roi.outer = std::move(outer);
    cfg.roi.nfzs = std::move(nfzs);
  }

  read_number(j, "n_uavs", cfg.n_uavs, true, issues);
  read_number(j, "footprint_side", cfg.footprint_side, false, issues);
  if (j.contains("footprint_area") && !j.contains("footprint_side")) {
    double area = 0.0;
    read_number(j, "footprint_area", area, false, issues);
    if (area > 0.0) cfg.footprint_side = std::sqrt(area);
    else issues.push_back("footprint_area must be positive");
  }
  read_number(j, "lambda", cfg.lambda, false, issues);
  read_number(j, "tau", cfg.tau, false, issues);
  read_number(j, "dt", cfg.dt, false, issues);
  read_number(j, "eps", cfg.eps, false, issues);
  read_number(j, "n_darp", cfg.n_darp, true, issues);
  read_number(j, "n_launch", cfg.n_launch, true, issues);
  read_number(j, "rng_seed", cfg.rng_seed, true, issues);
  read_number(j, "alignment_budget", cfg.alignment_budget, true, issues);

  if (j.contains("workloads")) {
    if (!j.at("workloads").is_array()) {
      issues.push_back("workloads must be an array of numbers");
    } else {
      for (const auto& v : j.at("workloads")) {
        if (!v.is_number()) {
          issues.push_back("workloads must be an array of numbers");
          break;
        }
        cfg.workloads.push_back(v.get<double>());
      }
    }
  }
  if (j.contains("power") && j.at("power").is_object()) {
    const json& p = j.at("power");
    read_number(p, "hover", cfg.power.p_hover, false, issues);
    read_number(p, "forward", cfg.power.p_forward, false, issues);
    read_number(p, "turn", cfg.power.p_turn, false, issues);
  }
  if (j.contains("speeds") && j.at("speeds").is_object()) {
    const json& s = j.at("speeds");
    read_number(s, "v_f", cfg.speeds.v_f, false, issues);
    read_number(s, "v_t", cfg.speeds.v_t, false, issues);
    read_number(s, "corner_radius_c", cfg.speeds.corner_radius_c, false,
                issues);
  }
  if (j.contains("tpe") && j.at("tpe").is_object()) {
    const json& t = j.at("tpe");
    read_number(t, "gamma", cfg.tpe.gamma, false, issues);
    read_number(t, "n_startup", cfg.tpe.n_startup, true, issues);
    read_number(t, "n_candidates", cfg.tpe.n_candidates, true, issues);
  }
  if (j.contains("reset_ledger_per_outer")) {
    if (j.at("reset_ledger_per_outer").is_boolean())
      cfg.reset_ledger_per_outer = j.at("reset_ledger_per_outer").get<bool>();
    else
      issues.push_back("reset_ledger_per_outer must be a boolean");
  }
  if (j.contains("mode")) {
    std::string mode = j.at("mode").is_string() ? j.at("mode").get<std::string>()
                                                : std::string();
    if (mode == "standard") cfg.mode = MissionMode::Standard;
    else if (mode == "formation") cfg.mode = MissionMode::Formation;
    else issues.push_back("mode must be \"standard\" or \"formation\"");
  }
  if (j.contains("solver")) {
    std::string s = j.at("solver").is_string() ? j.at("solver").get<std::string>()
                                               : std::string();
    if (s == "grid") cfg.solver = RadiusSolver::Grid;
    else if (s == "lipschitz") cfg.solver = RadiusSolver::Lipschitz;
    else issues.push_back("solver must be \"grid\" or \"lipschitz\"");
  }

  // Range checks, all collected before throwing.
  if (cfg.n_uavs < 1) issues.push_back("n_uavs must be >= 1");
  if (cfg.workloads.empty() && cfg.n_uavs >= 1)
    cfg.workloads.assign(static_cast<size_t>(cfg.n_uavs),
                         1.0 / static_cast<double>(cfg.n_uavs));
  if (cfg.n_uavs >= 1 &&
      cfg.workloads.size() != static_cast<size_t>(cfg.n_uavs))
    issues.push_back("workloads length must equal n_uavs");
  for (const std::string& s : validate_workloads(cfg.workloads))
    issues.push_back(s);
  if (!(cfg.footprint_side > 0.0))
    issues.push_back("footprint_side must be positive");
  if (!(cfg.tau > 0.0 && cfg.tau <= 1.0))
    issues.push_back("tau must be in (0, 1]");
  if (cfg.n_darp < 1) issues.push_back("n_darp must be >= 1");
  if (cfg.n_launch < 1) issues.push_back("n_launch must be >= 1");
  if (cfg.alignment_budget < 1)
    issues.push_back("alignment_budget must be >= 1");
  if (!(cfg.tpe.gamma > 0.0 && cfg.tpe.gamma < 1.0))
    issues.push_back("tpe.gamma must be in (0, 1)");
  if (cfg.tpe.n_startup < 0) issues.push_back("tpe.n_startup must be >= 0");
  if (cfg.tpe.n_candidates < 1)
    issues.push_back("tpe.n_candidates must be >= 1");
  for (const std::string& s : cfg.power.validate()) issues.push_back(s);
  double zone_side = cfg.mode == MissionMode::Formation
                         ? cfg.footprint_side * std::max(cfg.n_uavs, 1)
                         : cfg.footprint_side;
  for (const std::string& s : cfg.speeds.validate(zone_side))
    issues.push_back(s);
  for (const std::string& s : cfg.objective_config().validate())
    issues.push_back(s);
  for (const std::string& s : cfg.roi.validate()) issues.push_back(s);

  if (!issues.empty()) throw ConfigError(std::move(issues));
  return cfg;
}

MissionConfig MissionConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("config is not valid JSON: " + std::string(e.what()));
  }
  return from_json(j);
}

nlohmann::json MissionConfig::to_json() const {
  json j;
  j["schema"] = 1;
  json roi;
  if (origin_lonlat) {
    roi["origin_lonlat"] = {origin_lonlat->x, origin_lonlat->y};
    Polygon outer;
    for (const Vec2& v : this->roi.outer)
      outer.push_back(local_to_lonlat(v, *origin_lonlat));
    roi["outer"] = ring_to_json(outer);
    json nfzs = json::array();
    for (const Polygon& nfz : this->roi.nfzs) {
      Polygon ring;
      for (const Vec2& v : nfz) ring.push_back(local_to_lonlat(v, *origin_lonlat));
      nfzs.push_back(ring_to_json(ring));
    }
    roi["nfzs"] = nfzs;
  } else {
    roi["outer"] = ring_to_json(this->roi.outer);
    json nfzs = json::array();
    for (const Polygon& nfz : this->roi.nfzs) nfzs.push_back(ring_to_json(nfz));
    roi["nfzs"] = nfzs;
  }
  j["roi"] = roi;
  j["n_uavs"] = n_uavs;
  j["workloads"] = workloads;
  j["footprint_side"] = footprint_side;
  j["power"] = {{"hover", power.p_hover},
                {"forward", power.p_forward},
                {"turn", power.p_turn}};
  j["speeds"] = {{"v_f", speeds.v_f},
                 {"v_t", speeds.v_t},
                 {"corner_radius_c", speeds.corner_radius_c}};
  j["lambda"] = lambda;
  j["tau"] = tau;
  j["dt"] = dt;
  j["eps"] = eps;
  j["n_darp"] = n_darp;
  j["n_launch"] = n_launch;
  j["rng_seed"] = rng_seed;
  j["mode"] = mode == MissionMode::Formation ? "formation" : "standard";
  j["solver"] = solver == RadiusSolver::Lipschitz ? "lipschitz" : "grid";
  j["alignment_budget"] = alignment_budget;
  j["tpe"] = {{"gamma", tpe.gamma},
              {"n_startup", tpe.n_startup},
              {"n_candidates", tpe.n_candidates}};
  j["reset_ledger_per_outer"] = reset_ledger_per_outer;
  return j;
}

ObjectiveConfig MissionConfig::objective_config() const {
  ObjectiveConfig cfg;
  cfg.lambda = lambda;
  cfg.dt = dt;
  cfg.eps = eps;
  cfg.solver = solver;
  return cfg;
}

OptimizerConfig MissionConfig::optimizer_config(int workers) const {
  OptimizerConfig cfg;
  cfg.outer_tpe = tpe;
  cfg.inner_tpe = tpe;
  cfg.rng_seed = rng_seed;
  cfg.reset_ledger_per_outer = reset_ledger_per_outer;
  cfg.workers = workers;
  return cfg;
}

}  // namespace covplan
