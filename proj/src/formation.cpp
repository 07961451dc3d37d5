#include "covplan/formation.hpp"

#include <algorithm>
#include <cmath>

namespace covplan {

namespace {

constexpr double kPi = 3.141592653589793;

double wrap_angle(double a) {
  while (a > kPi) a -= 2 * kPi;
  while (a <= -kPi) a += 2 * kPi;
  return a;
}

// One rotation window per loop vertex: the reference heading turns from
// heading_in to heading_in + delta across [t_begin, t_end].
struct TurnWindow {
  double t_begin;
  double t_end;
  double heading_in;
  double delta;
};

}  // namespace

std::vector<std::string> FormationSpec::validate() const {
  std::vector<std::string> issues;
  if (n < 1) issues.push_back("formation: n must be >= 1");
  if (!(w > 0.0)) issues.push_back("formation: w must be positive");
  return issues;
}

std::vector<double> formation_offsets(int n, double w) {
  std::vector<double> d(static_cast<size_t>(n));
  for (int i = 1; i <= n; ++i)
    d[static_cast<size_t>(i - 1)] = (2.0 * i - n - 1) * w / 2.0;
  return d;
}

FormationPlan formation_plan(const Roi& roi, const FormationSpec& spec,
                             const SpeedProfile& profile, double tau,
                             double dt) {
  {
    auto issues = spec.validate();
    if (!issues.empty()) throw std::invalid_argument(issues.front());
  }
  if (!(dt > 0.0)) throw std::invalid_argument("formation_plan: dt <= 0");
  if (!roi.nfzs.empty())
    throw InfeasibleError("formation mode requires an ROI without no-fly zones");

  FormationPlan plan;
  const double combined_side = spec.n * spec.w;
  plan.grid = discretize(roi, make_grid_spec(roi, combined_side, tau));
  std::vector<int> all_cells(plan.grid.size());
  for (size_t i = 0; i < all_cells.size(); ++i)
    all_cells[i] = static_cast<int>(i);
  plan.reference = stc_loop(all_cells, plan.grid);
  plan.offsets = formation_offsets(spec.n, spec.w);

  const std::vector<Vec2>& loop = plan.reference.waypoints;
  const size_t m = loop.size();
  UavTrack ref = build_track(loop, profile);

  // Per-leg slow zones, same split rule as the track builder, so windows and
  // turn segments line up.
  std::vector<double> heading(m), leg_len(m), z_start(m), z_end(m);
  std::vector<bool> corner(m);
  for (size_t j = 0; j < m; ++j) {
    Vec2 d = loop[(j + 1) % m] - loop[j];
    leg_len[j] = norm(d);
    heading[j] = std::atan2(d.y, d.x);
  }
  for (size_t j = 0; j < m; ++j) {
    Vec2 in = loop[j] - loop[(j + m - 1) % m];
    Vec2 out = loop[(j + 1) % m] - loop[j];
    corner[j] = std::fabs(cross(in, out)) > 1e-9 * norm(in) * norm(out) ||
                dot(in, out) < 0.0;
  }
  for (size_t j = 0; j < m; ++j) {
    z_start[j] = corner[j] ? std::min(profile.corner_radius_c, leg_len[j]) : 0.0;
    z_end[j] = corner[(j + 1) % m]
                   ? std::min(profile.corner_radius_c, leg_len[j])
                   : 0.0;
    if (z_start[j] + z_end[j] > leg_len[j])
      z_start[j] = z_end[j] = leg_len[j] / 2.0;
  }

  // Vertex j sits between leg j-1 and leg j at cumulative time t_v.
  std::vector<TurnWindow> windows;
  double t_cursor = 0.0;
  for (size_t j = 0; j < m; ++j) {
    size_t prev = (j + m - 1) % m;
    if (corner[j]) {
      double z_in = z_end[prev], z_out = z_start[j];
      windows.push_back({t_cursor - z_in / profile.v_t,
                         t_cursor + z_out / profile.v_t, heading[prev],
                         wrap_angle(heading[j] - heading[prev])});
    }
    double fwd = leg_len[j] - z_start[j] - z_end[j];
    t_cursor += z_start[j] / profile.v_t + fwd / profile.v_f +
                z_end[j] / profile.v_t;
  }
  const double loop_time = ref.loop_time;

  auto heading_at = [&](double t) {
    for (const TurnWindow& win : windows) {
      for (double shift : {0.0, -loop_time, loop_time}) {
        double q = t + shift;
        if (q >= win.t_begin && q <= win.t_end) {
          double span = win.t_end - win.t_begin;
          double a = span > 0.0 ? (q - win.t_begin) / span : 1.0;
          return win.heading_in + win.delta * a;
        }
      }
    }
    // Outside all windows: heading of the leg the reference is on.
    double t_leg = 0.0;
    for (size_t j = 0; j < m; ++j) {
      double fwd = leg_len[j] - z_start[j] - z_end[j];
      double dur = z_start[j] / profile.v_t + fwd / profile.v_f +
                   z_end[j] / profile.v_t;
      if (t < t_leg + dur || j + 1 == m) return heading[j];
      t_leg += dur;
    }
    return heading[0];
  };

  MultiTrajectory traj;
  traj.dt = dt;
  traj.horizon_T = loop_time;
  size_t n_steps = static_cast<size_t>(std::ceil(loop_time / dt - 1e-9));
  traj.tracks.assign(static_cast<size_t>(spec.n), {});
  traj.samples.assign(static_cast<size_t>(spec.n), {});
  for (int i = 0; i < spec.n; ++i) {
    UavTrack& tr = traj.tracks[static_cast<size_t>(i)];
    tr.forward_time = ref.forward_time;
    tr.turn_time = ref.turn_time;
    tr.loop_time = ref.loop_time;
    auto& row = traj.samples[static_cast<size_t>(i)];
    row.reserve(n_steps + 1);
    for (size_t k = 0; k <= n_steps; ++k) {
      double t = std::min(static_cast<double>(k) * dt, loop_time);
      double phi = heading_at(t);
      Vec2 n_left{-std::sin(phi), std::cos(phi)};
      Vec2 pos = ref.position_at(t) + n_left * plan.offsets[static_cast<size_t>(i)];
      FlightState st = ref.state_at(t);
      tr.knot_t.push_back(t);
      tr.knot_pos.push_back(pos);
      tr.knot_state.push_back(st);
      row.push_back({pos, st});
    }
  }
  plan.traj = std::move(traj);
  return plan;
}

MultiTrajectory formation_paths(const Roi& roi, const FormationSpec& spec,
                                const SpeedProfile& profile, double tau,
                                double dt) {
  return formation_plan(roi, spec, profile, tau, dt).traj;
}

double formation_radius(const MultiTrajectory& traj) {
  return radius_profile_grid(traj).r_max;
}

}  // namespace covplan
