#include "covplan/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "covplan/format_util.hpp"

namespace covplan {

namespace {

constexpr double kCornerEps = 1e-9;

bool is_corner(Vec2 prev, Vec2 at, Vec2 next) {
  Vec2 in = at - prev;
  Vec2 out = next - at;
  return std::fabs(cross(in, out)) > kCornerEps * norm(in) * norm(out) ||
         dot(in, out) < 0.0;
}

}  // namespace

const char* flight_state_name(FlightState s) {
  switch (s) {
    case FlightState::Forward: return "forward";
    case FlightState::Turn: return "turn";
    case FlightState::Hover: return "hover";
  }
  return "?";
}

std::vector<std::string> SpeedProfile::validate(double side_w) const {
  std::vector<std::string> issues;
  if (!(v_t > 0.0)) issues.push_back("speeds: v_t must be positive");
  if (!(v_f >= v_t)) issues.push_back("speeds: v_f must be >= v_t");
  if (corner_radius_c < 0.0)
    issues.push_back("speeds: corner_radius_c must be >= 0");
  if (side_w > 0.0 && corner_radius_c > side_w / 2.0 + 1e-12)
    issues.push_back("speeds: corner_radius_c must be <= side_w/2");
  return issues;
}

Vec2 UavTrack::position_at(double t) const {
  if (knot_pos.empty()) return {};
  if (t <= knot_t.front()) return knot_pos.front();
  if (t >= loop_time) return knot_pos.back();
  auto it = std::upper_bound(knot_t.begin(), knot_t.end(), t);
  size_t hi = static_cast<size_t>(it - knot_t.begin());
  size_t lo = hi - 1;
  if (hi >= knot_t.size()) return knot_pos.back();
  double span = knot_t[hi] - knot_t[lo];
  if (span <= 0.0) return knot_pos[hi];
  double a = (t - knot_t[lo]) / span;
  return knot_pos[lo] + (knot_pos[hi] - knot_pos[lo]) * a;
}

FlightState UavTrack::state_at(double t) const {
  if (knot_state.empty() || t >= loop_time) return FlightState::Hover;
  if (t <= knot_t.front()) return knot_state.front();
  // upper_bound gives the first knot strictly past t, so an exact knot hit
  // lands on the segment starting there: right-continuous.
  auto it = std::upper_bound(knot_t.begin(), knot_t.end(), t);
  size_t hi = static_cast<size_t>(it - knot_t.begin());
  if (hi >= knot_state.size()) return knot_state.back();
  return knot_state[hi - 1];
}

UavTrack build_track(const std::vector<Vec2>& loop, const SpeedProfile& profile) {
  const size_t m = loop.size();
  if (m == 0) throw std::invalid_argument("build_track: empty loop");
  UavTrack track;
  if (m == 1) {
    track.knot_t = {0.0};
    track.knot_pos = {loop[0]};
    track.knot_state = {FlightState::Hover};
    return track;
  }

  std::vector<bool> corner(m);
  for (size_t j = 0; j < m; ++j)
    corner[j] = is_corner(loop[(j + m - 1) % m], loop[j], loop[(j + 1) % m]);

  track.knot_t.push_back(0.0);
  track.knot_pos.push_back(loop[0]);
  double t = 0.0;
  double forward_len = 0.0, turn_len = 0.0;
  for (size_t j = 0; j < m; ++j) {
    Vec2 a = loop[j];
    Vec2 b = loop[(j + 1) % m];
    double len = dist(a, b);
    if (len <= 0.0) continue;
    double z_start = corner[j] ? std::min(profile.corner_radius_c, len) : 0.0;
    double z_end =
        corner[(j + 1) % m] ? std::min(profile.corner_radius_c, len) : 0.0;
    if (z_start + z_end > len) z_start = z_end = len / 2.0;
    struct Piece {
      double len;
      FlightState state;
    };
    const Piece pieces[3] = {{z_start, FlightState::Turn},
                             {len - z_start - z_end, FlightState::Forward},
                             {z_end, FlightState::Turn}};
    double covered = 0.0;
    for (const Piece& p : pieces) {
      if (p.len <= 0.0) continue;
      double speed = p.state == FlightState::Turn ? profile.v_t : profile.v_f;
      (p.state == FlightState::Turn ? turn_len : forward_len) += p.len;
      covered += p.len;
      t += p.len / speed;
      track.knot_state.push_back(p.state);
      track.knot_t.push_back(t);
      track.knot_pos.push_back(a + (b - a) * (covered / len));
    }
  }
  track.forward_time = forward_len / profile.v_f;
  track.turn_time = turn_len / profile.v_t;
  track.loop_time = track.forward_time + track.turn_time;
  // Pin the final knot to the analytic loop time so closure is exact.
  track.knot_t.back() = track.loop_time;
  track.knot_pos.back() = loop[0];
  track.knot_state.push_back(FlightState::Hover);
  return track;
}

std::vector<Vec2> MultiTrajectory::positions_at(double t) const {
  std::vector<Vec2> out;
  out.reserve(tracks.size());
  for (const UavTrack& tr : tracks) out.push_back(tr.position_at(t));
  return out;
}

MultiTrajectory sample_trajectory(const std::vector<CoveragePath>& paths,
                                  const LaunchVector& launch,
                                  const SpeedProfile& profile, double dt) {
  if (paths.size() != launch.size())
    throw std::invalid_argument("sample_trajectory: paths/launch size mismatch");
  if (paths.empty()) throw std::invalid_argument("sample_trajectory: no paths");
  if (!(dt > 0.0)) throw std::invalid_argument("sample_trajectory: dt <= 0");
  MultiTrajectory traj;
  traj.dt = dt;
  traj.tracks.reserve(paths.size());
  for (size_t i = 0; i < paths.size(); ++i) {
    if (paths[i].waypoints.empty())
      throw std::invalid_argument("sample_trajectory: empty path");
    CoveragePath rotated = rotate_start(paths[i], launch[i]);
    traj.tracks.push_back(build_track(rotated.waypoints, profile));
    traj.horizon_T = std::max(traj.horizon_T, traj.tracks.back().loop_time);
  }
  size_t n_steps =
      static_cast<size_t>(std::ceil(traj.horizon_T / dt - 1e-9));
  traj.samples.assign(paths.size(), {});
  for (size_t i = 0; i < paths.size(); ++i) {
    auto& row = traj.samples[i];
    row.reserve(n_steps + 1);
    for (size_t k = 0; k <= n_steps; ++k) {
      double t = std::min(static_cast<double>(k) * dt, traj.horizon_T);
      row.push_back({traj.tracks[i].position_at(t), traj.tracks[i].state_at(t)});
    }
  }
  return traj;
}

StateDurations state_durations(const MultiTrajectory& traj, size_t uav) {
  if (uav >= traj.tracks.size())
    throw std::invalid_argument("state_durations: uav index out of range");
  const UavTrack& tr = traj.tracks[uav];
  StateDurations d;
  d.forward = tr.forward_time;
  d.turn = tr.turn_time;
  d.hover = traj.horizon_T - tr.loop_time;
  return d;
}

std::string trajectory_csv(const MultiTrajectory& traj) {
  std::string out = "t,uav,x,y,state\n";
  for (size_t i = 0; i < traj.samples.size(); ++i) {
    for (size_t k = 0; k < traj.samples[i].size(); ++k) {
      double t = std::min(static_cast<double>(k) * traj.dt, traj.horizon_T);
      const TrajectorySample& s = traj.samples[i][k];
      out += format_double(t);
      out += ',';
      out += std::to_string(i);
      out += ',';
      out += format_double(s.pos.x);
      out += ',';
      out += format_double(s.pos.y);
      out += ',';
      out += flight_state_name(s.state);
      out += '\n';
    }
  }
  return out;
}

}  // namespace covplan
