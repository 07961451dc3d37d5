#include "covplan/energy.hpp"

#include <algorithm>

namespace covplan {

std::vector<std::string> PowerModel::validate() const {
  std::vector<std::string> issues;
  if (!(p_hover > 0.0)) issues.push_back("power: p_hover must be positive");
  if (!(p_forward > 0.0)) issues.push_back("power: p_forward must be positive");
  if (!(p_turn > 0.0)) issues.push_back("power: p_turn must be positive");
  return issues;
}

double mission_energy(const MultiTrajectory& traj, const PowerModel& model) {
  double joules = 0.0;
  for (size_t i = 0; i < traj.uav_count(); ++i) {
    StateDurations d = state_durations(traj, i);
    joules += model.p_hover * d.hover + model.p_forward * d.forward +
              model.p_turn * d.turn;
  }
  return joules;
}

double loop_energy(const MultiTrajectory& traj, const PowerModel& model) {
  double joules = 0.0;
  for (const UavTrack& tr : traj.tracks)
    joules += model.p_forward * tr.forward_time + model.p_turn * tr.turn_time;
  return joules;
}

double energy_between(const MultiTrajectory& traj, const PowerModel& model,
                      double t0, double t1) {
  t0 = std::max(t0, 0.0);
  t1 = std::min(t1, traj.horizon_T);
  if (t1 <= t0) return 0.0;
  double joules = 0.0;
  for (const UavTrack& tr : traj.tracks) {
    for (size_t i = 0; i + 1 < tr.knot_t.size(); ++i) {
      double lo = std::max(t0, tr.knot_t[i]);
      double hi = std::min(t1, tr.knot_t[i + 1]);
      if (hi <= lo) continue;
      double p = tr.knot_state[i] == FlightState::Turn ? model.p_turn
                                                       : model.p_forward;
      joules += p * (hi - lo);
    }
    double hover_lo = std::max(t0, tr.loop_time);
    if (t1 > hover_lo) joules += model.p_hover * (t1 - hover_lo);
  }
  return joules;
}

}  // namespace covplan
