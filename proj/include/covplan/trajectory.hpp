#pragma once

#include <string>
#include <vector>

#include "covplan/stc_path.hpp"

namespace covplan {

enum class FlightState { Forward, Turn, Hover };

const char* flight_state_name(FlightState s);

struct SpeedProfile {
  double v_f = 5.0;             // forward speed, m/s
  double v_t = 3.0;             // turn speed, m/s
  double corner_radius_c = 2.0; // slow-zone length on each leg of a corner, m

  std::vector<std::string> validate(double side_w) const;
};

// Piecewise-linear motion: knot i..i+1 is a constant-state segment traversed
// at constant speed. Positions between knots interpolate linearly in time, so
// queries at arbitrary t are exact. After loop_time the UAV hovers at the
// launch point.
struct UavTrack {
  std::vector<double> knot_t;
  std::vector<Vec2> knot_pos;
  std::vector<FlightState> knot_state;  // state of segment starting at knot i
  double loop_time = 0.0;               // == forward_time + turn_time
  double forward_time = 0.0;
  double turn_time = 0.0;

  Vec2 position_at(double t) const;
  FlightState state_at(double t) const;  // right-continuous; hover past loop
};

// Builds the track for one closed loop starting (and ending) at loop[0].
// Corners are heading changes of the cyclic waypoint sequence, so the zone
// layout does not depend on which waypoint the loop starts from.
UavTrack build_track(const std::vector<Vec2>& loop, const SpeedProfile& profile);

struct TrajectorySample {
  Vec2 pos;
  FlightState state;
};

struct StateDurations {
  double hover = 0.0;
  double forward = 0.0;
  double turn = 0.0;
};

struct MultiTrajectory {
  double dt = 1.0;
  double horizon_T = 0.0;  // max loop completion time over UAVs
  std::vector<UavTrack> tracks;
  std::vector<std::vector<TrajectorySample>> samples;  // ceil(T/dt)+1 each

  size_t uav_count() const { return tracks.size(); }
  std::vector<Vec2> positions_at(double t) const;
};

// Rotates each loop to start at its launch waypoint, then samples all UAVs on
// the common horizon at step dt.
MultiTrajectory sample_trajectory(const std::vector<CoveragePath>& paths,
                                  const LaunchVector& launch,
                                  const SpeedProfile& profile, double dt);

// Analytic per-state durations; hover + forward + turn = horizon_T.
StateDurations state_durations(const MultiTrajectory& traj, size_t uav);

// CSV rows `t,uav,x,y,state`, header included, deterministic formatting.
std::string trajectory_csv(const MultiTrajectory& traj);

}  // namespace covplan
