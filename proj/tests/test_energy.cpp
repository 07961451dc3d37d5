#include <doctest.h>

#include <numeric>
#include <random>

#include "covplan/energy.hpp"
#include "test_support.hpp"

using namespace covplan;

namespace {

// Hand-built track with exact analytic durations.
UavTrack make_track(Vec2 start, double forward_s, double turn_s) {
  UavTrack t;
  t.knot_t = {0.0};
  t.knot_pos = {start};
  t.knot_state = {};
  double now = 0.0;
  Vec2 pos = start;
  if (forward_s > 0) {
    t.knot_state.push_back(FlightState::Forward);
    now += forward_s;
    pos = pos + Vec2{forward_s, 0};
    t.knot_t.push_back(now);
    t.knot_pos.push_back(pos);
  }
  if (turn_s > 0) {
    t.knot_state.push_back(FlightState::Turn);
    now += turn_s;
    pos = pos + Vec2{0, turn_s};
    t.knot_t.push_back(now);
    t.knot_pos.push_back(pos);
  }
  t.knot_state.push_back(FlightState::Hover);
  if (t.knot_t.size() == 1) t.knot_state = {FlightState::Hover};
  t.loop_time = now;
  t.forward_time = forward_s;
  t.turn_time = turn_s;
  return t;
}

MultiTrajectory make_traj(std::vector<UavTrack> tracks, double horizon,
                          double dt = 1.0) {
  MultiTrajectory traj;
  traj.dt = dt;
  traj.horizon_T = horizon;
  traj.tracks = std::move(tracks);
  traj.samples.resize(traj.tracks.size());
  return traj;
}

}  // namespace

TEST_CASE("pure hover energy is P_h times T") {
  MultiTrajectory traj = make_traj({make_track({0, 0}, 0, 0)}, 10.0);
  PowerModel model;  // defaults 492 / 488 / 509 W
  CHECK(mission_energy(traj, model) == doctest::Approx(4920.0));
  CHECK(loop_energy(traj, model) == 0.0);
}

TEST_CASE("forward plus turn example") {
  MultiTrajectory traj = make_traj({make_track({0, 0}, 100, 20)}, 120.0);
  PowerModel model;
  double e = mission_energy(traj, model);
  CHECK(e == doctest::Approx(58980.0));
  CHECK(joules_to_wh(e) == doctest::Approx(16.383).epsilon(1e-4));
  CHECK(loop_energy(traj, model) == doctest::Approx(58980.0));
}

TEST_CASE("zero durations give zero energy") {
  MultiTrajectory traj = make_traj({make_track({0, 0}, 0, 0)}, 0.0);
  CHECK(mission_energy(traj, PowerModel{}) == 0.0);
}

TEST_CASE("fleet energy is the sum over UAVs") {
  MultiTrajectory fleet = make_traj(
      {make_track({0, 0}, 30, 5), make_track({9, 9}, 10, 20)}, 40.0);
  PowerModel model{480, 500, 510};
  double uav0 = mission_energy(make_traj({fleet.tracks[0]}, 40.0), model);
  double uav1 = mission_energy(make_traj({fleet.tracks[1]}, 40.0), model);
  CHECK(mission_energy(fleet, model) == uav0 + uav1);
}

TEST_CASE("energy is additive over time slices") {
  std::mt19937_64 rng(59);
  for (int it = 0; it < 10; ++it) {
    std::uniform_real_distribution<> u(0.0, 50.0);
    MultiTrajectory traj = make_traj(
        {make_track({0, 0}, u(rng), u(rng)), make_track({5, 5}, u(rng), u(rng))},
        0.0);
    double horizon = 0.0;
    for (const auto& t : traj.tracks) horizon = std::max(horizon, t.loop_time);
    traj.horizon_T = horizon + u(rng);  // hover tail

    PowerModel model;
    double whole = energy_between(traj, model, 0.0, traj.horizon_T);
    CHECK(whole == doctest::Approx(mission_energy(traj, model)).epsilon(1e-12));

    double cut1 = u(rng) / 50.0 * traj.horizon_T;
    double cut2 = cut1 + (traj.horizon_T - cut1) * 0.6;
    double pieces = energy_between(traj, model, 0.0, cut1) +
                    energy_between(traj, model, cut1, cut2) +
                    energy_between(traj, model, cut2, traj.horizon_T);
    CHECK(pieces == doctest::Approx(whole).epsilon(1e-9));
  }
}

TEST_CASE("energy grows with any extra state duration") {
  PowerModel model;
  MultiTrajectory base = make_traj({make_track({0, 0}, 20, 10)}, 35.0);
  double e0 = mission_energy(base, model);

  MultiTrajectory more_hover = make_traj({make_track({0, 0}, 20, 10)}, 36.0);
  CHECK(mission_energy(more_hover, model) > e0);
  MultiTrajectory more_fwd = make_traj({make_track({0, 0}, 21, 10)}, 36.0);
  CHECK(mission_energy(more_fwd, model) > e0);
  MultiTrajectory more_turn = make_traj({make_track({0, 0}, 20, 11)}, 36.0);
  CHECK(mission_energy(more_turn, model) > e0);

  // At a fixed horizon, flying forward displaces hover: the delta is exactly
  // p_forward - p_hover, negative under the default model.
  MultiTrajectory swap_fwd = make_traj({make_track({0, 0}, 21, 10)}, 35.0);
  CHECK(mission_energy(swap_fwd, model) ==
        doctest::Approx(e0 + model.p_forward - model.p_hover));
}

TEST_CASE("loop energy ignores hover padding") {
  PowerModel model;
  MultiTrajectory short_tail = make_traj({make_track({0, 0}, 20, 10)}, 30.0);
  MultiTrajectory long_tail = make_traj({make_track({0, 0}, 20, 10)}, 90.0);
  CHECK(loop_energy(short_tail, model) == loop_energy(long_tail, model));
  CHECK(mission_energy(long_tail, model) > mission_energy(short_tail, model));
}

TEST_CASE("energy_between clamps its window") {
  PowerModel model;
  MultiTrajectory traj = make_traj({make_track({0, 0}, 10, 0)}, 10.0);
  CHECK(energy_between(traj, model, -5.0, 20.0) ==
        doctest::Approx(mission_energy(traj, model)));
  CHECK(energy_between(traj, model, 4.0, 4.0) == 0.0);
  CHECK(energy_between(traj, model, 8.0, 2.0) == 0.0);
}

TEST_CASE("power model validation") {
  CHECK(PowerModel{}.validate().empty());
  CHECK_FALSE(PowerModel{0, 488, 509}.validate().empty());
  CHECK_FALSE(PowerModel{492, -1, 509}.validate().empty());
  CHECK_FALSE(PowerModel{492, 488, 0}.validate().empty());
}

TEST_CASE("wh conversion") {
  CHECK(joules_to_wh(3600.0) == 1.0);
  CHECK(joules_to_wh(0.0) == 0.0);
}
