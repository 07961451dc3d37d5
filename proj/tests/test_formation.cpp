#include <doctest.h>

#include <cmath>

#include "covplan/errors.hpp"
#include "covplan/formation.hpp"
#include "test_support.hpp"

using namespace covplan;
using test::rect_poly;
using test::rect_roi;

TEST_CASE("offset formula") {
  CHECK(formation_offsets(3, 4.0) == std::vector<double>{-4.0, 0.0, 4.0});
  CHECK(formation_offsets(1, 2.0) == std::vector<double>{0.0});
  CHECK(formation_offsets(4, 2.0) ==
        std::vector<double>{-3.0, -1.0, 1.0, 3.0});
  // Symmetric about zero, spacing w.
  auto d = formation_offsets(5, 1.5);
  for (size_t i = 0; i + 1 < d.size(); ++i)
    CHECK(d[i + 1] - d[i] == doctest::Approx(1.5));
  CHECK(d[2] == 0.0);
}

TEST_CASE("spec validation") {
  CHECK(FormationSpec{3, 4.0}.validate().empty());
  CHECK_FALSE(FormationSpec{0, 4.0}.validate().empty());
  CHECK_FALSE(FormationSpec{3, 0.0}.validate().empty());
}

TEST_CASE("three-uav line formation on a rectangle") {
  Roi roi = rect_roi(48, 24);
  FormationSpec spec{3, 4.0};
  FormationPlan plan =
      formation_plan(roi, spec, SpeedProfile{5, 3, 2.0}, 1.0, 0.25);

  CHECK(plan.offsets == std::vector<double>{-4.0, 0.0, 4.0});
  CHECK(plan.grid.spec.cell_side == doctest::Approx(24.0));  // 2 N w
  CHECK(plan.grid.size() == 2);
  CHECK(plan.reference.waypoints.size() == 8);
  REQUIRE(plan.traj.uav_count() == 3);

  // Pairwise distances stay fixed through straights and corners.
  const size_t n_samples = plan.traj.samples[0].size();
  for (size_t k = 0; k < n_samples; ++k) {
    Vec2 a = plan.traj.samples[0][k].pos;
    Vec2 b = plan.traj.samples[1][k].pos;
    Vec2 c = plan.traj.samples[2][k].pos;
    CHECK(dist(a, b) == doctest::Approx(4.0).epsilon(1e-9));
    CHECK(dist(b, c) == doctest::Approx(4.0).epsilon(1e-9));
    CHECK(dist(a, c) == doctest::Approx(8.0).epsilon(1e-9));
  }

  CHECK(formation_radius(plan.traj) == doctest::Approx(4.0).epsilon(1e-6));
}

TEST_CASE("members ride the left normal of the reference") {
  Roi roi = rect_roi(48, 24);
  FormationSpec spec{3, 4.0};
  FormationPlan plan =
      formation_plan(roi, spec, SpeedProfile{5, 5, 0.0}, 1.0, 0.5);
  // With no slow zones the reference moves axis-parallel between corners;
  // mid-leg the offsets are exactly perpendicular to the motion.
  const auto& ref = plan.traj.tracks[1];
  double t = 0.15 * ref.loop_time;  // inside the first long straight
  Vec2 before = ref.position_at(t - 0.1);
  Vec2 after = ref.position_at(t + 0.1);
  Vec2 heading = after - before;
  Vec2 offset = plan.traj.tracks[2].position_at(t) - ref.position_at(t);
  CHECK(std::abs(dot(heading, offset)) < 1e-6 * norm(heading) * norm(offset));
  CHECK(norm(offset) == doctest::Approx(4.0));
}

TEST_CASE("degenerate single-uav formation follows the reference") {
  Roi roi = rect_roi(24, 12);
  SpeedProfile prof{5, 3, 2.0};
  FormationPlan plan = formation_plan(roi, FormationSpec{1, 6.0}, prof, 1.0, 0.5);
  CHECK(plan.offsets == std::vector<double>{0.0});
  REQUIRE(plan.traj.uav_count() == 1);
  UavTrack ref = build_track(plan.reference.waypoints, prof);
  for (size_t k = 0; k < plan.traj.samples[0].size(); ++k) {
    double t = std::min(k * plan.traj.dt, plan.traj.horizon_T);
    Vec2 member = plan.traj.samples[0][k].pos;
    CHECK(dist(member, ref.position_at(t)) < 1e-9);
  }
  CHECK(formation_radius(plan.traj) == 0.0);
}

TEST_CASE("formation rejects NFZs and oversized footprints") {
  Roi holed{rect_poly(0, 0, 48, 24), {rect_poly(10, 10, 14, 14)}};
  CHECK_THROWS_AS(
      formation_plan(holed, FormationSpec{3, 4.0}, SpeedProfile{}, 1.0, 0.5),
      InfeasibleError);

  Roi small = rect_roi(10, 10);  // combined cell side would be 24
  CHECK_THROWS_AS(
      formation_plan(small, FormationSpec{3, 4.0}, SpeedProfile{}, 1.0, 0.5),
      InfeasibleError);
}

TEST_CASE("formation validates arguments") {
  Roi roi = rect_roi(48, 24);
  CHECK_THROWS_AS(
      formation_plan(roi, FormationSpec{0, 4.0}, SpeedProfile{}, 1.0, 0.5),
      std::invalid_argument);
  CHECK_THROWS_AS(
      formation_plan(roi, FormationSpec{3, 4.0}, SpeedProfile{}, 1.0, 0.0),
      std::invalid_argument);
}

TEST_CASE("formation_paths wrapper matches the full plan") {
  Roi roi = rect_roi(48, 24);
  FormationSpec spec{2, 5.0};
  SpeedProfile prof{5, 3, 1.0};
  MultiTrajectory a = formation_paths(roi, spec, prof, 1.0, 0.5);
  FormationPlan plan = formation_plan(roi, spec, prof, 1.0, 0.5);
  REQUIRE(a.uav_count() == plan.traj.uav_count());
  CHECK(a.horizon_T == plan.traj.horizon_T);
  for (size_t u = 0; u < a.uav_count(); ++u)
    for (size_t k = 0; k < a.samples[u].size(); ++k)
      CHECK(a.samples[u][k].pos == plan.traj.samples[u][k].pos);
}

TEST_CASE("formation state durations sum to the horizon") {
  Roi roi = rect_roi(48, 24);
  FormationPlan plan =
      formation_plan(roi, FormationSpec{3, 4.0}, SpeedProfile{5, 3, 2.0}, 1.0,
                     0.25);
  for (size_t u = 0; u < plan.traj.uav_count(); ++u) {
    StateDurations d = state_durations(plan.traj, u);
    CHECK(d.hover + d.forward + d.turn ==
          doctest::Approx(plan.traj.horizon_T).epsilon(1e-9));
  }
}
