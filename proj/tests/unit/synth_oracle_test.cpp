#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "fixtures.hpp"

namespace stqa {
namespace {

const oracle::Truth& find(const oracle::OracleScene& o, TaskKind task, std::size_t i, std::size_t j) {
  for (const auto& t : o.truths) {
    if (t.task == task && t.i == i && t.j == j) return t;
  }
  throw std::runtime_error("truth not found");
}

/// Every truth entry against the solver.
void expect_solver_agrees(const oracle::OracleScene& o) {
  const auto& s = o.scene;
  const double tau = o.thresholds.tau;
  const double mm = o.thresholds.min_motion;
  for (const auto& t : o.truths) {
    SCOPED_TRACE(std::string(to_string(t.task)) + " " + std::to_string(t.i) + "-" + std::to_string(t.j));
    switch (t.task) {
      case TaskKind::kCamAbsDis: EXPECT_NEAR(camera_absolute_distance(s, t.i, t.j), t.value, 1e-6); break;
      case TaskKind::kCamRelDir: {
        const auto c = camera_relative_direction(s, t.i, t.j, mm);
        EXPECT_EQ(to_string(c.label), t.label);
        EXPECT_LT((c.vector - t.center_vector).norm(), 1e-6);
        const auto r = camera_relative_direction(s, t.i, t.j, mm, DirectionMode::kRawTranslation);
        EXPECT_EQ(to_string(r.label), t.raw_label);
        EXPECT_LT((r.vector - t.raw_vector).norm(), 1e-6);
        break;
      }
      case TaskKind::kObjAbsDis: EXPECT_NEAR(object_absolute_distance(s, 0, t.i, t.j), t.value, 1e-6); break;
      case TaskKind::kObjCamAbsDis:
        EXPECT_NEAR(object_camera_absolute_distance(s, 0, t.i, t.j), t.value, 1e-6);
        break;
      case TaskKind::kObjCamRelDis: {
        const auto r = object_camera_relative_distance(s, 0, t.i, t.j, tau);
        EXPECT_NEAR(r.delta, t.value, 1e-6);
        EXPECT_EQ(to_string(r.label), t.label);
        break;
      }
      case TaskKind::kObjCamRelDirLateral: {
        const auto r = object_camera_relative_direction(s, 0, t.i, t.j, tau);
        EXPECT_NEAR(r.dx, t.value, 1e-6);
        EXPECT_EQ(to_string(r.lateral), t.label);
        break;
      }
      case TaskKind::kObjCamRelDirLongitudinal: {
        const auto r = object_camera_relative_direction(s, 0, t.i, t.j, tau);
        EXPECT_NEAR(r.dz, t.value, 1e-6);
        EXPECT_EQ(to_string(r.longitudinal), t.label);
        break;
      }
    }
  }
}

TEST(Dolly, ClosedForm) {
  const auto o = oracle::make_dolly_scene();
  EXPECT_NEAR(find(o, TaskKind::kCamAbsDis, 0, 10).value, 5.0, 1e-12);
  for (const auto& t : o.truths) {
    if (t.task == TaskKind::kObjAbsDis) {
      EXPECT_EQ(t.value, 0.0);
    }
  }
}

TEST(Dolly, ZeroSpeed) {
  oracle::DollyParams p;
  p.speed = 0;
  const auto o = oracle::make_dolly_scene(p);
  for (const auto& t : o.truths) {
    if (t.task == TaskKind::kCamAbsDis) {
      EXPECT_EQ(t.value, 0.0);
    }
    if (t.task == TaskKind::kCamRelDir) {
      EXPECT_EQ(t.label, "none");
    }
    if (t.task == TaskKind::kObjCamRelDis) {
      EXPECT_EQ(t.label, "not_moving");
    }
  }
  expect_solver_agrees(o);
}

TEST(Dolly, SolverAgrees) {
  oracle::DollyParams p;
  p.axis = Vec3(0.3, -0.2, 1);
  p.camera_start = Vec3(1, 0.5, -4);
  expect_solver_agrees(oracle::make_dolly_scene(p));
  expect_solver_agrees(oracle::make_dolly_scene());
}

TEST(Dolly, InvalidParams) {
  oracle::DollyParams p;
  p.frames = 1;
  EXPECT_THROW(oracle::make_dolly_scene(p), Error);
  p = {};
  p.speed = -1;
  EXPECT_THROW(oracle::make_dolly_scene(p), Error);
}

TEST(Linear, ClosedForm) {
  const auto o = oracle::make_linear_object_scene();
  EXPECT_NEAR(find(o, TaskKind::kObjAbsDis, 0, 5).value, 1.0, 1e-12);
  EXPECT_EQ(find(o, TaskKind::kObjCamRelDirLateral, 0, 5).label, "right");
  oracle::LinearObjectParams p;
  p.velocity = Vec3(0, 0, -0.3);
  EXPECT_EQ(find(oracle::make_linear_object_scene(p), TaskKind::kObjCamRelDirLongitudinal, 0, 5).label, "closer");
}

TEST(Linear, Stationary) {
  oracle::LinearObjectParams p;
  p.velocity = Vec3::Zero();
  const auto o = oracle::make_linear_object_scene(p);
  for (const auto& t : o.truths) {
    if (t.task == TaskKind::kObjCamRelDis) {
      EXPECT_EQ(t.label, "not_moving");
    }
    if (t.task == TaskKind::kObjCamRelDirLateral || t.task == TaskKind::kObjCamRelDirLongitudinal) {
      EXPECT_EQ(t.label, "none");
    }
  }
  expect_solver_agrees(o);
}

TEST(Linear, SolverAgrees) {
  oracle::LinearObjectParams p;
  p.velocity = Vec3(-0.15, 0.05, 0.4);
  p.start = Vec3(2, -1, 3);
  expect_solver_agrees(oracle::make_linear_object_scene(p));
}

TEST(Orbit, ClosedForm) {
  oracle::OrbitParams p;
  p.radius = 2;
  p.angular_step = std::numbers::pi / 2;
  p.frames = 4;
  const auto o = oracle::make_orbit_scene(p);
  EXPECT_NEAR(find(o, TaskKind::kCamAbsDis, 0, 1).value, 2.8284271, 1e-7);
  for (const auto& t : o.truths) {
    if (t.task == TaskKind::kObjCamRelDis) {
      EXPECT_EQ(t.label, "not_moving");
    }
  }
  EXPECT_EQ(camera_absolute_distance(o.scene, 2, 2), 0.0);
  expect_solver_agrees(o);
}

TEST(Orbit, SolverAgrees) {
  expect_solver_agrees(oracle::make_orbit_scene());
  oracle::OrbitParams p;
  p.radius = 5.5;
  p.angular_step = -0.23;
  p.half_height = 1.2;
  expect_solver_agrees(oracle::make_orbit_scene(p));
}

TEST(Orbit, CameraFacesObject) {
  const auto o = oracle::make_orbit_scene();
  for (const auto& cam : o.scene.cameras) {
    // The pole center maps onto the camera's optical axis.
    const Vec3 local = cam.R * Vec3::Zero() + cam.t;
    EXPECT_NEAR(local.x(), 0.0, 1e-12);
    EXPECT_NEAR(local.y(), 0.0, 1e-12);
    EXPECT_GT(local.z(), 0.0);
  }
}

TEST(OracleScenes, ValidAndDeterministic) {
  for (const auto& o : {oracle::make_dolly_scene(), oracle::make_linear_object_scene(), oracle::make_orbit_scene()}) {
    EXPECT_EQ(validate_scene(o.scene).error_count(), 0u);
    EXPECT_EQ(o.truths.size(), 7u * 32u * 31u / 2u);
  }
  EXPECT_EQ(oracle::truths_to_json(oracle::make_orbit_scene()), oracle::truths_to_json(oracle::make_orbit_scene()));
}

TEST(Rollouts, PerfectScoresOne) {
  GenerationConfig cfg;
  Rng rng(3);
  for (const auto& qa : generate_for_scene(oracle::make_linear_object_scene().scene, cfg)) {
    EXPECT_EQ(score_rollout(qa, oracle::synthesize_response(qa, oracle::RolloutKind::kPerfect, rng)).total, 1.0);
    EXPECT_EQ(score_rollout(qa, oracle::synthesize_response(qa, oracle::RolloutKind::kBrokenTags, rng)).r_stru_fmt,
              0.0);
    EXPECT_EQ(score_rollout(qa, oracle::synthesize_response(qa, oracle::RolloutKind::kWrongAnswer, rng)).r_acc, 0.0);
  }
}

TEST(Rollouts, SimulationDeterministic) {
  GenerationConfig cfg;
  const auto qa = generate_for_scene(oracle::make_dolly_scene().scene, cfg).front();
  const auto a = oracle::simulate_rollouts(qa, 12, 9);
  const auto b = oracle::simulate_rollouts(qa, 12, 9);
  ASSERT_EQ(a.size(), 12u);
  for (std::size_t k = 0; k < a.size(); ++k) {
    EXPECT_EQ(a[k].response, b[k].response);
    EXPECT_EQ(a[k].logp.logp_new, b[k].logp.logp_new);
  }
}

}  // namespace
}  // namespace stqa
