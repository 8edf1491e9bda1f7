#include <gtest/gtest.h>

#include <cmath>

#include "animlens/camera.hpp"
#include "animlens/diff.hpp"
#include "animlens/errors.hpp"
#include "animlens/joint_curves.hpp"
#include "fixtures.hpp"

namespace animlens {
namespace {

CameraSpec origin_camera() {
  CameraSpec c;
  c.position = Vec3::Zero();
  return c;
}

TEST(Camera, Defaults) {
  const CameraSpec c;
  EXPECT_EQ(c.position, Vec3(0, 1.5, 6));
  EXPECT_NEAR(c.vertical_fov, 50.0 * M_PI / 180.0, 1e-15);
  EXPECT_DOUBLE_EQ(c.aspect, 16.0 / 9.0);
  EXPECT_DOUBLE_EQ(c.near, 0.1);
}

TEST(Camera, Validation) {
  CameraSpec c;
  c.vertical_fov = M_PI;
  EXPECT_THROW(validate(c), ValidationError);
  c = CameraSpec{};
  c.aspect = 0;
  EXPECT_THROW(validate(c), ValidationError);
  c = CameraSpec{};
  c.near = -1;
  EXPECT_THROW(validate(c), ValidationError);
  c = CameraSpec{};
  c.orientation = Quat(2, 0, 0, 0);
  EXPECT_THROW(validate(c), ValidationError);
}

TEST(Project, OpticalAxis) {
  const ProjectedSample s = project(origin_camera(), Vec3(0, 0, -5));
  EXPECT_EQ(s.ndc_x, 0.0);
  EXPECT_EQ(s.ndc_y, 0.0);
  EXPECT_DOUBLE_EQ(s.depth, 5.0);
  EXPECT_TRUE(s.in_view);
  EXPECT_TRUE(s.finite);
}

TEST(Project, FrustumEdges) {
  const CameraSpec c = origin_camera();
  const double d = 3.0;
  const double t = std::tan(c.vertical_fov / 2);
  EXPECT_NEAR(project(c, Vec3(0, t * d, -d)).ndc_y, 1.0, 1e-9);
  EXPECT_NEAR(project(c, Vec3(c.aspect * t * d, 0, -d)).ndc_x, 1.0, 1e-9);
  EXPECT_NEAR(project(c, Vec3(0, -t * d, -d)).ndc_y, -1.0, 1e-9);
}

TEST(Project, BehindCamera) {
  const ProjectedSample s = project(origin_camera(), Vec3(0.1, 0.2, 4));
  EXPECT_FALSE(s.in_view);
  EXPECT_LT(s.depth, 0);
}

TEST(Project, DepthZeroUsesSentinel) {
  const ProjectedSample s = project(origin_camera(), Vec3(1, -1, 0));
  EXPECT_FALSE(s.finite);
  EXPECT_FALSE(s.in_view);
  EXPECT_EQ(s.ndc_x, kNdcSentinel);
  EXPECT_EQ(s.ndc_y, -kNdcSentinel);
}

TEST(Project, OrientationRotatesView) {
  CameraSpec c = origin_camera();
  // Turn the camera to look down +X.
  c.orientation = Quat(Eigen::AngleAxisd(-M_PI / 2, Vec3::UnitY()));
  const ProjectedSample s = project(c, Vec3(5, 0, 0));
  EXPECT_NEAR(s.ndc_x, 0.0, 1e-12);
  EXPECT_NEAR(s.depth, 5.0, 1e-12);
  EXPECT_TRUE(s.in_view);
}

TEST(Project, DoublingDistanceHalvesNdc) {
  Rng rng(4);
  const CameraSpec c;
  for (int i = 0; i < 100; ++i) {
    const Vec3 local(testing::uniform(rng, -2, 2), testing::uniform(rng, -2, 2),
                     -testing::uniform(rng, 0.5, 20));
    const Vec3 near_point = c.position + c.orientation * local;
    const Vec3 far_point = c.position + c.orientation * Vec3(local.x(), local.y(), 2 * local.z());
    const ProjectedSample a = project(c, near_point);
    const ProjectedSample b = project(c, far_point);
    EXPECT_NEAR(b.ndc_x, a.ndc_x / 2, 1e-9);
    EXPECT_NEAR(b.ndc_y, a.ndc_y / 2, 1e-9);
  }
}

TEST(Project, InViewImpliesBounds) {
  Rng rng(5);
  const CameraSpec c;
  for (int i = 0; i < 500; ++i) {
    const ProjectedSample s = project(c, testing::uniform_vec3(rng, -10, 10));
    if (s.in_view) {
      EXPECT_LE(std::abs(s.ndc_x), 1.0);
      EXPECT_LE(std::abs(s.ndc_y), 1.0);
      EXPECT_GE(s.depth, c.near);
    }
  }
}

TEST(JointCurves, DegenerateRangeIsCentered) {
  // Root fixed on the optical axis of the default camera.
  auto s = testing::humanoid();
  std::vector<Frame> frames(6, testing::rest_frame(*s));
  for (Frame& f : frames) f.root_translation = Vec3(0, 1.5, 0);
  const AnimationSet set = testing::make_set(
      {AnimationClip("a", s, 24, frames), AnimationClip("b", s, 24, frames)});
  const JointCurves curves = joint_curves(set, CameraSpec{}, 0);
  for (const auto& clip : curves.clips) {
    for (const CurveSample& sample : clip) {
      EXPECT_EQ(sample.bar_x, 0.5);
      EXPECT_EQ(sample.bar_y, 0.5);
      EXPECT_FALSE(sample.out_of_view);
    }
  }
}

TEST(JointCurves, GlobalExtremaMapToZeroAndOne) {
  Rng rng(6);
  std::vector<AnimationClip> clips;
  for (int i = 0; i < 3; ++i) {
    clips.push_back(testing::random_smooth_clip("c" + std::to_string(i), testing::humanoid(), 20, rng));
  }
  const AnimationSet set = testing::make_set(clips);
  const JointCurves curves = joint_curves(set, CameraSpec{}, *set.skeleton().find("l_wrist"));
  const CurveNormalization& n = curves.normalization;
  double lo_x = 1e9, hi_x = -1e9, lo_y = 1e9, hi_y = -1e9;
  for (const auto& clip : curves.clips) {
    for (const CurveSample& s : clip) {
      const double ux = normalize_bar(s.ndc_x, n.min_x, n.max_x);
      const double uy = normalize_bar(s.ndc_y, n.min_y, n.max_y);
      lo_x = std::min(lo_x, ux);
      hi_x = std::max(hi_x, ux);
      lo_y = std::min(lo_y, uy);
      hi_y = std::max(hi_y, uy);
      EXPECT_GE(s.bar_x, 0.0);
      EXPECT_LE(s.bar_x, 1.0);
    }
  }
  EXPECT_NEAR(lo_x, 0.0, 1e-12);
  EXPECT_NEAR(hi_x, 1.0, 1e-12);
  EXPECT_NEAR(lo_y, 0.0, 1e-12);
  EXPECT_NEAR(hi_y, 1.0, 1e-12);
}

TEST(JointCurves, HighestClipReachesOne) {
  auto low = testing::step_clip("low", 10, 0);
  auto high = testing::step_clip("high", 0, 10);
  const AnimationSet set = testing::make_set({low, high});
  const JointCurves curves = joint_curves(set, CameraSpec{}, *set.skeleton().find("l_wrist"));
  bool reached = false;
  for (const CurveSample& s : curves.clips[1]) reached = reached || s.bar_y == 1.0;
  EXPECT_TRUE(reached);
}

TEST(JointCurves, ExitingTheFrustumFlagsAContiguousRun) {
  auto s = testing::humanoid();
  std::vector<Frame> frames;
  CameraSpec camera;
  camera.position = Vec3(0, 0, 10);
  const double edge = camera.aspect * std::tan(camera.vertical_fov / 2) * 10.0;
  for (int t = 0; t < 30; ++t) {
    Frame f = testing::rest_frame(*s);
    // Root moves along x from the centre to twice the frustum half width and back.
    const double u = t < 15 ? t / 14.0 : (29 - t) / 14.0;
    f.root_translation = Vec3(2.0 * edge * u, 0, 0);
    frames.push_back(f);
  }
  const AnimationSet set = testing::make_set({AnimationClip("a", s, 24, frames)});
  const JointCurves curves = joint_curves(set, camera, 0);
  std::vector<bool> flags;
  for (const CurveSample& sample : curves.clips[0]) {
    flags.push_back(sample.out_of_view);
    EXPECT_EQ(sample.out_of_view, std::abs(sample.ndc_x) > 1.0) << sample.frame;
  }
  const auto first = std::find(flags.begin(), flags.end(), true);
  const auto last = std::find(flags.rbegin(), flags.rend(), true).base();
  ASSERT_NE(first, flags.end());
  EXPECT_TRUE(std::all_of(first, last, [](bool b) { return b; }));
}

TEST(Diff, CopyHasZeroDistance) {
  auto a = testing::step_clip("a", 5, 5);
  const AnimationSet set = testing::make_set({a, a.with_id("b")});
  const std::vector<std::int64_t> offsets{0, 0};
  for (const JointPair& p : diff_frames(set, 0, 1, offsets, 7).joint_pairs) EXPECT_EQ(p.distance, 0.0);
}

TEST(Diff, TranslatedCopyHasUnitDistance) {
  auto a = testing::step_clip("a", 5, 5);
  auto b = testing::rigidly_transformed(a, 0.0, Vec3(1, 0, 0)).with_id("b");
  const AnimationSet set = testing::make_set({a, b});
  const std::vector<std::int64_t> offsets{0, 0};
  const DiffFrame d = diff_frames(set, 0, 1, offsets, 3);
  for (const JointPair& p : d.joint_pairs) {
    EXPECT_NEAR(p.distance, 1.0, 1e-12);
    EXPECT_NEAR(p.distance, (p.pos_a - p.pos_b).norm(), 1e-15);
  }
  EXPECT_NEAR(mean_diff_distance(set, 0, 1), 1.0, 1e-12);
}

TEST(Diff, OffsetsOnConstantClip) {
  const AnimationSet set =
      testing::make_set({testing::constant_clip("a", 20), testing::constant_clip("b", 20)});
  const std::vector<std::int64_t> offsets{0, 5};
  const DiffFrame d = diff_frames(set, 0, 1, offsets, 8);
  EXPECT_EQ(d.local_a, 8u);
  EXPECT_EQ(d.local_b, 3u);
  for (const JointPair& p : d.joint_pairs) EXPECT_EQ(p.distance, 0.0);
}

TEST(Diff, SymmetricDistances) {
  Rng rng(7);
  auto a = testing::random_smooth_clip("a", testing::humanoid(), 10, rng);
  auto b = testing::random_smooth_clip("b", a.skeleton_ptr(), 12, rng);
  const AnimationSet set = testing::make_set({a, b});
  const std::vector<std::int64_t> offsets{0, 2};
  const DiffFrame ab = diff_frames(set, 0, 1, offsets, 5);
  const DiffFrame ba = diff_frames(set, 1, 0, offsets, 5);
  for (std::size_t j = 0; j < ab.joint_pairs.size(); ++j) {
    EXPECT_EQ(ab.joint_pairs[j].distance, ba.joint_pairs[j].distance);
  }
}

TEST(Diff, Errors) {
  const AnimationSet set =
      testing::make_set({testing::constant_clip("a", 10), testing::constant_clip("b", 10)});
  const std::vector<std::int64_t> offsets{0, 5};
  EXPECT_THROW(diff_frames(set, 0, 0, offsets, 1), StructuralError);
  try {
    diff_frames(set, 0, 1, offsets, 2);
    FAIL() << "expected FrameOutOfRange";
  } catch (const FrameOutOfRange& e) {
    EXPECT_EQ(e.detail()["clip"], "b");
  }
}

}  // namespace
}  // namespace animlens
