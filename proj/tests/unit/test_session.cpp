#include <gtest/gtest.h>

#include <map>

#include "animlens/config.hpp"
#include "animlens/errors.hpp"
#include "animlens/serialize.hpp"
#include "animlens/session.hpp"
#include "animlens/timeline.hpp"
#include "fixtures.hpp"

namespace animlens {
namespace {

TimelineState two_clips(std::int64_t offset_b) {
  TimelineState t = make_timeline(2);
  t.tracks[1].offset_frames = offset_b;
  return t;
}

const std::vector<std::size_t> kTens{10, 10};

Session small_session(const EngineConfig& config = {}) {
  return Session(testing::make_set({testing::step_clip("a", 8, 8), testing::step_clip("b", 5, 10, 0.3),
                                    testing::step_clip("c", 10, 4, 0.7)}),
                 config);
}

TEST(Timeline, ConcurrentOffsets) {
  TimelineState t = two_clips(5);
  t.current_frame = 7;
  EXPECT_EQ(active_frames(t, kTens), (ActiveFrames{7, 2}));
  t.current_frame = 12;
  EXPECT_EQ(active_frames(t, kTens), (ActiveFrames{std::nullopt, 7}));
  t.tracks[1].selected = false;
  EXPECT_EQ(active_frames(t, kTens), (ActiveFrames{std::nullopt, std::nullopt}));
}

TEST(Timeline, NegativeOffset) {
  TimelineState t = two_clips(-3);
  t.current_frame = 0;
  EXPECT_EQ(active_frames(t, kTens), (ActiveFrames{0, 3}));
}

TEST(Timeline, SequentialPartition) {
  TimelineState t = two_clips(7);
  t.mode = PlaybackMode::kSequential;
  t.current_frame = 15;
  EXPECT_EQ(active_frames(t, kTens), (ActiveFrames{std::nullopt, 5}));
  EXPECT_EQ(timeline_extent(t, kTens), 20);
  for (std::int64_t f = 0; f < 20; ++f) {
    const ActiveFrames a = active_frames_at(t, kTens, f);
    EXPECT_EQ(std::count_if(a.begin(), a.end(), [](auto v) { return v.has_value(); }), 1);
  }
  t.tracks[0].selected = false;
  EXPECT_EQ(timeline_extent(t, kTens), 10);
  EXPECT_EQ(active_frames_at(t, kTens, 3), (ActiveFrames{std::nullopt, 3}));
}

TEST(Timeline, ConcurrentExtent) {
  EXPECT_EQ(timeline_extent(two_clips(5), kTens), 15);
}

TEST(Tick, OneFramePerFrameTime) {
  TimelineState t = make_timeline(2);
  t.playing = true;
  t = tick(t, 1.0 / 24.0, kTens);
  EXPECT_EQ(t.current_frame, 1);
}

TEST(Tick, FractionalCarry) {
  TimelineState t = make_timeline(2);
  t.playing = true;
  t.speed = 0.1;
  for (int i = 0; i < 9; ++i) t = tick(t, 1.0 / 24.0, kTens);
  EXPECT_EQ(t.current_frame, 0);
  t = tick(t, 1.0 / 24.0, kTens);
  EXPECT_EQ(t.current_frame, 1);
}

TEST(Tick, WrapsAndStops) {
  TimelineState t = make_timeline(2);
  t.playing = true;
  t.current_frame = 9;
  EXPECT_EQ(tick(t, 1.0 / 24.0, kTens).current_frame, 0);
  t.loop = false;
  const TimelineState stopped = tick(t, 1.0 / 24.0, kTens);
  EXPECT_EQ(stopped.current_frame, 9);
  EXPECT_FALSE(stopped.playing);
}

TEST(Tick, PausedIsUnchanged) {
  TimelineState t = make_timeline(2);
  t.current_frame = 4;
  EXPECT_EQ(tick(t, 1.0, kTens).current_frame, 4);
}

TEST(Timeline, Validation) {
  TimelineState t = make_timeline(2);
  t.speed = 0;
  EXPECT_THROW(validate(t, 2), ValidationError);
  t = make_timeline(2);
  t.current_frame = -1;
  EXPECT_THROW(validate(t, 2), ValidationError);
  EXPECT_THROW(validate(make_timeline(1), 2), ValidationError);
}

TEST(Config, Defaults) {
  const EngineConfig c;
  EXPECT_EQ(c.trace_n, 10u);
  EXPECT_EQ(c.keypose_k, 15u);
  EXPECT_EQ(c.fps, 24.0);
  EXPECT_EQ(c.k_min, 1u);
  EXPECT_EQ(c.k_max, 16u);
  EXPECT_EQ(c.median_window, 1u);
  const LensConfig lens;
  EXPECT_EQ(lens.params.trace_n, 10u);
  EXPECT_EQ(lens.params.keypose_k, 15u);
  EXPECT_EQ(make_timeline(1).fps, 24.0);
}

TEST(Config, EnvironmentOverrides) {
  std::map<std::string, std::string> env{{"PORT", "9001"}, {"SEED", "7"}, {"KEYPOSE_K", "5"},
                                         {"FPS", "30"}, {"K_MAX", "4"}};
  const EngineConfig c = config_from_env({}, [&](const char* name) -> std::optional<std::string> {
    auto it = env.find(name);
    if (it == env.end()) return std::nullopt;
    return it->second;
  });
  EXPECT_EQ(c.port, 9001);
  EXPECT_EQ(c.seed, 7u);
  EXPECT_EQ(c.keypose_k, 5u);
  EXPECT_EQ(c.fps, 30.0);
  EXPECT_EQ(c.k_max, 4u);
  EXPECT_EQ(c.trace_n, 10u);
}

TEST(Config, MalformedEnvironment) {
  const auto lookup = [](const char* name) -> std::optional<std::string> {
    if (std::string(name) == "TRACE_N") return "ten";
    return std::nullopt;
  };
  EXPECT_THROW(config_from_env({}, lookup), ValidationError);
  const auto bad_range = [](const char* name) -> std::optional<std::string> {
    if (std::string(name) == "K_MIN") return "20";
    return std::nullopt;
  };
  EXPECT_THROW(config_from_env({}, bad_range), ValidationError);
}

TEST(Session, SceneCrud) {
  Session s = small_session();
  SceneObject cube{"box", PrimitiveKind::kCube, Vec3::Zero(), Quat::Identity(), Vec3::Ones()};
  s.add_object(cube);
  ASSERT_EQ(s.objects().size(), 1u);
  EXPECT_THROW(s.add_object(cube), ValidationError);
  cube.scale = Vec3(0, 1, 1);
  EXPECT_THROW(s.update_object(cube), ValidationError);
  cube.scale = Vec3(2, 1, 1);
  s.update_object(cube);
  EXPECT_EQ(s.objects()[0].scale, Vec3(2, 1, 1));
  cube.id = "ghost";
  EXPECT_THROW(s.update_object(cube), NotFound);
  EXPECT_THROW(s.remove_object("ghost"), NotFound);
  s.remove_object("box");
  EXPECT_TRUE(s.objects().empty());
}

TEST(Session, SecondRecomputeRunsNothing) {
  Session s = small_session();
  s.recompute();
  const std::size_t before = s.counters().total();
  EXPECT_EQ(before, 5u);
  s.recompute();
  EXPECT_EQ(s.counters().total(), before);
}

TEST(Session, DependencySeparation) {
  Session s = small_session();
  s.recompute();
  KernelCounters base = s.counters();

  LensConfig lens = s.lens();
  lens.params.trace_n = 3;
  s.set_lens(lens);
  s.recompute();
  EXPECT_EQ(s.counters().total(), base.total());

  lens.params.seed = 99;
  s.set_lens(lens);
  s.recompute();
  EXPECT_EQ(s.counters().clustering, base.clustering + 1);
  EXPECT_EQ(s.counters().keyposes, base.keyposes);

  lens.params.keypose_k = 4;
  s.set_lens(lens);
  s.recompute();
  EXPECT_EQ(s.counters().keyposes, base.keyposes + 1);
  EXPECT_EQ(s.counters().clustering, base.clustering + 1);
}

TEST(Session, CameraChangeInvalidatesCurvesOnly) {
  Session s = small_session();
  s.recompute();
  const KernelCounters base = s.counters();
  CameraSpec cam = s.camera();
  cam.position = Vec3(1, 2, 8);
  s.set_camera(cam);
  s.recompute();
  EXPECT_EQ(s.counters().joint_curves, base.joint_curves + 1);
  EXPECT_EQ(s.counters().total(), base.total() + 1);
}

TEST(Session, SceneChangeInvalidatesCollisionsOnly) {
  Session s = small_session();
  s.recompute();
  const KernelCounters base = s.counters();
  s.add_object({"box", PrimitiveKind::kCube, Vec3(0, 1, 0), Quat::Identity(), Vec3::Ones()});
  const auto events = s.collisions();
  EXPECT_FALSE(events->empty());
  s.recompute();
  EXPECT_EQ(s.counters().collisions, base.collisions + 1);
  EXPECT_EQ(s.counters().paths, base.paths);
  EXPECT_EQ(s.counters().total(), base.total() + 1);
}

TEST(Session, DiffLensNeedsTwoSelected) {
  Session s = small_session();
  LensConfig lens = s.lens();
  lens.camera_lens = CameraLens::kDiff;
  EXPECT_THROW(s.set_lens(lens), ValidationError);

  TimelineState t = s.timeline();
  t.tracks[2].selected = false;
  s.set_timeline(t);
  s.set_lens(lens);
  EXPECT_EQ(s.lens().camera_lens, CameraLens::kDiff);

  t.tracks[2].selected = true;
  s.set_timeline(t);
  EXPECT_EQ(s.lens().camera_lens, CameraLens::kOverlay);
  EXPECT_TRUE(s.diff_auto_disabled());
}

TEST(Session, LensRejectsBadJoint) {
  Session s = small_session();
  LensConfig lens = s.lens();
  lens.temporal_joint = 1000;
  EXPECT_THROW(s.set_lens(lens), ValidationError);
}

TEST(Session, LensJsonExpandsChains) {
  Session s = small_session();
  const Skeleton& sk = s.animations().skeleton();
  const LensConfig lens = lens_from_json(
      {{"joint_filter", {{"joints", {"head"}}, {"chains", {"l_shoulder"}}}}, {"temporal_joint", "l_wrist"}},
      s.lens(), sk);
  EXPECT_EQ(lens.joint_filter, (std::set<std::size_t>{*sk.find("head"), *sk.find("l_shoulder"),
                                                      *sk.find("l_elbow"), *sk.find("l_wrist")}));
  EXPECT_EQ(lens.temporal_joint, *sk.find("l_wrist"));
  EXPECT_THROW(lens_from_json({{"joint_filter", {"nope"}}}, s.lens(), sk), NotFound);
}

TEST(Session, PersistenceRoundTrip) {
  EngineConfig config;
  config.seed = 12;
  Session s = small_session(config);
  s.add_object({"box", PrimitiveKind::kCone, Vec3(0, 1, 0), Quat::Identity(), Vec3(1, 2, 1)});
  TimelineState t = s.timeline();
  t.tracks[1].offset_frames = -4;
  t.mode = PlaybackMode::kSequential;
  s.set_timeline(t);
  const nlohmann::json doc = s.to_json();
  EXPECT_EQ(doc["version"], 1);
  Session back = Session::from_json(doc);
  EXPECT_EQ(back.to_json(), doc);
  EXPECT_EQ(to_json(*back.pose_clustering(), back.clip_ids()),
            to_json(*s.pose_clustering(), s.clip_ids()));
}

TEST(Session, RejectsUnknownVersion) {
  nlohmann::json doc = small_session().to_json();
  doc["version"] = 2;
  EXPECT_THROW(Session::from_json(doc), ValidationError);
}

TEST(Session, IdenticalStateGivesIdenticalBytes) {
  Session a = small_session();
  Session b = small_session();
  EXPECT_EQ(to_json(*a.pose_clustering(), a.clip_ids()).dump(),
            to_json(*b.pose_clustering(), b.clip_ids()).dump());
  EXPECT_EQ(to_json(*a.joint_curves(3)).dump(), to_json(*b.joint_curves(3)).dump());
}

}  // namespace
}  // namespace animlens
