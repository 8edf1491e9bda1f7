#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "animlens/animation_set.hpp"
#include "animlens/bvh.hpp"
#include "animlens/clip_json.hpp"
#include "animlens/errors.hpp"
#include "animlens/kinematics.hpp"
#include "fixtures.hpp"

namespace animlens {
namespace {

std::string data_file(const std::string& name) {
  std::ifstream in(std::string(ANIMLENS_TEST_DATA_DIR) + "/" + name);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

template <typename F>
nlohmann::json error_detail(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.detail();
  }
  ADD_FAILURE() << "no error thrown";
  return {};
}

TEST(Bvh, MinimalFileGivesRootPlusEndSite) {
  const AnimationClip clip = parse_bvh(data_file("minimal.bvh"), "minimal");
  ASSERT_EQ(clip.skeleton().size(), 2u);
  EXPECT_EQ(clip.skeleton().joint(0).name, "Hips");
  EXPECT_EQ(clip.skeleton().joint(1).name, "Hips_end");
  EXPECT_EQ(clip.skeleton().joint(1).rest_offset, Vec3(0, 1, 0));
  ASSERT_EQ(clip.frame_count(), 2u);
  for (const Frame& f : clip.frames()) {
    EXPECT_EQ(f.root_translation, Vec3::Zero());
    for (const Quat& q : f.rotations) EXPECT_NEAR(q.angularDistance(Quat::Identity()), 0.0, 1e-12);
  }
  EXPECT_EQ(clip.fps(), 24);
}

TEST(Bvh, GoldenNinetyDegreeChild) {
  const AnimationClip clip = parse_bvh(data_file("two_joint_z90.bvh"));
  const GlobalPose pose = forward_kinematics(clip.skeleton(), clip.frame(0));
  EXPECT_NEAR((pose.positions[1] - Vec3(-1, 0, 0)).norm(), 0.0, 1e-6);
  EXPECT_EQ(clip.fps(), 30);
}

TEST(Bvh, TruncatedBeforeMotion) {
  try {
    parse_bvh(data_file("truncated.bvh"));
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("no motion section"), std::string::npos);
    EXPECT_TRUE(e.detail().contains("line"));
  }
}

TEST(Bvh, ShortMotionReportsLine) {
  const auto detail = error_detail([] { parse_bvh(data_file("short_motion.bvh")); });
  ASSERT_TRUE(detail.contains("line"));
  EXPECT_GE(detail["line"].get<int>(), 14);
}

TEST(Bvh, UnknownChannel) {
  std::string text = data_file("minimal.bvh");
  text.replace(text.find("Yrotation"), 9, "Wrotation");
  EXPECT_THROW(parse_bvh(text), ParseError);
}

TEST(Bvh, ChannelOrderIsIntrinsicInDeclaredOrder) {
  // Zrotation 90 then Xrotation 90 (intrinsic): R = Rz(90) * Rx(90).
  const std::string text =
      "HIERARCHY\nROOT r\n{\n OFFSET 0 0 0\n CHANNELS 6 Xposition Yposition Zposition Zrotation Xrotation Yrotation\n"
      " JOINT c\n {\n  OFFSET 0 1 0\n  CHANNELS 3 Zrotation Yrotation Xrotation\n }\n}\n"
      "MOTION\nFrames: 1\nFrame Time: 0.0416667\n0 0 0 90 90 0 0 0 0\n";
  const AnimationClip clip = parse_bvh(text);
  const Quat expected = Quat(Eigen::AngleAxisd(M_PI / 2, Vec3::UnitZ())) *
                        Quat(Eigen::AngleAxisd(M_PI / 2, Vec3::UnitX()));
  EXPECT_NEAR(clip.frame(0).rotations[0].angularDistance(expected), 0.0, 1e-9);
}

TEST(Bvh, FrameTimeRoundsToFps) {
  std::string text = data_file("minimal.bvh");
  EXPECT_EQ(parse_bvh(text).fps(), 24);
}

TEST(Bvh, WriterRoundTrip) {
  Rng rng(21);
  auto clip = testing::random_smooth_clip("r", testing::humanoid(), 12, rng);
  const AnimationClip back = parse_bvh(testing::to_bvh(clip), "r");
  ASSERT_EQ(back.skeleton().size(), clip.skeleton().size());
  const auto a = forward_kinematics(clip);
  const auto b = forward_kinematics(back);
  for (std::size_t t = 0; t < a.size(); ++t) {
    for (std::size_t j = 0; j < a[t].positions.size(); ++j) {
      EXPECT_NEAR((a[t].positions[j] - b[t].positions[j]).norm(), 0.0, 1e-8);
    }
  }
}

TEST(Bvh, GarbageNeverAborts) {
  const std::string base = data_file("two_joint_z90.bvh");
  for (std::size_t cut = 0; cut < base.size(); cut += 7) {
    try {
      parse_bvh(base.substr(0, cut));
    } catch (const ParseError&) {
    }
  }
}

TEST(ClipJson, HandWrittenOneJoint) {
  const AnimationClip clip = parse_clip_json(data_file("one_joint.json"), "one");
  ASSERT_EQ(clip.skeleton().size(), 1u);
  EXPECT_EQ(clip.skeleton().joint(0).name, "root");
  EXPECT_FALSE(clip.skeleton().joint(0).parent.has_value());
  EXPECT_EQ(clip.skeleton().joint(0).rest_offset, Vec3(0, 1, 0));
  EXPECT_EQ(clip.fps(), 30);
  ASSERT_EQ(clip.frame_count(), 1u);
  EXPECT_EQ(clip.frame(0).root_translation, Vec3(1, 2, 3));
  EXPECT_EQ(clip.frame(0).rotations[0].coeffs(), Quat::Identity().coeffs());
}

TEST(ClipJson, ShortQuaternionNamesPath) {
  auto doc = nlohmann::json::parse(data_file("one_joint.json"));
  doc["skeleton"]["joints"].push_back({{"name", "a"}, {"parent", 0}, {"offset", {1, 0, 0}}});
  doc["skeleton"]["joints"].push_back({{"name", "b"}, {"parent", 1}, {"offset", {1, 0, 0}}});
  doc["frames"][0]["rotations"] = {{1, 0, 0, 0}, {1, 0, 0, 0}, {1, 0, 0}};
  const auto detail = error_detail([&] { parse_clip_json(doc.dump()); });
  EXPECT_EQ(detail.value("path", ""), "frames[0].rotations[2]");
}

TEST(ClipJson, RejectsMalformedText) {
  EXPECT_THROW(parse_clip_json("{not json"), ParseError);
  EXPECT_THROW(parse_clip_json("{}"), ParseError);
}

TEST(ClipJson, RoundTripRandomClips) {
  Rng rng(99);
  for (int i = 0; i < 20; ++i) {
    auto clip = testing::random_smooth_clip("r", testing::humanoid(), 1 + i, rng);
    const AnimationClip back = parse_clip_json(emit_clip_json(clip), "r");
    EXPECT_TRUE(back.skeleton() == clip.skeleton());
    ASSERT_EQ(back.frame_count(), clip.frame_count());
    for (std::size_t t = 0; t < clip.frame_count(); ++t) {
      EXPECT_EQ(back.frame(t).root_translation, clip.frame(t).root_translation);
      for (std::size_t j = 0; j < clip.skeleton().size(); ++j) {
        EXPECT_EQ(back.frame(t).rotations[j].coeffs(), clip.frame(t).rotations[j].coeffs());
      }
    }
  }
}

TEST(LoadSession, FourBvhFiles) {
  std::vector<SourceFile> files;
  for (int i = 0; i < 4; ++i) {
    files.push_back({"take" + std::to_string(i) + ".bvh",
                     testing::to_bvh(testing::step_clip("x", 10 + i, 12, i))});
  }
  const AnimationSet set = load_session(files);
  ASSERT_EQ(set.size(), 4u);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(set.clip(i).id(), "take" + std::to_string(i));
    EXPECT_EQ(set.clip(i).fps(), 24);
    EXPECT_EQ(&set.clip(i).skeleton(), &set.skeleton());
  }
}

TEST(LoadSession, SniffsContentWithoutExtension) {
  std::vector<SourceFile> files{{"a", testing::to_bvh(testing::constant_clip("a", 3))},
                                {"b", emit_clip_json(testing::constant_clip("b", 3))}};
  const AnimationSet set = load_session(files);
  EXPECT_EQ(set.size(), 2u);
}

TEST(LoadSession, DuplicateIdsGetSuffixes) {
  const std::string text = testing::to_bvh(testing::constant_clip("a", 3));
  std::vector<SourceFile> files{{"walk.bvh", text}, {"walk.bvh", text}, {"walk.bvh", text}};
  const AnimationSet set = load_session(files);
  EXPECT_EQ(set.clip(0).id(), "walk");
  EXPECT_EQ(set.clip(1).id(), "walk_2");
  EXPECT_EQ(set.clip(2).id(), "walk_3");
}

TEST(LoadSession, EmptyInput) {
  EXPECT_THROW(load_session(std::vector<SourceFile>{}), EmptySession);
}

TEST(LoadSession, MissingJointIsNamed) {
  auto full = testing::constant_clip("a", 3);
  std::vector<Joint> joints(full.skeleton().joints().begin(), full.skeleton().joints().end() - 1);
  auto reduced = std::make_shared<const Skeleton>(joints);
  AnimationClip other("b", reduced, 24, {testing::rest_frame(*reduced)});
  std::vector<SourceFile> files{{"a.json", emit_clip_json(full)}, {"b.json", emit_clip_json(other)}};
  try {
    load_session(files);
    FAIL() << "expected IncompatibleSkeletons";
  } catch (const IncompatibleSkeletons& e) {
    EXPECT_NE(e.detail().dump().find("r_ankle"), std::string::npos) << e.detail().dump();
  }
}

TEST(LoadSession, ReordersJointsByName) {
  auto clip = testing::step_clip("a", 3, 3);
  const Skeleton& s = clip.skeleton();
  // Swap the two leg branches: still topological, different order.
  std::vector<std::size_t> order{0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 14, 15, 16, 11, 12, 13};
  std::vector<std::size_t> position(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) position[order[k]] = k;
  std::vector<Joint> joints;
  for (std::size_t old : order) {
    Joint j = s.joint(old);
    if (j.parent) j.parent = position[*j.parent];
    joints.push_back(j);
  }
  auto shuffled = std::make_shared<const Skeleton>(joints);
  std::vector<Frame> frames;
  for (const Frame& f : clip.frames()) {
    Frame g{f.root_translation, {}};
    for (std::size_t old : order) g.rotations.push_back(f.rotations[old]);
    frames.push_back(g);
  }
  AnimationClip other("b", shuffled, 24, frames);
  const AnimationSet set = testing::make_set({clip, other});
  const auto a = forward_kinematics(set.clip(0));
  const auto b = forward_kinematics(set.clip(1));
  for (std::size_t t = 0; t < a.size(); ++t) {
    for (std::size_t j = 0; j < s.size(); ++j) {
      EXPECT_NEAR((a[t].positions[j] - b[t].positions[j]).norm(), 0.0, 1e-12);
    }
  }
}

TEST(LoadSession, ResamplesToSessionRate) {
  auto base = testing::step_clip("a", 15, 15);
  AnimationClip at30("a", base.skeleton_ptr(), 30, base.frames());
  std::vector<SourceFile> files{{"a.json", emit_clip_json(at30)}};
  const AnimationSet set = load_session(files);
  EXPECT_EQ(set.clip(0).frame_count(), 24u);  // round(30 * 24 / 30)
  EXPECT_EQ(set.clip(0).fps(), 24);
}

}  // namespace
}  // namespace animlens
