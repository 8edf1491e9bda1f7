#include "fixtures.hpp"

#include <cmath>
#include <functional>
#include <cstdio>
#include <numbers>
#include <sstream>

namespace animlens::testing {
namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

Quat about(const Vec3& axis, double degrees) {
  return Quat(Eigen::AngleAxisd(degrees * kDeg, axis.normalized()));
}

std::string number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12f", v);
  return buf;
}

}  // namespace

double uniform(Rng& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

Vec3 uniform_vec3(Rng& rng, double lo, double hi) {
  const double x = uniform(rng, lo, hi);
  const double y = uniform(rng, lo, hi);
  const double z = uniform(rng, lo, hi);
  return {x, y, z};
}

Quat random_unit_quat(Rng& rng) {
  Quat q;
  do {
    const double w = uniform(rng, -1, 1);
    const double x = uniform(rng, -1, 1);
    const double y = uniform(rng, -1, 1);
    const double z = uniform(rng, -1, 1);
    q = Quat(w, x, y, z);
  } while (q.norm() < 0.1 || q.norm() > 1.0);
  return q.normalized();
}

std::shared_ptr<const Skeleton> humanoid() {
  std::vector<Joint> j;
  auto add = [&](std::string name, std::optional<std::size_t> parent, Vec3 offset) {
    j.push_back(Joint{std::move(name), parent, offset});
    return j.size() - 1;
  };
  const auto hips = add("hips", std::nullopt, {0, 1.0, 0});
  const auto spine = add("spine", hips, {0, 0.2, 0});
  const auto chest = add("chest", spine, {0, 0.25, 0});
  const auto neck = add("neck", chest, {0, 0.2, 0});
  add("head", neck, {0, 0.15, 0});
  const auto ls = add("l_shoulder", chest, {0.2, 0.15, 0});
  const auto le = add("l_elbow", ls, {0.3, 0, 0});
  add("l_wrist", le, {0.25, 0, 0});
  const auto rs = add("r_shoulder", chest, {-0.2, 0.15, 0});
  const auto re = add("r_elbow", rs, {-0.3, 0, 0});
  add("r_wrist", re, {-0.25, 0, 0});
  const auto lh = add("l_hip", hips, {0.1, -0.05, 0});
  const auto lk = add("l_knee", lh, {0, -0.45, 0});
  add("l_ankle", lk, {0, -0.45, 0});
  const auto rh = add("r_hip", hips, {-0.1, -0.05, 0});
  const auto rk = add("r_knee", rh, {0, -0.45, 0});
  add("r_ankle", rk, {0, -0.45, 0});
  auto chains = infer_chains(j);
  return std::make_shared<const Skeleton>(std::move(j), Axis::kY, std::move(chains));
}

std::shared_ptr<const Skeleton> two_joint_chain() {
  std::vector<Joint> j{{"root", std::nullopt, Vec3::Zero()}, {"tip", 0, Vec3(1, 0, 0)}};
  return std::make_shared<const Skeleton>(std::move(j));
}

Frame rest_frame(const Skeleton& skeleton) {
  Frame f;
  f.root_translation = skeleton.joint(0).rest_offset;
  f.rotations.assign(skeleton.size(), Quat::Identity());
  return f;
}

Frame arms_pose(const Skeleton& skeleton, double shoulder_deg, double sway) {
  Frame f = rest_frame(skeleton);
  f.rotations[*skeleton.find("l_shoulder")] = about(Vec3::UnitZ(), shoulder_deg);
  f.rotations[*skeleton.find("r_shoulder")] = about(Vec3::UnitZ(), -shoulder_deg);
  f.rotations[*skeleton.find("spine")] = about(Vec3::UnitX(), sway);
  return f;
}

AnimationClip step_clip(std::string id, std::size_t idle, std::size_t up, double phase,
                        double sway_deg) {
  auto skeleton = humanoid();
  std::vector<Frame> frames;
  for (std::size_t t = 0; t < idle + up; ++t) {
    const double sway = sway_deg * std::sin(0.4 * static_cast<double>(t) + phase);
    frames.push_back(arms_pose(*skeleton, t < idle ? 0.0 : 150.0, sway));
  }
  return AnimationClip(std::move(id), skeleton, kDefaultFps, std::move(frames));
}

AnimationClip constant_clip(std::string id, std::size_t count) {
  auto skeleton = humanoid();
  std::vector<Frame> frames(count, arms_pose(*skeleton, 30.0, 0.0));
  return AnimationClip(std::move(id), skeleton, kDefaultFps, std::move(frames));
}

AnimationClip linear_clip(std::string id, std::size_t count) {
  auto skeleton = humanoid();
  std::vector<Frame> frames;
  for (std::size_t t = 0; t < count; ++t) {
    Frame f = arms_pose(*skeleton, 45.0, 0.0);
    f.root_translation += Vec3(0.05 * static_cast<double>(t), 0, 0);
    frames.push_back(f);
  }
  return AnimationClip(std::move(id), skeleton, kDefaultFps, std::move(frames));
}

AnimationClip random_smooth_clip(std::string id, std::shared_ptr<const Skeleton> skeleton,
                                 std::size_t count, Rng& rng) {
  const std::size_t stride = 6;
  const std::size_t keys = count / stride + 2;
  const std::size_t n = skeleton->size();
  std::vector<std::vector<Quat>> key_rot(keys, std::vector<Quat>(n));
  std::vector<Vec3> key_root(keys);
  for (std::size_t k = 0; k < keys; ++k) {
    for (std::size_t j = 0; j < n; ++j) {
      const Vec3 axis = uniform_vec3(rng, -1, 1) + Vec3(0, 1e-3, 0);
      key_rot[k][j] = about(axis, uniform(rng, -60, 60));
    }
    key_root[k] = skeleton->joint(0).rest_offset + uniform_vec3(rng, -0.5, 0.5);
  }
  std::vector<Frame> frames;
  for (std::size_t t = 0; t < count; ++t) {
    const std::size_t k = t / stride;
    const double u = static_cast<double>(t % stride) / static_cast<double>(stride);
    const double s = u * u * (3.0 - 2.0 * u);
    Frame f;
    f.root_translation = (1 - s) * key_root[k] + s * key_root[k + 1];
    for (std::size_t j = 0; j < n; ++j) {
      f.rotations.push_back(key_rot[k][j].slerp(s, key_rot[k + 1][j]).normalized());
    }
    frames.push_back(std::move(f));
  }
  return AnimationClip(std::move(id), std::move(skeleton), kDefaultFps, std::move(frames));
}

AnimationClip rigidly_transformed(const AnimationClip& clip, double yaw,
                                  const Vec3& ground_offset) {
  const Quat r(Eigen::AngleAxisd(yaw, Vec3::UnitY()));
  std::vector<Frame> frames = clip.frames();
  for (Frame& f : frames) {
    f.root_translation = r * f.root_translation + ground_offset;
    f.rotations[0] = (r * f.rotations[0]).normalized();
  }
  return AnimationClip(clip.id(), clip.skeleton_ptr(), clip.fps(), std::move(frames));
}

std::vector<PoseFeature> random_feature_sequence(Rng& rng, std::size_t length,
                                                 std::size_t dim) {
  std::vector<PoseFeature> out;
  for (std::size_t i = 0; i < length; ++i) {
    PoseFeature f(static_cast<Eigen::Index>(dim));
    for (std::size_t d = 0; d < dim; ++d) f[static_cast<Eigen::Index>(d)] = uniform(rng, -1, 1);
    out.push_back(std::move(f));
  }
  return out;
}

AnimationSet make_set(std::vector<AnimationClip> clips) {
  std::vector<std::string> names;
  for (const AnimationClip& c : clips) names.push_back(c.id());
  return assemble_set(std::move(clips), std::move(names));
}

std::string to_bvh(const AnimationClip& clip) {
  const Skeleton& skeleton = clip.skeleton();
  std::ostringstream out;
  std::vector<std::size_t> channel_order;
  const auto is_end_site = [&](std::size_t j) {
    const Joint& joint = skeleton.joint(j);
    return joint.parent && skeleton.children(j).empty() &&
           joint.name == skeleton.joint(*joint.parent).name + "_end";
  };
  const auto offset = [&](const Vec3& v) {
    return number(v.x()) + " " + number(v.y()) + " " + number(v.z());
  };
  std::function<void(std::size_t, int)> write = [&](std::size_t j, int depth) {
    const std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
    const Joint& joint = skeleton.joint(j);
    if (is_end_site(j)) {
      out << pad << "End Site\n" << pad << "{\n"
          << pad << "  OFFSET " << offset(joint.rest_offset) << "\n" << pad << "}\n";
      return;
    }
    out << pad << (joint.parent ? "JOINT " : "ROOT ") << joint.name << "\n" << pad << "{\n";
    out << pad << "  OFFSET " << offset(joint.rest_offset) << "\n";
    out << pad << "  CHANNELS " << (joint.parent ? "3" : "6 Xposition Yposition Zposition")
        << " Zrotation Yrotation Xrotation\n";
    channel_order.push_back(j);
    for (std::size_t c : skeleton.children(j)) write(c, depth + 1);
    out << pad << "}\n";
  };
  out << "HIERARCHY\n";
  write(0, 0);
  out << "MOTION\nFrames: " << clip.frame_count() << "\n";
  out << "Frame Time: " << number(1.0 / clip.fps()) << "\n";
  for (const Frame& f : clip.frames()) {
    std::string line;
    for (std::size_t j : channel_order) {
      if (j == 0) {
        const Vec3 p = f.root_translation - skeleton.joint(0).rest_offset;
        line += offset(p) + " ";
      }
      // Intrinsic Z then Y then X: R = Rz * Ry * Rx.
      const Vec3 euler = f.rotations[j].toRotationMatrix().eulerAngles(2, 1, 0) / kDeg;
      line += offset(euler) + " ";
    }
    line.pop_back();
    out << line << "\n";
  }
  return out.str();
}

}  // namespace animlens::testing
