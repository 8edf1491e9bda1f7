#include "animlens/kinematics.hpp"

#include <cmath>

#include "animlens/errors.hpp"

namespace animlens {

GlobalPose forward_kinematics(const Skeleton& skeleton, const Frame& frame) {
  const std::size_t n = skeleton.size();
  if (frame.rotations.size() != n) {
    throw StructuralError("frame supplies " +
                          std::to_string(frame.rotations.size()) +
                          " rotations for a " + std::to_string(n) +
                          "-joint skeleton");
  }
  GlobalPose pose;
  pose.positions.resize(n);
  pose.rotations.resize(n);
  pose.positions[0] = frame.root_translation;
  pose.rotations[0] = frame.rotations[0];
  for (std::size_t i = 1; i < n; ++i) {
    const std::size_t parent = *skeleton.joint(i).parent;
    pose.positions[i] = pose.positions[parent] +
                        pose.rotations[parent] * skeleton.joint(i).rest_offset;
    pose.rotations[i] = pose.rotations[parent] * frame.rotations[i];
  }
  return pose;
}

std::vector<GlobalPose> forward_kinematics(const AnimationClip& clip) {
  std::vector<GlobalPose> poses;
  poses.reserve(clip.frame_count());
  for (const Frame& frame : clip.frames()) {
    poses.push_back(forward_kinematics(clip.skeleton(), frame));
  }
  return poses;
}

namespace {

Vec3 forward_axis(Axis up) {
  return up == Axis::kZ ? Vec3::UnitY() : Vec3::UnitZ();
}

}  // namespace

double root_heading(const Skeleton& skeleton, const GlobalPose& pose) {
  const Vec3 up = axis_vector(skeleton.up_axis());
  const Vec3 reference = forward_axis(skeleton.up_axis());
  const Vec3 side = up.cross(reference);
  const Vec3 forward = pose.rotations.at(0) * reference;
  const double along = forward.dot(reference);
  const double across = forward.dot(side);
  // Forward parallel to up: no meaningful yaw.
  if (std::hypot(along, across) < 1e-9) return 0.0;
  return std::atan2(across, along);
}

PoseFeature pose_feature(const Skeleton& skeleton, const GlobalPose& pose) {
  const std::size_t n = skeleton.size();
  if (pose.positions.size() != n || pose.rotations.size() != n) {
    throw StructuralError("pose does not match skeleton");
  }
  const double heading = root_heading(skeleton, pose);
  const Eigen::Matrix3d unyaw =
      Eigen::AngleAxisd(-heading, axis_vector(skeleton.up_axis()))
          .toRotationMatrix();
  PoseFeature feature(3 * n);
  feature.segment<3>(0).setZero();
  const Vec3& root = pose.positions[0];
  for (std::size_t i = 1; i < n; ++i) {
    feature.segment<3>(3 * i) = unyaw * (pose.positions[i] - root);
  }
  return feature;
}

FeatureSequence clip_features(const AnimationClip& clip) {
  FeatureSequence features;
  features.reserve(clip.frame_count());
  for (const Frame& frame : clip.frames()) {
    features.push_back(
        pose_feature(clip.skeleton(), forward_kinematics(clip.skeleton(), frame)));
  }
  return features;
}

AnimationClip resample(const AnimationClip& clip, double target_fps) {
  if (!(target_fps > 0.0) || !std::isfinite(target_fps)) {
    throw ValidationError("target fps must be positive");
  }
  if (target_fps == clip.fps()) return clip;

  const std::size_t source_count = clip.frame_count();
  const double ratio = target_fps / clip.fps();
  const auto target_count = static_cast<std::size_t>(std::max(
      1.0, std::round(static_cast<double>(source_count) * ratio)));
  const double last = static_cast<double>(source_count - 1);
  const std::size_t joints = clip.skeleton().size();

  std::vector<Frame> frames;
  frames.reserve(target_count);
  for (std::size_t j = 0; j < target_count; ++j) {
    if (j + 1 == target_count && target_count > 1) {
      frames.push_back(clip.frames().back());
      break;
    }
    const double t = std::min(static_cast<double>(j) / ratio, last);
    const auto lo = static_cast<std::size_t>(std::floor(t));
    const std::size_t hi = std::min(lo + 1, source_count - 1);
    const double w = t - static_cast<double>(lo);
    const Frame& a = clip.frame(lo);
    const Frame& b = clip.frame(hi);
    if (w == 0.0 || lo == hi) {
      frames.push_back(a);
      continue;
    }
    Frame out;
    out.root_translation = (1.0 - w) * a.root_translation + w * b.root_translation;
    out.rotations.resize(joints);
    for (std::size_t k = 0; k < joints; ++k) {
      out.rotations[k] = a.rotations[k].slerp(w, b.rotations[k]).normalized();
    }
    frames.push_back(std::move(out));
  }
  return AnimationClip(clip.id(), clip.skeleton_ptr(), target_fps,
                       std::move(frames));
}

}  // namespace animlens
