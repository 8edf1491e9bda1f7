#pragma once

#include <vector>

#include <Eigen/Core>

#include "animlens/clip.hpp"
#include "animlens/math.hpp"
#include "animlens/skeleton.hpp"

namespace animlens {

// World-space pose. `rotations` holds the accumulated (global) rotation of
// each joint; pose_feature reads the root's entry to recover the heading.
struct GlobalPose {
  std::vector<Vec3> positions;
  std::vector<Quat> rotations;
};

/// Root position is the frame's root translation; every other joint is
/// parent position + parent global rotation * rest offset.
GlobalPose forward_kinematics(const Skeleton& skeleton, const Frame& frame);
std::vector<GlobalPose> forward_kinematics(const AnimationClip& clip);

using PoseFeature = Eigen::VectorXd;
using FeatureSequence = std::vector<PoseFeature>;

/// Heading (yaw about the up axis) of the root's forward direction.
///
/// Forward is the root's local +Z axis, or +Y when the skeleton is Z-up.
/// Returns 0 when the forward direction is parallel to the up axis.
double root_heading(const Skeleton& skeleton, const GlobalPose& pose);

/// Root-relative, heading-normalised joint positions flattened in joint
/// order (3 * joints entries, root entry exactly zero).
PoseFeature pose_feature(const Skeleton& skeleton, const GlobalPose& pose);
FeatureSequence clip_features(const AnimationClip& clip);

/// Resamples onto a `target_fps` grid. Output frame j samples source time
/// j / target_fps (clamped to the last frame); the last output frame is the
/// last source frame. Root translation is lerped, rotations slerped.
AnimationClip resample(const AnimationClip& clip, double target_fps);

}  // namespace animlens
