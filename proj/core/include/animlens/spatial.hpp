#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "animlens/clip.hpp"
#include "animlens/kinematics.hpp"

namespace animlens {

inline constexpr std::size_t kDefaultTraceFrames = 10;

struct TracedPose {
  std::size_t frame = 0;
  GlobalPose pose;
};

/// Poses for frames [max(0, t-n), min(T-1, t+n)], ascending.
/// Throws FrameOutOfRange when t >= T.
std::vector<TracedPose> trace_window(const AnimationClip& clip, std::size_t t,
                                     std::size_t n = kDefaultTraceFrames);

struct JointPath {
  std::string clip_id;
  std::size_t joint = 0;
  std::vector<Vec3> points;  // one per frame
};

/// Throws StructuralError for an invalid joint index.
JointPath joint_path(const AnimationClip& clip, std::size_t joint);

/// Paths of every joint, computed with one FK pass over the clip.
std::vector<JointPath> joint_paths(const AnimationClip& clip);

struct PathStats {
  double arc_length = 0.0;
  Vec3 bbox_min = Vec3::Zero();
  Vec3 bbox_max = Vec3::Zero();
  double max_height = 0.0;  // along the skeleton's up axis
};

PathStats path_stats(const JointPath& path, Axis up_axis);

}  // namespace animlens
