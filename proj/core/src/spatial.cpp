#include "animlens/spatial.hpp"

#include <algorithm>

#include "animlens/errors.hpp"

namespace animlens {

std::vector<TracedPose> trace_window(const AnimationClip& clip, std::size_t t,
                                     std::size_t n) {
  const std::size_t count = clip.frame_count();
  if (t >= count) {
    throw FrameOutOfRange("frame " + std::to_string(t) + " is outside clip '" +
                              clip.id() + "'",
                          {{"clip", clip.id()}, {"frame", t}, {"frame_count", count}});
  }
  const std::size_t first = t >= n ? t - n : 0;
  const std::size_t last = std::min(count - 1, t + std::min(n, count));
  std::vector<TracedPose> window;
  window.reserve(last - first + 1);
  for (std::size_t f = first; f <= last; ++f) {
    window.push_back({f, forward_kinematics(clip.skeleton(), clip.frame(f))});
  }
  return window;
}

JointPath joint_path(const AnimationClip& clip, std::size_t joint) {
  if (joint >= clip.skeleton().size()) {
    throw StructuralError("joint index " + std::to_string(joint) +
                              " is outside the skeleton",
                          {{"joint", joint}});
  }
  JointPath path{clip.id(), joint, {}};
  path.points.reserve(clip.frame_count());
  for (const Frame& frame : clip.frames()) {
    path.points.push_back(
        forward_kinematics(clip.skeleton(), frame).positions[joint]);
  }
  return path;
}

std::vector<JointPath> joint_paths(const AnimationClip& clip) {
  const std::size_t joints = clip.skeleton().size();
  std::vector<JointPath> paths(joints);
  for (std::size_t j = 0; j < joints; ++j) {
    paths[j].clip_id = clip.id();
    paths[j].joint = j;
    paths[j].points.reserve(clip.frame_count());
  }
  for (const Frame& frame : clip.frames()) {
    const GlobalPose pose = forward_kinematics(clip.skeleton(), frame);
    for (std::size_t j = 0; j < joints; ++j) {
      paths[j].points.push_back(pose.positions[j]);
    }
  }
  return paths;
}

PathStats path_stats(const JointPath& path, Axis up_axis) {
  PathStats stats;
  if (path.points.empty()) return stats;
  stats.bbox_min = stats.bbox_max = path.points.front();
  const int up = axis_index(up_axis);
  stats.max_height = path.points.front()[up];
  for (std::size_t i = 0; i < path.points.size(); ++i) {
    const Vec3& p = path.points[i];
    stats.bbox_min = stats.bbox_min.cwiseMin(p);
    stats.bbox_max = stats.bbox_max.cwiseMax(p);
    stats.max_height = std::max(stats.max_height, p[up]);
    if (i > 0) stats.arc_length += (p - path.points[i - 1]).norm();
  }
  return stats;
}

}  // namespace animlens
