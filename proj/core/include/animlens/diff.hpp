#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "animlens/animation_set.hpp"

namespace animlens {

struct JointPair {
  Vec3 pos_a = Vec3::Zero();
  Vec3 pos_b = Vec3::Zero();
  double distance = 0.0;
};

struct DiffFrame {
  std::int64_t frame = 0;  // global timeline frame
  std::size_t local_a = 0;
  std::size_t local_b = 0;
  std::vector<JointPair> joint_pairs;
};

/// Joint-by-joint comparison of two clips at one global timeline frame; each
/// clip's local frame is `frame - offsets[clip]`. Throws StructuralError when
/// clip_a == clip_b and FrameOutOfRange (detail names the clip) when the
/// frame falls outside either clip.
DiffFrame diff_frames(const AnimationSet& set, std::size_t clip_a,
                      std::size_t clip_b, std::span<const std::int64_t> offsets,
                      std::int64_t frame);

/// Mean joint distance over the first min(Ta, Tb) frames with zero offsets.
double mean_diff_distance(const AnimationSet& set, std::size_t clip_a,
                          std::size_t clip_b);

}  // namespace animlens
