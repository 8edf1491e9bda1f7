#include "animlens/diff.hpp"

#include <algorithm>

#include "animlens/errors.hpp"
#include "animlens/kinematics.hpp"

namespace animlens {
namespace {

std::size_t local_frame(const AnimationClip& clip, std::int64_t offset,
                        std::int64_t frame) {
  const std::int64_t local = frame - offset;
  if (local < 0 || local >= static_cast<std::int64_t>(clip.frame_count())) {
    throw FrameOutOfRange("frame " + std::to_string(frame) +
                              " is outside clip '" + clip.id() + "'",
                          {{"clip", clip.id()},
                           {"frame", frame},
                           {"offset_frames", offset},
                           {"frame_count", clip.frame_count()}});
  }
  return static_cast<std::size_t>(local);
}

}  // namespace

DiffFrame diff_frames(const AnimationSet& set, std::size_t clip_a,
                      std::size_t clip_b, std::span<const std::int64_t> offsets,
                      std::int64_t frame) {
  if (clip_a >= set.size() || clip_b >= set.size()) {
    throw StructuralError("clip index out of range");
  }
  if (clip_a == clip_b) {
    throw StructuralError("diff needs two different clips",
                          {{"clip", set.clip(clip_a).id()}});
  }
  if (offsets.size() < set.size()) {
    throw StructuralError("one timeline offset per clip is required");
  }
  const AnimationClip& a = set.clip(clip_a);
  const AnimationClip& b = set.clip(clip_b);
  DiffFrame diff;
  diff.frame = frame;
  diff.local_a = local_frame(a, offsets[clip_a], frame);
  diff.local_b = local_frame(b, offsets[clip_b], frame);
  const GlobalPose pa = forward_kinematics(a.skeleton(), a.frame(diff.local_a));
  const GlobalPose pb = forward_kinematics(b.skeleton(), b.frame(diff.local_b));
  diff.joint_pairs.reserve(pa.positions.size());
  for (std::size_t j = 0; j < pa.positions.size(); ++j) {
    diff.joint_pairs.push_back(
        {pa.positions[j], pb.positions[j], (pa.positions[j] - pb.positions[j]).norm()});
  }
  return diff;
}

double mean_diff_distance(const AnimationSet& set, std::size_t clip_a,
                          std::size_t clip_b) {
  const std::vector<std::int64_t> zero(set.size(), 0);
  const std::size_t frames =
      std::min(set.clip(clip_a).frame_count(), set.clip(clip_b).frame_count());
  double total = 0.0;
  std::size_t count = 0;
  for (std::size_t f = 0; f < frames; ++f) {
    const DiffFrame diff =
        diff_frames(set, clip_a, clip_b, zero, static_cast<std::int64_t>(f));
    for (const JointPair& pair : diff.joint_pairs) {
      total += pair.distance;
      ++count;
    }
  }
  return count > 0 ? total / static_cast<double>(count) : 0.0;
}

}  // namespace animlens
