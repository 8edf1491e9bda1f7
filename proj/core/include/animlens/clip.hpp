#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "animlens/math.hpp"
#include "animlens/skeleton.hpp"

namespace animlens {

inline constexpr double kDefaultFps = 24.0;

struct Frame {
  Vec3 root_translation = Vec3::Zero();
  std::vector<Quat> rotations;  // local rotation per joint
};

// Fixed-rate sequence of local transforms. Immutable once built; the
// constructor checks frame count, per-frame joint count, unit quaternions
// (1e-6) and fps > 0.
class AnimationClip {
 public:
  AnimationClip(std::string id, std::shared_ptr<const Skeleton> skeleton,
                double fps, std::vector<Frame> frames);

  const std::string& id() const noexcept { return id_; }
  const Skeleton& skeleton() const noexcept { return *skeleton_; }
  const std::shared_ptr<const Skeleton>& skeleton_ptr() const noexcept {
    return skeleton_;
  }
  double fps() const noexcept { return fps_; }
  std::size_t frame_count() const noexcept { return frames_.size(); }
  const std::vector<Frame>& frames() const noexcept { return frames_; }
  const Frame& frame(std::size_t i) const { return frames_.at(i); }

  AnimationClip with_id(std::string id) const;

 private:
  std::string id_;
  std::shared_ptr<const Skeleton> skeleton_;
  double fps_;
  std::vector<Frame> frames_;
};

}  // namespace animlens
