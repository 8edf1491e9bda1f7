#include "animlens/clip.hpp"

#include <cmath>

#include "animlens/errors.hpp"

namespace animlens {

AnimationClip::AnimationClip(std::string id,
                             std::shared_ptr<const Skeleton> skeleton,
                             double fps, std::vector<Frame> frames)
    : id_(std::move(id)),
      skeleton_(std::move(skeleton)),
      fps_(fps),
      frames_(std::move(frames)) {
  if (!skeleton_) throw StructuralError("clip '" + id_ + "' has no skeleton");
  if (!(fps_ > 0.0) || !std::isfinite(fps_)) {
    throw StructuralError("clip '" + id_ + "' has non-positive fps",
                          {{"clip", id_}});
  }
  if (frames_.empty()) {
    throw StructuralError("clip '" + id_ + "' has no frames", {{"clip", id_}});
  }
  const std::size_t joints = skeleton_->size();
  for (std::size_t f = 0; f < frames_.size(); ++f) {
    const Frame& frame = frames_[f];
    if (frame.rotations.size() != joints) {
      throw StructuralError(
          "frame " + std::to_string(f) + " has " +
              std::to_string(frame.rotations.size()) + " rotations, expected " +
              std::to_string(joints),
          {{"clip", id_}, {"frame", f}});
    }
    if (!frame.root_translation.allFinite()) {
      throw StructuralError("non-finite root translation",
                            {{"clip", id_}, {"frame", f}});
    }
    for (std::size_t j = 0; j < joints; ++j) {
      if (std::abs(frame.rotations[j].norm() - 1.0) > 1e-6) {
        throw StructuralError("rotation is not unit length",
                              {{"clip", id_}, {"frame", f}, {"joint", j}});
      }
    }
  }
}

AnimationClip AnimationClip::with_id(std::string id) const {
  AnimationClip copy = *this;
  copy.id_ = std::move(id);
  return copy;
}

}  // namespace animlens
