#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "animlens/scene.hpp"
#include "animlens/spatial.hpp"

namespace animlens {

struct FrameInterval {
  std::size_t start = 0;
  std::size_t end = 0;  // exclusive

  friend bool operator==(const FrameInterval&, const FrameInterval&) = default;
};

struct CollisionEvent {
  std::string clip_id;
  std::size_t joint = 0;
  std::string object_id;
  std::vector<FrameInterval> frame_intervals;  // sorted, disjoint
};

/// World-to-local mapping of a scene object. Throws ObjectDegenerate when
/// the object's transform is not invertible.
class PrimitiveFrame {
 public:
  explicit PrimitiveFrame(const SceneObject& object);

  PrimitiveKind kind() const noexcept { return kind_; }
  Vec3 to_local(const Vec3& world) const;

 private:
  PrimitiveKind kind_;
  Vec3 position_;
  Eigen::Matrix3d inverse_linear_;
};

/// Closed segment vs closed unit primitive, both in the primitive's frame.
bool segment_intersects_local(PrimitiveKind kind, const Vec3& a, const Vec3& b);

bool segment_intersects(const PrimitiveFrame& frame, const Vec3& a,
                        const Vec3& b);

/// A colliding segment [i, i+1] marks frames i and i+1; runs of colliding
/// segments merge into [first, last + 2). A single-frame path is tested as a
/// point. Objects with no contact produce no event.
std::vector<CollisionEvent> path_collisions(
    const JointPath& path, std::span<const SceneObject> scene);

}  // namespace animlens
