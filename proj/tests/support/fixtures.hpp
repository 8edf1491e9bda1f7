#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "animlens/animation_set.hpp"
#include "animlens/clip.hpp"
#include "animlens/kinematics.hpp"
#include "animlens/math.hpp"
#include "animlens/skeleton.hpp"

namespace animlens::testing {

// 15-joint Y-up humanoid in depth-first order, root "hips".
std::shared_ptr<const Skeleton> humanoid();

// root at the origin with one child one unit along +X.
std::shared_ptr<const Skeleton> two_joint_chain();

Frame rest_frame(const Skeleton& skeleton);

// Both shoulders raised by `shoulder_deg` about Z; `sway` adds a small
// spine bend (degrees) so frames are not exactly identical.
Frame arms_pose(const Skeleton& skeleton, double shoulder_deg, double sway);

// `idle` frames of arms-down followed by `up` frames of arms-up, with a
// sinusoidal spine sway of `sway_deg` amplitude. sway_deg = 0 gives a pure
// two-pose step.
AnimationClip step_clip(std::string id, std::size_t idle, std::size_t up,
                        double phase = 0.0, double sway_deg = 2.0);

AnimationClip constant_clip(std::string id, std::size_t frames);

// Root translating linearly along +X with a fixed pose.
AnimationClip linear_clip(std::string id, std::size_t frames);

// Slerped random keyframes every few frames plus a smooth root path.
AnimationClip random_smooth_clip(std::string id,
                                 std::shared_ptr<const Skeleton> skeleton,
                                 std::size_t frames, Rng& rng);

// Yaw about +Y and a ground-plane translation applied to the whole clip.
AnimationClip rigidly_transformed(const AnimationClip& clip, double yaw,
                                  const Vec3& ground_offset);

std::vector<PoseFeature> random_feature_sequence(Rng& rng, std::size_t length,
                                                 std::size_t dim);

Quat random_unit_quat(Rng& rng);
double uniform(Rng& rng, double lo, double hi);
Vec3 uniform_vec3(Rng& rng, double lo, double hi);

AnimationSet make_set(std::vector<AnimationClip> clips);

// BVH text with ZYX rotation channels on every joint and position channels
// on the root. Joints named "<parent>_end" without children become End Sites.
std::string to_bvh(const AnimationClip& clip);

}  // namespace animlens::testing
