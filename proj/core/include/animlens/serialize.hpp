#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "animlens/camera.hpp"
#include "animlens/collision.hpp"
#include "animlens/diff.hpp"
#include "animlens/joint_curves.hpp"
#include "animlens/keyposes.hpp"
#include "animlens/lens_config.hpp"
#include "animlens/pose_clustering.hpp"
#include "animlens/scene.hpp"
#include "animlens/spatial.hpp"
#include "animlens/timeline.hpp"

namespace animlens {

using nlohmann::json;

json vec3_to_json(const Vec3& v);
Vec3 vec3_from_json(const json& j, const std::string& path);
json quat_to_json(const Quat& q);  // [w, x, y, z]
Quat quat_from_json(const json& j, const std::string& path);

json to_json(const GlobalPose& pose);
json to_json(const PoseClustering& clustering,
             const std::vector<std::string>& clip_ids);
json to_json(const KeyposeSet& keyposes);
json to_json(const JointPath& path);
json to_json(const CollisionEvent& event);
json to_json(const JointCurves& curves);
json to_json(const DiffFrame& diff);
json to_json(const CameraSpec& camera);
json to_json(const SceneObject& object);
json to_json(const TimelineState& timeline,
             const std::vector<std::string>& clip_ids);
json to_json(const LensConfig& lens);

/// Labels as [[cluster_id, run_length], ...].
json labels_rle(const std::vector<std::size_t>& labels);

// Readers throw ValidationError naming the offending field.
CameraSpec camera_from_json(const json& j);
SceneObject scene_object_from_json(const json& j);

/// Applies the fields present in `j` on top of `base`. Tracks may be
/// addressed by "id" (looked up in clip_ids) or by position.
TimelineState timeline_from_json(const json& j, TimelineState base,
                                 const std::vector<std::string>& clip_ids);

/// Joint filter entries may be indices or names; "chains" expand through
/// the skeleton's chain map.
LensConfig lens_from_json(const json& j, LensConfig base,
                          const Skeleton& skeleton);

}  // namespace animlens
