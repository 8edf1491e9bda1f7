#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "animlens/camera.hpp"
#include "animlens/joint_curves.hpp"
#include "animlens/pose_clustering.hpp"
#include "animlens/scene.hpp"
#include "animlens/session.hpp"

namespace animlens::server {

struct ReportOptions {
  std::optional<CameraSpec> camera;
  std::vector<SceneObject> scene;
  std::optional<std::string> joint;  // joint lens joint, default: root
};

/// Applies camera/scene to the session and builds the batch comparison
/// report: clusters, segments, keyposes, per-joint path stats, collisions
/// and pairwise mean diff distances.
nlohmann::json build_report(Session& session, const ReportOptions& options);

/// Timeline strip with one row per clip, segments coloured by cluster id.
std::string pose_lens_svg(const PoseClustering& clustering,
                          const std::vector<std::string>& clip_ids);

/// Per clip, the normalised horizontal and vertical bars over time; samples
/// outside the view are marked with hollow circles.
std::string joint_lens_svg(const JointCurves& curves);

/// Parses a scene file: an array of objects or {"objects": [...]}.
std::vector<SceneObject> scene_from_json(const nlohmann::json& doc);

}  // namespace animlens::server
