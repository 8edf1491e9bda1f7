#include "animlens/server/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "animlens/diff.hpp"
#include "animlens/errors.hpp"
#include "animlens/serialize.hpp"
#include "animlens/spatial.hpp"

namespace animlens::server {

using nlohmann::json;

namespace {

constexpr double kFrameWidth = 4.0;   // svg px per frame
constexpr double kRowHeight = 24.0;
constexpr double kLabelWidth = 120.0;

std::string escape_xml(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace

std::vector<SceneObject> scene_from_json(const json& doc) {
  const json& list = doc.is_object() ? doc.value("objects", json()) : doc;
  if (!list.is_array()) throw ValidationError("scene must be an array of objects or {objects: [...]}");
  std::vector<SceneObject> objects;
  for (const json& o : list) objects.push_back(scene_object_from_json(o));
  return objects;
}

json build_report(Session& session, const ReportOptions& options) {
  if (options.camera) session.set_camera(*options.camera);
  session.set_objects(options.scene);

  const AnimationSet& set = session.animations();
  const Skeleton& skeleton = set.skeleton();
  const std::vector<std::string> ids = session.clip_ids();

  json clips = json::array();
  for (std::size_t i = 0; i < set.size(); ++i) {
    clips.push_back({{"id", ids[i]},
                     {"source_name", set.source_names()[i]},
                     {"frame_count", set.clip(i).frame_count()}});
  }

  const PoseClustering& clustering = *session.pose_clustering();
  json cluster_doc = to_json(clustering, ids);
  json segments = json::array();
  for (const json& clip : cluster_doc["clips"]) {
    segments.push_back({{"clip_id", clip["id"]},
                        {"labels_rle", clip["labels_rle"]},
                        {"segments", clip["segments"]}});
  }
  cluster_doc.erase("clips");

  json keyposes = json::array();
  for (std::size_t i = 0; i < set.size(); ++i) {
    const KeyposeSet& kp = (*session.keyposes())[i];
    const std::vector<GlobalPose> poses = forward_kinematics(set.clip(i));
    keyposes.push_back({{"clip_id", kp.clip_id},
                        {"frames", kp.frames},
                        {"reconstruction_error", reconstruction_error(poses, kp.frames)}});
  }

  json stats_doc = json::array();
  const auto paths = session.joint_paths();
  for (std::size_t i = 0; i < set.size(); ++i) {
    json joints = json::array();
    for (const JointPath& path : (*paths)[i]) {
      const PathStats stats = path_stats(path, skeleton.up_axis());
      joints.push_back({{"joint", skeleton.joint(path.joint).name},
                        {"arc_length", stats.arc_length},
                        {"bbox_min", vec3_to_json(stats.bbox_min)},
                        {"bbox_max", vec3_to_json(stats.bbox_max)},
                        {"max_height", stats.max_height}});
    }
    stats_doc.push_back({{"clip_id", ids[i]}, {"joints", std::move(joints)}});
  }

  json collisions = json::array();
  for (const CollisionEvent& e : *session.collisions()) {
    json item = to_json(e);
    item["joint_name"] = skeleton.joint(e.joint).name;
    collisions.push_back(std::move(item));
  }

  json diffs = json::array();
  for (std::size_t a = 0; a < set.size(); ++a) {
    for (std::size_t b = a + 1; b < set.size(); ++b) {
      diffs.push_back({{"a", ids[a]},
                       {"b", ids[b]},
                       {"mean_distance", mean_diff_distance(set, a, b)}});
    }
  }

  return {{"version", kSessionSchemaVersion},
          {"seed", session.lens().params.seed},
          {"fps", session.timeline().fps},
          {"clips", std::move(clips)},
          {"clusters", std::move(cluster_doc)},
          {"segments", std::move(segments)},
          {"keyposes", std::move(keyposes)},
          {"path_stats", std::move(stats_doc)},
          {"collisions", std::move(collisions)},
          {"pairwise_diff", std::move(diffs)},
          {"camera", to_json(session.camera())},
          {"scene", {{"objects", [&] {
                        json objects = json::array();
                        for (const SceneObject& o : session.objects()) objects.push_back(to_json(o));
                        return objects;
                      }()}}}};
}

std::string pose_lens_svg(const PoseClustering& clustering,
                          const std::vector<std::string>& clip_ids) {
  std::size_t longest = 1;
  for (const auto& labels : clustering.labels) longest = std::max(longest, labels.size());
  const double width = kLabelWidth + kFrameWidth * static_cast<double>(longest);
  const double height = kRowHeight * static_cast<double>(clustering.labels.size());
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(width)
      << "\" height=\"" << fmt(height) << "\">\n";
  for (std::size_t i = 0; i < clustering.segments.size(); ++i) {
    const double y = kRowHeight * static_cast<double>(i);
    const std::string id = i < clip_ids.size() ? clip_ids[i] : std::to_string(i);
    svg << "  <text x=\"4\" y=\"" << fmt(y + 16) << "\" font-size=\"12\">"
        << escape_xml(id) << "</text>\n";
    for (const Segment& s : clustering.segments[i]) {
      svg << "  <rect x=\"" << fmt(kLabelWidth + kFrameWidth * s.start_frame)
          << "\" y=\"" << fmt(y + 2) << "\" width=\""
          << fmt(kFrameWidth * (s.end_frame - s.start_frame)) << "\" height=\""
          << fmt(kRowHeight - 4) << "\" fill=\"" << cluster_color(s.cluster_id)
          << "\"><title>cluster " << s.cluster_id << "</title></rect>\n";
    }
  }
  svg << "</svg>\n";
  return svg.str();
}

std::string joint_lens_svg(const JointCurves& curves) {
  std::size_t longest = 1;
  for (const auto& samples : curves.clips) longest = std::max(longest, samples.size());
  const double row = 2.0 * kRowHeight;
  const double width = kLabelWidth + kFrameWidth * static_cast<double>(longest);
  const double height = row * static_cast<double>(curves.clips.size());
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(width)
      << "\" height=\"" << fmt(height) << "\">\n";
  for (std::size_t i = 0; i < curves.clips.size(); ++i) {
    const double top = row * static_cast<double>(i);
    svg << "  <text x=\"4\" y=\"" << fmt(top + 16) << "\" font-size=\"12\">"
        << escape_xml(curves.clip_ids[i]) << "</text>\n";
    const auto polyline = [&](auto value, const char* colour) {
      svg << "  <polyline fill=\"none\" stroke=\"" << colour << "\" points=\"";
      for (const CurveSample& s : curves.clips[i]) {
        svg << fmt(kLabelWidth + kFrameWidth * s.frame) << ','
            << fmt(top + row - 2 - (row - 4) * value(s)) << ' ';
      }
      svg << "\"/>\n";
    };
    polyline([](const CurveSample& s) { return s.bar_x; }, "#d95f02");
    polyline([](const CurveSample& s) { return s.bar_y; }, "#1b9e77");
    for (const CurveSample& s : curves.clips[i]) {
      if (!s.out_of_view) continue;
      svg << "  <circle cx=\"" << fmt(kLabelWidth + kFrameWidth * s.frame) << "\" cy=\""
          << fmt(top + row - 2) << "\" r=\"1.5\" fill=\"none\" stroke=\"#666\"/>\n";
    }
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace animlens::server
