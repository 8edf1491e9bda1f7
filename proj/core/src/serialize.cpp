#include "animlens/serialize.hpp"

#include <algorithm>
#include <cmath>

#include "animlens/errors.hpp"

namespace animlens {
namespace {

[[noreturn]] void invalid(const std::string& path, const std::string& what) {
  throw ValidationError(path + ": " + what, {{"path", path}});
}

double number(const json& j, const std::string& path) {
  if (!j.is_number()) invalid(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) invalid(path, "expected a finite number");
  return v;
}

std::int64_t integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) invalid(path, "expected an integer");
  return j.get<std::int64_t>();
}

std::size_t count(const json& j, const std::string& path) {
  const std::int64_t v = integer(j, path);
  if (v < 0) invalid(path, "expected a non-negative integer");
  return static_cast<std::size_t>(v);
}

bool boolean(const json& j, const std::string& path) {
  if (!j.is_boolean()) invalid(path, "expected true or false");
  return j.get<bool>();
}

std::string string(const json& j, const std::string& path) {
  if (!j.is_string()) invalid(path, "expected a string");
  return j.get<std::string>();
}

void require_object(const json& j, const std::string& path) {
  if (!j.is_object()) invalid(path, "expected an object");
}

}  // namespace

json vec3_to_json(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

Vec3 vec3_from_json(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 3) invalid(path, "expected [x, y, z]");
  return {number(j[0], path + "[0]"), number(j[1], path + "[1]"),
          number(j[2], path + "[2]")};
}

json quat_to_json(const Quat& q) {
  return json::array({q.w(), q.x(), q.y(), q.z()});
}

Quat quat_from_json(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 4) invalid(path, "expected [w, x, y, z]");
  Quat q(number(j[0], path + "[0]"), number(j[1], path + "[1]"),
         number(j[2], path + "[2]"), number(j[3], path + "[3]"));
  if (q.norm() < 1e-9) invalid(path, "zero quaternion");
  if (std::abs(q.norm() - 1.0) > 1e-6) q.normalize();
  return q;
}

json to_json(const GlobalPose& pose) {
  json positions = json::array();
  for (const Vec3& p : pose.positions) positions.push_back(vec3_to_json(p));
  return {{"positions", std::move(positions)}};
}

json labels_rle(const std::vector<std::size_t>& labels) {
  json runs = json::array();
  for (const Segment& s : run_length_segments(labels)) {
    runs.push_back({s.cluster_id, s.end_frame - s.start_frame});
  }
  return runs;
}

json to_json(const PoseClustering& clustering,
             const std::vector<std::string>& clip_ids) {
  json palette = json::array();
  json centroids = json::array();
  for (std::size_t c = 0; c < clustering.n_clusters; ++c) {
    palette.push_back(std::string(cluster_color(c)));
    json centroid = json::array();
    for (Eigen::Index k = 0; k < clustering.centroids[c].size(); ++k) {
      centroid.push_back(clustering.centroids[c][k]);
    }
    centroids.push_back(std::move(centroid));
  }
  json clips = json::array();
  for (std::size_t i = 0; i < clustering.labels.size(); ++i) {
    json segments = json::array();
    for (const Segment& s : clustering.segments[i]) {
      segments.push_back({{"cluster_id", s.cluster_id},
                          {"start_frame", s.start_frame},
                          {"end_frame", s.end_frame},
                          {"color", std::string(cluster_color(s.cluster_id))}});
    }
    clips.push_back({{"id", i < clip_ids.size() ? clip_ids[i] : std::to_string(i)},
                     {"frame_count", clustering.labels[i].size()},
                     {"labels_rle", labels_rle(clustering.labels[i])},
                     {"segments", std::move(segments)}});
  }
  return {{"n_clusters", clustering.n_clusters},
          {"seed", clustering.seed},
          {"palette", std::move(palette)},
          {"centroids", std::move(centroids)},
          {"clips", std::move(clips)}};
}

json to_json(const KeyposeSet& keyposes) {
  json poses = json::array();
  for (const GlobalPose& pose : keyposes.poses) poses.push_back(to_json(pose));
  return {{"clip_id", keyposes.clip_id},
          {"frames", keyposes.frames},
          {"poses", std::move(poses)}};
}

json to_json(const JointPath& path) {
  json points = json::array();
  for (const Vec3& p : path.points) points.push_back(vec3_to_json(p));
  return {{"clip_id", path.clip_id}, {"joint", path.joint}, {"points", std::move(points)}};
}

json to_json(const CollisionEvent& event) {
  json intervals = json::array();
  for (const FrameInterval& interval : event.frame_intervals) {
    intervals.push_back({{"start", interval.start}, {"end", interval.end}});
  }
  return {{"clip_id", event.clip_id},
          {"joint", event.joint},
          {"object_id", event.object_id},
          {"frame_intervals", std::move(intervals)}};
}

json to_json(const JointCurves& curves) {
  json clips = json::array();
  for (std::size_t i = 0; i < curves.clips.size(); ++i) {
    json samples = json::array();
    for (const CurveSample& s : curves.clips[i]) {
      samples.push_back({{"frame", s.frame},
                         {"bar_x", s.bar_x},
                         {"bar_y", s.bar_y},
                         {"out_of_view", s.out_of_view},
                         {"ndc_x", s.ndc_x},
                         {"ndc_y", s.ndc_y}});
    }
    clips.push_back({{"id", curves.clip_ids[i]}, {"samples", std::move(samples)}});
  }
  const CurveNormalization& n = curves.normalization;
  return {{"joint", curves.joint},
          {"normalization",
           {{"min_x", n.min_x}, {"max_x", n.max_x}, {"min_y", n.min_y}, {"max_y", n.max_y}}},
          {"clips", std::move(clips)}};
}

json to_json(const DiffFrame& diff) {
  json pairs = json::array();
  for (const JointPair& pair : diff.joint_pairs) {
    pairs.push_back({{"pos_a", vec3_to_json(pair.pos_a)},
                     {"pos_b", vec3_to_json(pair.pos_b)},
                     {"distance", pair.distance}});
  }
  return {{"frame", diff.frame},
          {"local_a", diff.local_a},
          {"local_b", diff.local_b},
          {"joint_pairs", std::move(pairs)}};
}

json to_json(const CameraSpec& camera) {
  return {{"position", vec3_to_json(camera.position)},
          {"orientation", quat_to_json(camera.orientation)},
          {"vertical_fov", camera.vertical_fov},
          {"aspect", camera.aspect},
          {"near", camera.near}};
}

json to_json(const SceneObject& object) {
  return {{"id", object.id},
          {"kind", std::string(to_string(object.kind))},
          {"position", vec3_to_json(object.position)},
          {"rotation", quat_to_json(object.rotation)},
          {"scale", vec3_to_json(object.scale)}};
}

json to_json(const TimelineState& timeline,
             const std::vector<std::string>& clip_ids) {
  json clips = json::array();
  for (std::size_t i = 0; i < timeline.tracks.size(); ++i) {
    clips.push_back({{"id", i < clip_ids.size() ? clip_ids[i] : std::to_string(i)},
                     {"offset_frames", timeline.tracks[i].offset_frames},
                     {"selected", timeline.tracks[i].selected}});
  }
  return {{"clips", std::move(clips)},
          {"playback_mode", std::string(to_string(timeline.mode))},
          {"speed", timeline.speed},
          {"current_frame", timeline.current_frame},
          {"fps", timeline.fps},
          {"playing", timeline.playing},
          {"loop", timeline.loop}};
}

json to_json(const LensConfig& lens) {
  json spatial = json::array();
  for (SpatialLens s : lens.spatial) spatial.push_back(std::string(to_string(s)));
  return {{"camera_lens", std::string(to_string(lens.camera_lens))},
          {"spatial", std::move(spatial)},
          {"joint_filter", lens.joint_filter},
          {"temporal_lens", std::string(to_string(lens.temporal_lens))},
          {"temporal_joint", lens.temporal_joint},
          {"params",
           {{"trace_n", lens.params.trace_n},
            {"keypose_k", lens.params.keypose_k},
            {"median_window", lens.params.median_window},
            {"seed", lens.params.seed}}}};
}

CameraSpec camera_from_json(const json& j) {
  require_object(j, "camera");
  CameraSpec camera;
  if (j.contains("position")) camera.position = vec3_from_json(j["position"], "position");
  if (j.contains("orientation")) {
    camera.orientation = quat_from_json(j["orientation"], "orientation");
  }
  if (j.contains("vertical_fov")) camera.vertical_fov = number(j["vertical_fov"], "vertical_fov");
  if (j.contains("aspect")) camera.aspect = number(j["aspect"], "aspect");
  if (j.contains("near")) camera.near = number(j["near"], "near");
  validate(camera);
  return camera;
}

SceneObject scene_object_from_json(const json& j) {
  require_object(j, "object");
  SceneObject object;
  if (!j.contains("id")) invalid("id", "missing field");
  object.id = string(j["id"], "id");
  if (!j.contains("kind")) invalid("kind", "missing field");
  object.kind = parse_primitive_kind(string(j["kind"], "kind"));
  if (j.contains("position")) object.position = vec3_from_json(j["position"], "position");
  if (j.contains("rotation")) object.rotation = quat_from_json(j["rotation"], "rotation");
  if (j.contains("scale")) {
    // Checked by validate(); a zero component is a validation failure.
    const json& s = j["scale"];
    if (!s.is_array() || s.size() != 3) invalid("scale", "expected [x, y, z]");
    object.scale = Vec3(number(s[0], "scale[0]"), number(s[1], "scale[1]"),
                        number(s[2], "scale[2]"));
  }
  validate(object);
  return object;
}

TimelineState timeline_from_json(const json& j, TimelineState base,
                                 const std::vector<std::string>& clip_ids) {
  require_object(j, "timeline");
  if (auto it = j.find("clips"); it != j.end()) {
    if (!it->is_array()) invalid("clips", "expected an array");
    for (std::size_t k = 0; k < it->size(); ++k) {
      const json& entry = (*it)[k];
      const std::string path = "clips[" + std::to_string(k) + "]";
      require_object(entry, path);
      std::size_t index = k;
      if (entry.contains("id")) {
        const std::string id = string(entry["id"], path + ".id");
        auto found = std::find(clip_ids.begin(), clip_ids.end(), id);
        if (found == clip_ids.end()) {
          throw NotFound("unknown clip '" + id + "'", {{"clip", id}});
        }
        index = static_cast<std::size_t>(found - clip_ids.begin());
      }
      if (index >= base.tracks.size()) invalid(path, "no such clip");
      if (entry.contains("offset_frames")) {
        base.tracks[index].offset_frames =
            integer(entry["offset_frames"], path + ".offset_frames");
      }
      if (entry.contains("selected")) {
        base.tracks[index].selected = boolean(entry["selected"], path + ".selected");
      }
    }
  }
  if (j.contains("playback_mode")) {
    base.mode = parse_playback_mode(string(j["playback_mode"], "playback_mode"));
  }
  if (j.contains("speed")) base.speed = number(j["speed"], "speed");
  if (j.contains("current_frame")) {
    base.current_frame = integer(j["current_frame"], "current_frame");
  }
  if (j.contains("fps")) base.fps = number(j["fps"], "fps");
  if (j.contains("playing")) base.playing = boolean(j["playing"], "playing");
  if (j.contains("loop")) base.loop = boolean(j["loop"], "loop");
  validate(base, clip_ids.size());
  return base;
}

namespace {

std::size_t joint_ref(const json& j, const std::string& path,
                      const Skeleton& skeleton) {
  if (j.is_string()) {
    const std::string name = j.get<std::string>();
    if (auto index = skeleton.find(name)) return *index;
    throw NotFound("unknown joint '" + name + "'", {{"joint", name}});
  }
  const std::size_t index = count(j, path);
  if (index >= skeleton.size()) invalid(path, "joint index out of range");
  return index;
}

}  // namespace

LensConfig lens_from_json(const json& j, LensConfig base, const Skeleton& skeleton) {
  require_object(j, "lens");
  if (j.contains("camera_lens")) {
    base.camera_lens = parse_camera_lens(string(j["camera_lens"], "camera_lens"));
  }
  if (auto it = j.find("spatial"); it != j.end()) {
    if (!it->is_array()) invalid("spatial", "expected an array");
    base.spatial.clear();
    for (std::size_t k = 0; k < it->size(); ++k) {
      base.spatial.insert(parse_spatial_lens(
          string((*it)[k], "spatial[" + std::to_string(k) + "]")));
    }
  }
  if (auto it = j.find("joint_filter"); it != j.end()) {
    base.joint_filter.clear();
    json joints = json::array();
    json chains = json::array();
    if (it->is_array()) {
      joints = *it;
    } else if (it->is_object()) {
      if (it->contains("joints")) joints = (*it)["joints"];
      if (it->contains("chains")) chains = (*it)["chains"];
    } else {
      invalid("joint_filter", "expected an array or {joints, chains}");
    }
    if (!joints.is_array() || !chains.is_array()) {
      invalid("joint_filter", "joints and chains must be arrays");
    }
    for (std::size_t k = 0; k < joints.size(); ++k) {
      base.joint_filter.insert(
          joint_ref(joints[k], "joint_filter[" + std::to_string(k) + "]", skeleton));
    }
    for (std::size_t k = 0; k < chains.size(); ++k) {
      const std::string name =
          string(chains[k], "joint_filter.chains[" + std::to_string(k) + "]");
      auto chain = skeleton.chains().find(name);
      if (chain == skeleton.chains().end()) {
        throw NotFound("unknown chain '" + name + "'", {{"chain", name}});
      }
      base.joint_filter.insert(chain->second.begin(), chain->second.end());
    }
  }
  if (j.contains("temporal_lens")) {
    base.temporal_lens = parse_temporal_lens(string(j["temporal_lens"], "temporal_lens"));
  }
  if (j.contains("temporal_joint")) {
    base.temporal_joint = joint_ref(j["temporal_joint"], "temporal_joint", skeleton);
  }
  if (auto it = j.find("params"); it != j.end()) {
    require_object(*it, "params");
    const json& p = *it;
    if (p.contains("trace_n")) base.params.trace_n = count(p["trace_n"], "params.trace_n");
    if (p.contains("keypose_k")) {
      base.params.keypose_k = count(p["keypose_k"], "params.keypose_k");
    }
    if (p.contains("median_window")) {
      base.params.median_window = count(p["median_window"], "params.median_window");
    }
    if (p.contains("seed")) {
      if (!p["seed"].is_number_unsigned() && !p["seed"].is_number_integer()) {
        invalid("params.seed", "expected an integer");
      }
      if (p["seed"].is_number_integer() && p["seed"].get<std::int64_t>() < 0) {
        invalid("params.seed", "expected a non-negative integer");
      }
      base.params.seed = p["seed"].get<std::uint64_t>();
    }
  }
  if (base.params.keypose_k < 2) invalid("params.keypose_k", "must be >= 2");
  if (base.params.median_window < 1) invalid("params.median_window", "must be >= 1");
  return base;
}

}  // namespace animlens
