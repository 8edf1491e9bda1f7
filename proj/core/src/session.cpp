#include "animlens/session.hpp"

#include <algorithm>
#include <cstring>
#include <utility>

#include "animlens/clip_json.hpp"
#include "animlens/errors.hpp"
#include "animlens/serialize.hpp"

namespace animlens {

std::uint64_t content_hash(std::string_view bytes, std::uint64_t seed) {
  std::uint64_t h = seed;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

namespace {

std::uint64_t mix(std::uint64_t h, std::uint64_t value) {
  char buf[sizeof value];
  std::memcpy(buf, &value, sizeof value);
  return content_hash(std::string_view(buf, sizeof buf), h);
}

std::uint64_t mix(std::uint64_t h, double value) {
  std::uint64_t bits;
  std::memcpy(&bits, &value, sizeof bits);
  return mix(h, bits);
}

std::uint64_t hash_set(const AnimationSet& set) {
  std::uint64_t h = content_hash("animation-set");
  for (const AnimationClip& clip : set.clips()) {
    h = content_hash(clip.id(), h);
    h = content_hash(emit_clip_json(clip), h);
  }
  return h;
}

template <typename T, typename Compute>
std::shared_ptr<const T> memoized(std::optional<std::uint64_t>& key,
                                  std::shared_ptr<const T>& value,
                                  std::uint64_t wanted, std::size_t& counter,
                                  Compute&& compute) {
  if (!key || *key != wanted || !value) {
    value = std::make_shared<const T>(compute());
    key = wanted;
    ++counter;
  }
  return value;
}

}  // namespace

Session::Session(AnimationSet animations, const EngineConfig& config)
    : animations_(std::move(animations)),
      set_hash_(hash_set(animations_)),
      timeline_(make_timeline(animations_.size(), config.fps)),
      clustering_params_(config.clustering_params()) {
  lens_.params = config.lens_params();
}

std::vector<std::string> Session::clip_ids() const {
  std::vector<std::string> ids;
  ids.reserve(animations_.size());
  for (const AnimationClip& clip : animations_.clips()) ids.push_back(clip.id());
  return ids;
}

std::size_t Session::clip_index(std::string_view id) const {
  if (auto index = animations_.find_clip(id)) return *index;
  throw NotFound("unknown clip '" + std::string(id) + "'", {{"clip", std::string(id)}});
}

std::size_t Session::joint_index(std::string_view name) const {
  if (auto index = animations_.skeleton().find(name)) return *index;
  throw NotFound("unknown joint '" + std::string(name) + "'",
                 {{"joint", std::string(name)}});
}

void Session::add_object(SceneObject object) {
  validate(object);
  for (const SceneObject& existing : objects_) {
    if (existing.id == object.id) {
      throw ValidationError("object id '" + object.id + "' already exists",
                            {{"object_id", object.id}});
    }
  }
  objects_.push_back(std::move(object));
}

void Session::update_object(SceneObject object) {
  validate(object);
  for (SceneObject& existing : objects_) {
    if (existing.id == object.id) {
      existing = std::move(object);
      return;
    }
  }
  throw NotFound("unknown object '" + object.id + "'", {{"object_id", object.id}});
}

void Session::remove_object(std::string_view id) {
  auto it = std::find_if(objects_.begin(), objects_.end(),
                         [&](const SceneObject& o) { return o.id == id; });
  if (it == objects_.end()) {
    throw NotFound("unknown object '" + std::string(id) + "'",
                   {{"object_id", std::string(id)}});
  }
  objects_.erase(it);
}

void Session::set_objects(std::vector<SceneObject> objects) {
  for (std::size_t i = 0; i < objects.size(); ++i) {
    validate(objects[i]);
    for (std::size_t j = 0; j < i; ++j) {
      if (objects[j].id == objects[i].id) {
        throw ValidationError("object id '" + objects[i].id + "' is duplicated",
                              {{"object_id", objects[i].id}});
      }
    }
  }
  objects_ = std::move(objects);
}

void Session::set_camera(const CameraSpec& camera) {
  validate(camera);
  camera_ = camera;
}

std::size_t Session::selected_count() const {
  return static_cast<std::size_t>(
      std::count_if(timeline_.tracks.begin(), timeline_.tracks.end(),
                    [](const ClipTrack& t) { return t.selected; }));
}

void Session::set_timeline(TimelineState timeline) {
  validate(timeline, animations_.size());
  timeline_ = std::move(timeline);
  if (lens_.camera_lens == CameraLens::kDiff && selected_count() != 2) {
    lens_.camera_lens = CameraLens::kOverlay;
    diff_auto_disabled_ = true;
  }
}

void Session::tick(double wall_dt) {
  const std::vector<std::size_t> lengths = animations_.clip_lengths();
  timeline_ = animlens::tick(timeline_, wall_dt, lengths);
}

void Session::set_lens(LensConfig lens) {
  const std::size_t joints = animations_.skeleton().size();
  if (lens.temporal_joint >= joints) {
    throw ValidationError("temporal_joint out of range",
                          {{"temporal_joint", lens.temporal_joint}});
  }
  for (std::size_t j : lens.joint_filter) {
    if (j >= joints) {
      throw ValidationError("joint_filter entry out of range", {{"joint", j}});
    }
  }
  if (lens.params.keypose_k < 2) {
    throw ValidationError("keypose_k must be at least 2",
                          {{"keypose_k", lens.params.keypose_k}});
  }
  if (lens.params.median_window < 1) {
    throw ValidationError("median_window must be at least 1",
                          {{"median_window", lens.params.median_window}});
  }
  if (lens.camera_lens == CameraLens::kDiff && selected_count() != 2) {
    throw ValidationError("the diff lens needs exactly two selected clips",
                          {{"selected", selected_count()}});
  }
  lens_ = std::move(lens);
  clustering_params_.median_window = lens_.params.median_window;
  diff_auto_disabled_ = false;
}

void Session::set_clustering_params(const ClusteringParams& params) {
  if (params.k_min < 1 || params.k_max < params.k_min) {
    throw ValidationError("need 1 <= k_min <= k_max",
                          {{"k_min", params.k_min}, {"k_max", params.k_max}});
  }
  if (params.median_window < 1) {
    throw ValidationError("median_window must be at least 1",
                          {{"median_window", params.median_window}});
  }
  clustering_params_ = params;
  lens_.params.median_window = params.median_window;
}

std::uint64_t Session::camera_hash() const {
  std::uint64_t h = content_hash("camera");
  for (int i = 0; i < 3; ++i) h = mix(h, camera_.position[i]);
  h = mix(h, camera_.orientation.w());
  h = mix(h, camera_.orientation.x());
  h = mix(h, camera_.orientation.y());
  h = mix(h, camera_.orientation.z());
  h = mix(h, camera_.vertical_fov);
  h = mix(h, camera_.aspect);
  return mix(h, camera_.near);
}

std::uint64_t Session::scene_hash() const {
  std::uint64_t h = content_hash("scene");
  for (const SceneObject& o : objects_) {
    h = content_hash(o.id, h);
    h = mix(h, static_cast<std::uint64_t>(o.kind));
    for (int i = 0; i < 3; ++i) h = mix(h, o.position[i]);
    h = mix(h, o.rotation.w());
    h = mix(h, o.rotation.x());
    h = mix(h, o.rotation.y());
    h = mix(h, o.rotation.z());
    for (int i = 0; i < 3; ++i) h = mix(h, o.scale[i]);
  }
  return h;
}

std::shared_ptr<const PoseClustering> Session::pose_clustering() {
  const ClusteringParams& p = clustering_params_;
  std::uint64_t key = mix(set_hash_, lens_.params.seed);
  key = mix(key, static_cast<std::uint64_t>(p.k_min));
  key = mix(key, static_cast<std::uint64_t>(p.k_max));
  key = mix(key, static_cast<std::uint64_t>(p.median_window));
  key = mix(key, static_cast<std::uint64_t>(p.dba_max_iter));
  key = mix(key, p.dba_tol);
  key = mix(key, static_cast<std::uint64_t>(p.kmeans_max_iter));
  return memoized(clustering_cache_.key, clustering_cache_.value, key,
                  counters_.clustering, [&] {
                    return cluster_poses(animations_, clustering_params_,
                                         lens_.params.seed);
                  });
}

std::shared_ptr<const std::vector<KeyposeSet>> Session::keyposes() {
  const std::size_t k = lens_.params.keypose_k;
  const std::uint64_t key = mix(mix(set_hash_, content_hash("keyposes")),
                                static_cast<std::uint64_t>(k));
  return memoized(keypose_cache_.key, keypose_cache_.value, key,
                  counters_.keyposes, [&] {
                    std::vector<KeyposeSet> out;
                    for (const AnimationClip& clip : animations_.clips()) {
                      out.push_back(extract_keyposes(clip, k));
                    }
                    return out;
                  });
}

std::shared_ptr<const JointCurves> Session::joint_curves(std::size_t joint) {
  if (joint >= animations_.skeleton().size()) {
    throw NotFound("joint index out of range", {{"joint", joint}});
  }
  const std::uint64_t key =
      mix(mix(set_hash_, camera_hash()), static_cast<std::uint64_t>(joint));
  Cached<JointCurves>& cache = curve_cache_[joint];
  return memoized(cache.key, cache.value, key, counters_.joint_curves, [&] {
    return animlens::joint_curves(animations_, camera_, joint);
  });
}

std::shared_ptr<const std::vector<std::vector<JointPath>>> Session::joint_paths() {
  const std::uint64_t key = mix(set_hash_, content_hash("paths"));
  return memoized(path_cache_.key, path_cache_.value, key, counters_.paths, [&] {
    std::vector<std::vector<JointPath>> out;
    for (const AnimationClip& clip : animations_.clips()) {
      out.push_back(animlens::joint_paths(clip));
    }
    return out;
  });
}

std::shared_ptr<const std::vector<CollisionEvent>> Session::collisions() {
  const std::uint64_t key = mix(set_hash_, scene_hash());
  if (collision_cache_.key && *collision_cache_.key == key && collision_cache_.value) {
    return collision_cache_.value;
  }
  auto paths = joint_paths();
  return memoized(collision_cache_.key, collision_cache_.value, key,
                  counters_.collisions, [&] {
                    std::vector<CollisionEvent> out;
                    for (const auto& clip_paths : *paths) {
                      for (const JointPath& path : clip_paths) {
                        auto events = path_collisions(path, objects_);
                        out.insert(out.end(), events.begin(), events.end());
                      }
                    }
                    return out;
                  });
}

ComparisonBundle Session::recompute() {
  ComparisonBundle bundle;
  bundle.clustering = pose_clustering();
  bundle.keyposes = keyposes();
  bundle.joint_curves = joint_curves(lens_.temporal_joint);
  bundle.paths = joint_paths();
  bundle.collisions = collisions();
  return bundle;
}

nlohmann::json Session::to_json() const {
  json clips = json::array();
  for (std::size_t i = 0; i < animations_.size(); ++i) {
    const AnimationClip& clip = animations_.clip(i);
    clips.push_back({{"id", clip.id()},
                     {"source_name", animations_.source_names()[i]},
                     {"clip", clip_to_json(clip)}});
  }
  json objects = json::array();
  for (const SceneObject& o : objects_) objects.push_back(animlens::to_json(o));
  const ClusteringParams& p = clustering_params_;
  return {{"version", kSessionSchemaVersion},
          {"fps", timeline_.fps},
          {"clips", std::move(clips)},
          {"scene", {{"objects", std::move(objects)}}},
          {"camera", animlens::to_json(camera_)},
          {"timeline", animlens::to_json(timeline_, clip_ids())},
          {"lens", animlens::to_json(lens_)},
          {"clustering",
           {{"k_min", p.k_min},
            {"k_max", p.k_max},
            {"median_window", p.median_window},
            {"dba_max_iter", p.dba_max_iter},
            {"dba_tol", p.dba_tol},
            {"kmeans_max_iter", p.kmeans_max_iter}}}};
}

Session Session::from_json(const nlohmann::json& doc, const EngineConfig& config) {
  if (!doc.is_object()) throw ValidationError("session document must be an object");
  if (!doc.contains("version") || doc["version"] != kSessionSchemaVersion) {
    throw ValidationError("unsupported session version",
                          {{"expected", kSessionSchemaVersion}});
  }
  const json& clip_docs = doc.value("clips", json::array());
  if (!clip_docs.is_array()) throw ValidationError("clips must be an array");
  std::vector<AnimationClip> clips;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < clip_docs.size(); ++i) {
    const json& entry = clip_docs[i];
    const std::string path = "clips[" + std::to_string(i) + "]";
    if (!entry.is_object() || !entry.contains("id") || !entry["id"].is_string() ||
        !entry.contains("clip")) {
      throw ValidationError(path + ": expected {id, clip}", {{"path", path}});
    }
    const std::string id = entry["id"].get<std::string>();
    clips.push_back(clip_from_json(entry["clip"], id, path + ".clip"));
    names.push_back(entry.value("source_name", id));
  }
  LoadOptions options;
  options.fps = doc.contains("fps") && doc["fps"].is_number() ? doc["fps"].get<double>()
                                                                 : config.fps;
  EngineConfig session_config = config;
  session_config.fps = options.fps;
  Session session(assemble_set(std::move(clips), std::move(names), options),
                  session_config);

  if (auto it = doc.find("clustering"); it != doc.end() && it->is_object()) {
    ClusteringParams p = session.clustering_params_;
    p.k_min = it->value("k_min", p.k_min);
    p.k_max = it->value("k_max", p.k_max);
    p.median_window = it->value("median_window", p.median_window);
    p.dba_max_iter = it->value("dba_max_iter", p.dba_max_iter);
    p.dba_tol = it->value("dba_tol", p.dba_tol);
    p.kmeans_max_iter = it->value("kmeans_max_iter", p.kmeans_max_iter);
    session.set_clustering_params(p);
  }
  if (auto it = doc.find("scene"); it != doc.end()) {
    std::vector<SceneObject> objects;
    for (const json& o : it->value("objects", json::array())) {
      objects.push_back(scene_object_from_json(o));
    }
    session.set_objects(std::move(objects));
  }
  if (auto it = doc.find("camera"); it != doc.end()) {
    session.set_camera(camera_from_json(*it));
  }
  if (auto it = doc.find("timeline"); it != doc.end()) {
    session.set_timeline(timeline_from_json(*it, session.timeline_, session.clip_ids()));
  }
  if (auto it = doc.find("lens"); it != doc.end()) {
    session.set_lens(lens_from_json(*it, session.lens_, session.animations_.skeleton()));
  }
  return session;
}

}  // namespace animlens
