#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "animlens/animation_set.hpp"
#include "animlens/camera.hpp"
#include "animlens/collision.hpp"
#include "animlens/config.hpp"
#include "animlens/joint_curves.hpp"
#include "animlens/keyposes.hpp"
#include "animlens/lens_config.hpp"
#include "animlens/pose_clustering.hpp"
#include "animlens/scene.hpp"
#include "animlens/spatial.hpp"
#include "animlens/timeline.hpp"

namespace animlens {

inline constexpr int kSessionSchemaVersion = 1;

struct ComparisonBundle {
  std::shared_ptr<const PoseClustering> clustering;
  std::shared_ptr<const std::vector<KeyposeSet>> keyposes;
  std::shared_ptr<const JointCurves> joint_curves;
  std::shared_ptr<const std::vector<std::vector<JointPath>>> paths;  // [clip][joint]
  std::shared_ptr<const std::vector<CollisionEvent>> collisions;
};

// How many times each analysis kernel actually ran.
struct KernelCounters {
  std::size_t clustering = 0;
  std::size_t keyposes = 0;
  std::size_t joint_curves = 0;
  std::size_t paths = 0;
  std::size_t collisions = 0;

  std::size_t total() const {
    return clustering + keyposes + joint_curves + paths + collisions;
  }
};

/// 64-bit FNV-1a.
std::uint64_t content_hash(std::string_view bytes,
                           std::uint64_t seed = 0xcbf29ce484222325ULL);

/// Mutable comparison state around an immutable animation set.
///
/// Analysis results are computed lazily and memoised on a content hash of
/// exactly the inputs each one depends on, so edits only invalidate what
/// they touch. Not thread-safe; callers serialise access per session.
class Session {
 public:
  explicit Session(AnimationSet animations, const EngineConfig& config = {});

  const AnimationSet& animations() const noexcept { return animations_; }
  std::vector<std::string> clip_ids() const;
  std::size_t clip_index(std::string_view id) const;     // NotFound
  std::size_t joint_index(std::string_view name) const;  // NotFound

  const std::vector<SceneObject>& objects() const noexcept { return objects_; }
  void add_object(SceneObject object);
  void update_object(SceneObject object);
  void remove_object(std::string_view id);
  void set_objects(std::vector<SceneObject> objects);

  const CameraSpec& camera() const noexcept { return camera_; }
  void set_camera(const CameraSpec& camera);

  const TimelineState& timeline() const noexcept { return timeline_; }
  /// Selecting anything other than two clips while the Diff lens is active
  /// drops the lens back to Overlay and raises diff_auto_disabled().
  void set_timeline(TimelineState timeline);
  void tick(double wall_dt);

  const LensConfig& lens() const noexcept { return lens_; }
  /// Activating Diff requires exactly two selected clips (ValidationError).
  void set_lens(LensConfig lens);
  bool diff_auto_disabled() const noexcept { return diff_auto_disabled_; }

  const ClusteringParams& clustering_params() const noexcept {
    return clustering_params_;
  }
  void set_clustering_params(const ClusteringParams& params);

  std::size_t selected_count() const;

  std::shared_ptr<const PoseClustering> pose_clustering();
  std::shared_ptr<const std::vector<KeyposeSet>> keyposes();
  std::shared_ptr<const JointCurves> joint_curves(std::size_t joint);
  std::shared_ptr<const std::vector<std::vector<JointPath>>> joint_paths();
  std::shared_ptr<const std::vector<CollisionEvent>> collisions();

  ComparisonBundle recompute();

  const KernelCounters& counters() const noexcept { return counters_; }

  /// Persistence document (schema "version": 1).
  nlohmann::json to_json() const;
  static Session from_json(const nlohmann::json& doc,
                           const EngineConfig& config = {});

 private:
  std::uint64_t camera_hash() const;
  std::uint64_t scene_hash() const;

  AnimationSet animations_;
  std::uint64_t set_hash_;
  std::vector<SceneObject> objects_;
  CameraSpec camera_;
  TimelineState timeline_;
  LensConfig lens_;
  ClusteringParams clustering_params_;
  bool diff_auto_disabled_ = false;

  template <typename T>
  struct Cached {
    std::optional<std::uint64_t> key;
    std::shared_ptr<const T> value;
  };
  Cached<PoseClustering> clustering_cache_;
  Cached<std::vector<KeyposeSet>> keypose_cache_;
  std::map<std::size_t, Cached<JointCurves>> curve_cache_;
  Cached<std::vector<std::vector<JointPath>>> path_cache_;
  Cached<std::vector<CollisionEvent>> collision_cache_;
  KernelCounters counters_;
};

}  // namespace animlens
