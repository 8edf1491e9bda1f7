#pragma once

#include <cstddef>
#include <numbers>

#include "animlens/math.hpp"

namespace animlens {

// Static main camera. It looks down its local -Z with +Y up; `orientation`
// maps camera axes to world axes.
struct CameraSpec {
  Vec3 position{0.0, 1.5, 6.0};
  Quat orientation = Quat::Identity();
  double vertical_fov = 50.0 * std::numbers::pi / 180.0;  // radians
  double aspect = 16.0 / 9.0;
  double near = 0.1;
};

/// Throws ValidationError when a field is out of range.
void validate(const CameraSpec& camera);

inline constexpr double kNdcSentinel = 1e6;

struct ProjectedSample {
  std::size_t frame = 0;
  double ndc_x = 0.0;
  double ndc_y = 0.0;
  double depth = 0.0;  // distance along the view axis
  bool in_view = false;
  bool finite = true;  // false when an NDC coordinate was replaced by the sentinel
};

/// Perspective projection. Points in front of the near plane keep the raw
/// formula values; a non-finite coordinate (depth 0) becomes +/-kNdcSentinel.
ProjectedSample project(const CameraSpec& camera, const Vec3& point);

}  // namespace animlens
