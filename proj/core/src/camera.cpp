#include "animlens/camera.hpp"

#include <cmath>

#include "animlens/errors.hpp"

namespace animlens {

void validate(const CameraSpec& camera) {
  if (!camera.position.allFinite()) {
    throw ValidationError("camera position must be finite");
  }
  if (!camera.orientation.coeffs().allFinite() ||
      std::abs(camera.orientation.norm() - 1.0) > 1e-6) {
    throw ValidationError("camera orientation must be a unit quaternion");
  }
  if (!(camera.vertical_fov > 0.0 && camera.vertical_fov < std::numbers::pi)) {
    throw ValidationError("vertical_fov must lie in (0, pi) radians",
                          {{"vertical_fov", camera.vertical_fov}});
  }
  if (!(camera.aspect > 0.0) || !std::isfinite(camera.aspect)) {
    throw ValidationError("aspect must be positive", {{"aspect", camera.aspect}});
  }
  if (!(camera.near > 0.0) || !std::isfinite(camera.near)) {
    throw ValidationError("near must be positive", {{"near", camera.near}});
  }
}

namespace {

double finite_or_sentinel(double value, double sign_source, bool& finite) {
  if (std::isfinite(value)) return value;
  finite = false;
  if (sign_source > 0.0) return kNdcSentinel;
  if (sign_source < 0.0) return -kNdcSentinel;
  return 0.0;
}

}  // namespace

ProjectedSample project(const CameraSpec& camera, const Vec3& point) {
  const Vec3 local = camera.orientation.conjugate() * (point - camera.position);
  const double depth = -local.z();
  const double tan_half = std::tan(0.5 * camera.vertical_fov);
  ProjectedSample sample;
  sample.depth = depth;
  sample.ndc_x = finite_or_sentinel(local.x() / depth / (camera.aspect * tan_half),
                                    local.x(), sample.finite);
  sample.ndc_y =
      finite_or_sentinel(local.y() / depth / tan_half, local.y(), sample.finite);
  sample.in_view = depth >= camera.near && std::abs(sample.ndc_x) <= 1.0 &&
                   std::abs(sample.ndc_y) <= 1.0;
  return sample;
}

}  // namespace animlens
