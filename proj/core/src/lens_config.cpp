#include "animlens/lens_config.hpp"

#include <array>

#include "animlens/errors.hpp"

namespace animlens {
namespace {

template <typename Enum, std::size_t N>
Enum parse_label(std::string_view label, const std::array<Enum, N>& values,
                 const char* what) {
  for (Enum value : values) {
    if (to_string(value) == label) return value;
  }
  throw ValidationError(std::string("unknown ") + what + " '" +
                        std::string(label) + "'");
}

}  // namespace

std::string_view to_string(CameraLens lens) {
  switch (lens) {
    case CameraLens::kOverlay: return "overlay";
    case CameraLens::kGrid: return "grid";
    case CameraLens::kDiff: return "diff";
  }
  return "overlay";
}

std::string_view to_string(SpatialLens lens) {
  switch (lens) {
    case SpatialLens::kModel: return "model";
    case SpatialLens::kSkeleton: return "skeleton";
    case SpatialLens::kKeyposes: return "keyposes";
    case SpatialLens::kTrace: return "trace";
    case SpatialLens::kPath: return "path";
  }
  return "model";
}

std::string_view to_string(TemporalLens lens) {
  return lens == TemporalLens::kJoint ? "joint" : "pose";
}

CameraLens parse_camera_lens(std::string_view label) {
  return parse_label(label,
                     std::array{CameraLens::kOverlay, CameraLens::kGrid,
                                CameraLens::kDiff},
                     "camera lens");
}

SpatialLens parse_spatial_lens(std::string_view label) {
  return parse_label(label,
                     std::array{SpatialLens::kModel, SpatialLens::kSkeleton,
                                SpatialLens::kKeyposes, SpatialLens::kTrace,
                                SpatialLens::kPath},
                     "spatial lens");
}

TemporalLens parse_temporal_lens(std::string_view label) {
  return parse_label(label, std::array{TemporalLens::kPose, TemporalLens::kJoint},
                     "temporal lens");
}

}  // namespace animlens
