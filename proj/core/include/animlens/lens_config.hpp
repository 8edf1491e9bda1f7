#pragma once

#include <cstddef>
#include <cstdint>
#include <set>
#include <string_view>

#include "animlens/keyposes.hpp"
#include "animlens/spatial.hpp"

namespace animlens {

enum class CameraLens { kOverlay, kGrid, kDiff };
enum class SpatialLens { kModel, kSkeleton, kKeyposes, kTrace, kPath };
enum class TemporalLens { kPose, kJoint };

std::string_view to_string(CameraLens lens);
std::string_view to_string(SpatialLens lens);
std::string_view to_string(TemporalLens lens);
CameraLens parse_camera_lens(std::string_view label);
SpatialLens parse_spatial_lens(std::string_view label);
TemporalLens parse_temporal_lens(std::string_view label);

struct LensParams {
  std::size_t trace_n = kDefaultTraceFrames;
  std::size_t keypose_k = kDefaultKeyposeCount;
  std::size_t median_window = 1;
  std::uint64_t seed = 0;
};

struct LensConfig {
  CameraLens camera_lens = CameraLens::kOverlay;
  std::set<SpatialLens> spatial = {SpatialLens::kModel};
  std::set<std::size_t> joint_filter;  // visible joints; chains pre-expanded
  TemporalLens temporal_lens = TemporalLens::kPose;
  std::size_t temporal_joint = 0;
  LensParams params;
};

}  // namespace animlens
