#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "animlens/animation_set.hpp"
#include "animlens/camera.hpp"

namespace animlens {

struct CurveSample {
  std::size_t frame = 0;
  double bar_x = 0.5;  // clamped to [0, 1]
  double bar_y = 0.5;
  bool out_of_view = false;
  double ndc_x = 0.0;  // raw projection, for callers that draw camera bounds
  double ndc_y = 0.0;
};

struct CurveNormalization {
  double min_x = 0.0;
  double max_x = 0.0;
  double min_y = 0.0;
  double max_y = 0.0;
};

struct JointCurves {
  std::size_t joint = 0;
  std::vector<std::string> clip_ids;
  std::vector<std::vector<CurveSample>> clips;
  CurveNormalization normalization;
};

/// Unclamped bar value for one axis; 0.5 when the range is degenerate.
double normalize_bar(double ndc, double lo, double hi);

/// Projects one joint of every clip through the camera and normalises x and
/// y independently by the global extrema over all clips. Samples whose NDC
/// had to be replaced by the sentinel do not contribute to the extrema.
JointCurves joint_curves(const AnimationSet& set, const CameraSpec& camera,
                         std::size_t joint);

}  // namespace animlens
