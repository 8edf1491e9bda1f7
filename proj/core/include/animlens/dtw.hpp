#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "animlens/kinematics.hpp"

namespace animlens {

struct DtwResult {
  double cost = 0.0;
  std::vector<std::pair<std::size_t, std::size_t>> path;
};

double feature_distance(const PoseFeature& a, const PoseFeature& b);

/// Minimal-cost monotone alignment under Euclidean pointwise distance.
/// Backtracking prefers the diagonal step, then (1,0), then (0,1).
/// Throws StructuralError on empty input or mismatched feature dimension.
DtwResult dtw(std::span<const PoseFeature> a, std::span<const PoseFeature> b);

}  // namespace animlens
