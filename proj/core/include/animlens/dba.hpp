#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "animlens/kinematics.hpp"

namespace animlens {

struct DbaOptions {
  std::uint64_t seed = 0;
  int max_iter = 30;
  double tol = 1e-6;  // relative decrease of total DTW cost
};

struct DbaResult {
  FeatureSequence average;
  std::size_t reference_index = 0;
  // Total DTW cost of the reference, then of each accepted update.
  std::vector<double> cost_history;
  int iterations = 0;
};

/// DTW barycenter averaging. The average keeps the reference's length.
///
/// Each iteration aligns every sequence to the current average and replaces
/// each average frame with the mean of the frames aligned to it. The loop
/// stops once the relative cost decrease falls below `tol` or after
/// `max_iter` iterations. An update that raises the total cost is discarded,
/// so cost_history is non-increasing.
DbaResult dba_average(std::span<const FeatureSequence> sequences,
                      const DbaOptions& options = {});

double total_dtw_cost(const FeatureSequence& average,
                      std::span<const FeatureSequence> sequences);

}  // namespace animlens
