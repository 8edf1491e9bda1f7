#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "animlens/animation_set.hpp"
#include "animlens/kinematics.hpp"

namespace animlens {

struct ClusteringParams {
  std::size_t k_min = 1;
  std::size_t k_max = 16;
  std::size_t median_window = 1;  // 1 disables label smoothing
  int dba_max_iter = 30;
  double dba_tol = 1e-6;
  int kmeans_max_iter = 100;
};

struct Segment {
  std::size_t cluster_id = 0;
  std::size_t start_frame = 0;
  std::size_t end_frame = 0;  // exclusive

  friend bool operator==(const Segment&, const Segment&) = default;
};

struct PoseClustering {
  std::size_t n_clusters = 0;
  std::vector<PoseFeature> centroids;
  std::vector<std::vector<std::size_t>> labels;    // per clip, per frame
  std::vector<std::vector<Segment>> segments;      // per clip
  std::uint64_t seed = 0;
};

// Timeline colours. Cluster ids are renumbered by first occurrence (clip 0
// first), so id i always maps to palette entry i % 16.
inline constexpr std::array<std::string_view, 16> kClusterPalette = {
    "#1b9e77", "#7570b3", "#d95f02", "#e7298a", "#66a61e", "#e6ab02",
    "#a6761d", "#1f78b4", "#b2df8a", "#fb9a99", "#cab2d6", "#ffff99",
    "#8dd3c7", "#bebada", "#fb8072", "#80b1d3"};

std::string_view cluster_color(std::size_t cluster_id);

std::vector<Segment> run_length_segments(std::span<const std::size_t> labels);

/// Centered median over a window truncated at the sequence ends. Even
/// windows are widened by one so the filter stays centered.
std::vector<std::size_t> median_filter(std::span<const std::size_t> labels,
                                       std::size_t window);

/// Full pose-lens pipeline over raw feature sequences: DBA average, x-means
/// on the average's frames, then k-means over every frame of every sequence
/// seeded with the x-means centroids.
PoseClustering cluster_feature_sequences(
    std::span<const FeatureSequence> sequences, const ClusteringParams& params,
    std::uint64_t seed);

PoseClustering cluster_poses(const AnimationSet& set,
                             const ClusteringParams& params,
                             std::uint64_t seed);

}  // namespace animlens
