#pragma once

#include <cstddef>
#include <cstdint>

#include <span>
#include <vector>

#include "animlens/kinematics.hpp"

namespace animlens {



struct KMeansResult {
  std::vector<PoseFeature> centroids;
  std::vector<std::size_t> labels;
  int iterations = 0;
  bool converged = false;  // assignment fixpoint reached
};

/// Index of the closest centroid; ties go to the lowest index.
std::size_t nearest_centroid(const PoseFeature& point,
                             std::span<const PoseFeature> centroids);

/// Lloyd iterations from the given centroids until the assignment stops
/// changing or `max_iter` rounds. A cluster that empties is re-seeded with
/// the point farthest from its current centroid.
KMeansResult kmeans(std::span<const PoseFeature> points,
                    std::vector<PoseFeature> initial, int max_iter = 100);

std::vector<PoseFeature> kmeans_plus_plus(std::span<const PoseFeature> points,
                                          std::size_t k, Rng& rng);

/// Pelleg-Moore BIC of a hard spherical-Gaussian clustering with one shared
/// variance. Returns -inf when there are no more points than clusters.
double spherical_bic(std::span<const PoseFeature> points,
                     std::span<const std::size_t> labels,
                     std::span<const PoseFeature> centroids);

struct XMeansOptions {
  std::size_t k_min = 1;
  std::size_t k_max = 16;
  std::uint64_t seed = 0;
  int kmeans_max_iter = 100;
};

/// X-means: k-means++ with k_min centroids, then repeated 2-way splits that
/// improve the local BIC until k_max or no split is accepted, followed by a
/// full k-means refinement. k_min == k_max reduces to seeded k-means.
std::vector<PoseFeature> xmeans(std::span<const PoseFeature> points,
                                const XMeansOptions& options);

}  // namespace animlens
