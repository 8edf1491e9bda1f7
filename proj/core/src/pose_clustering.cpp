#include "animlens/pose_clustering.hpp"

#include <algorithm>
#include <limits>

#include "animlens/dba.hpp"
#include "animlens/errors.hpp"
#include "animlens/kmeans.hpp"

namespace animlens {

std::string_view cluster_color(std::size_t cluster_id) {
  return kClusterPalette[cluster_id % kClusterPalette.size()];
}

std::vector<Segment> run_length_segments(std::span<const std::size_t> labels) {
  std::vector<Segment> segments;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (segments.empty() || segments.back().cluster_id != labels[i]) {
      segments.push_back({labels[i], i, i + 1});
    } else {
      segments.back().end_frame = i + 1;
    }
  }
  return segments;
}

std::vector<std::size_t> median_filter(std::span<const std::size_t> labels,
                                       std::size_t window) {
  std::vector<std::size_t> out(labels.begin(), labels.end());
  if (window <= 1 || labels.empty()) return out;
  const std::size_t half = window / 2;
  std::vector<std::size_t> scratch;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const std::size_t lo = i >= half ? i - half : 0;
    const std::size_t hi = std::min(labels.size() - 1, i + half);
    scratch.assign(labels.begin() + lo, labels.begin() + hi + 1);
    const auto mid = scratch.begin() + (scratch.size() - 1) / 2;
    std::nth_element(scratch.begin(), mid, scratch.end());
    out[i] = *mid;
  }
  return out;
}

namespace {

void validate(const ClusteringParams& params) {
  if (params.k_min < 1 || params.k_min > params.k_max) {
    throw ValidationError("clustering requires 1 <= k_min <= k_max",
                          {{"k_min", params.k_min}, {"k_max", params.k_max}});
  }
  if (params.median_window < 1) {
    throw ValidationError("median window must be >= 1");
  }
  if (params.dba_max_iter < 1 || !(params.dba_tol > 0.0) ||
      params.kmeans_max_iter < 1) {
    throw ValidationError("iteration limits and tolerances must be positive");
  }
}

}  // namespace

PoseClustering cluster_feature_sequences(
    std::span<const FeatureSequence> sequences, const ClusteringParams& params,
    std::uint64_t seed) {
  validate(params);
  if (sequences.empty()) throw EmptySession();

  const DbaResult average = dba_average(
      sequences, DbaOptions{seed, params.dba_max_iter, params.dba_tol});
  std::vector<PoseFeature> initial =
      xmeans(average.average, XMeansOptions{params.k_min, params.k_max, seed,
                                            params.kmeans_max_iter});

  std::vector<PoseFeature> all_frames;
  for (const FeatureSequence& seq : sequences) {
    all_frames.insert(all_frames.end(), seq.begin(), seq.end());
  }
  const KMeansResult refined =
      kmeans(all_frames, std::move(initial), params.kmeans_max_iter);

  std::vector<std::vector<std::size_t>> labels;
  std::size_t cursor = 0;
  for (const FeatureSequence& seq : sequences) {
    std::vector<std::size_t> clip_labels(refined.labels.begin() + cursor,
                                         refined.labels.begin() + cursor + seq.size());
    cursor += seq.size();
    labels.push_back(median_filter(clip_labels, params.median_window));
  }

  // Renumber by first occurrence and drop clusters no frame ended up in.
  constexpr std::size_t kUnset = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> remap(refined.centroids.size(), kUnset);
  PoseClustering result;
  result.seed = seed;
  for (auto& clip_labels : labels) {
    for (std::size_t& label : clip_labels) {
      if (remap[label] == kUnset) {
        remap[label] = result.centroids.size();
        result.centroids.push_back(refined.centroids[label]);
      }
      label = remap[label];
    }
  }
  result.n_clusters = result.centroids.size();
  result.labels = std::move(labels);
  for (const auto& clip_labels : result.labels) {
    result.segments.push_back(run_length_segments(clip_labels));
  }
  return result;
}

PoseClustering cluster_poses(const AnimationSet& set,
                             const ClusteringParams& params, std::uint64_t seed) {
  std::vector<FeatureSequence> sequences;
  sequences.reserve(set.size());
  for (const AnimationClip& clip : set.clips()) {
    sequences.push_back(clip_features(clip));
  }
  return cluster_feature_sequences(sequences, params, seed);
}

}  // namespace animlens
