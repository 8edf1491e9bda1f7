#include "animlens/kmeans.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "animlens/errors.hpp"
#include "animlens/math.hpp"

namespace animlens {
namespace {

constexpr double kVarianceFloor = 1e-12;

double squared_distance(const PoseFeature& a, const PoseFeature& b) {
  return (a - b).squaredNorm();
}

std::vector<std::size_t> assign(std::span<const PoseFeature> points,
                                std::span<const PoseFeature> centroids) {
  std::vector<std::size_t> labels(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    labels[i] = nearest_centroid(points[i], centroids);
  }
  return labels;
}

void update_centroids(std::span<const PoseFeature> points,
                      std::span<const std::size_t> labels,
                      std::vector<PoseFeature>& centroids) {
  const std::size_t k = centroids.size();
  const auto dim = points.front().size();
  std::vector<PoseFeature> sums(k, PoseFeature::Zero(dim));
  std::vector<std::size_t> counts(k, 0);
  for (std::size_t i = 0; i < points.size(); ++i) {
    sums[labels[i]] += points[i];
    ++counts[labels[i]];
  }
  std::vector<bool> taken(points.size(), false);
  for (std::size_t c = 0; c < k; ++c) {
    if (counts[c] > 0) {
      centroids[c] = sums[c] / static_cast<double>(counts[c]);
      continue;
    }
    // Empty cluster: move it onto the point worst served by its centroid.
    std::size_t farthest = 0;
    double worst = -1.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (taken[i]) continue;
      const double d = squared_distance(points[i], centroids[labels[i]]);
      if (d > worst) {
        worst = d;
        farthest = i;
      }
    }
    taken[farthest] = true;
    centroids[c] = points[farthest];
  }
}

}  // namespace

std::size_t nearest_centroid(const PoseFeature& point,
                             std::span<const PoseFeature> centroids) {
  std::size_t best = 0;
  double best_distance = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < centroids.size(); ++c) {
    const double d = squared_distance(point, centroids[c]);
    if (d < best_distance) {
      best_distance = d;
      best = c;
    }
  }
  return best;
}

KMeansResult kmeans(std::span<const PoseFeature> points,
                    std::vector<PoseFeature> initial, int max_iter) {
  if (points.empty()) throw ValidationError("k-means needs at least one point");
  if (initial.empty()) throw ValidationError("k-means needs at least one centroid");
  KMeansResult result;
  result.centroids = std::move(initial);
  result.labels = assign(points, result.centroids);
  for (int iter = 0; iter < max_iter; ++iter) {
    update_centroids(points, result.labels, result.centroids);
    std::vector<std::size_t> labels = assign(points, result.centroids);
    ++result.iterations;
    if (labels == result.labels) {
      result.converged = true;
      break;
    }
    result.labels = std::move(labels);
  }
  return result;
}

std::vector<PoseFeature> kmeans_plus_plus(std::span<const PoseFeature> points,
                                          std::size_t k, Rng& rng) {
  if (points.empty() || k == 0) {
    throw ValidationError("k-means++ needs points and k >= 1");
  }
  std::vector<PoseFeature> centroids;
  centroids.reserve(k);
  centroids.push_back(points[uniform_index(rng, points.size())]);
  std::vector<double> nearest(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    nearest[i] = squared_distance(points[i], centroids.front());
  }
  while (centroids.size() < k) {
    double total = 0.0;
    for (double d : nearest) total += d;
    std::size_t pick = 0;
    if (total > 0.0) {
      const double target = uniform01(rng) * total;
      double running = 0.0;
      pick = points.size() - 1;
      for (std::size_t i = 0; i < points.size(); ++i) {
        running += nearest[i];
        if (running > target && nearest[i] > 0.0) {
          pick = i;
          break;
        }
      }
    } else {
      pick = uniform_index(rng, points.size());
    }
    centroids.push_back(points[pick]);
    for (std::size_t i = 0; i < points.size(); ++i) {
      nearest[i] = std::min(nearest[i], squared_distance(points[i], centroids.back()));
    }
  }
  return centroids;
}

double spherical_bic(std::span<const PoseFeature> points,
                     std::span<const std::size_t> labels,
                     std::span<const PoseFeature> centroids) {
  const double r = static_cast<double>(points.size());
  const double k = static_cast<double>(centroids.size());
  if (points.size() <= centroids.size()) {
    return -std::numeric_limits<double>::infinity();
  }
  const double d = static_cast<double>(points.front().size());
  std::vector<double> counts(centroids.size(), 0.0);
  double sum_squares = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    counts[labels[i]] += 1.0;
    sum_squares += squared_distance(points[i], centroids[labels[i]]);
  }
  const double variance =
      std::max(sum_squares / (d * (r - k)), kVarianceFloor);
  double log_likelihood = 0.0;
  for (double n : counts) {
    if (n > 0.0) log_likelihood += n * std::log(n / r);
  }
  log_likelihood -= 0.5 * r * d * std::log(2.0 * std::numbers::pi * variance);
  log_likelihood -= 0.5 * sum_squares / variance;
  const double parameters = (k - 1.0) + k * d + 1.0;
  return log_likelihood - 0.5 * parameters * std::log(r);
}

std::vector<PoseFeature> xmeans(std::span<const PoseFeature> points,
                                const XMeansOptions& options) {
  if (points.empty()) throw ValidationError("x-means needs at least one point");
  if (options.k_min < 1 || options.k_min > options.k_max) {
    throw ValidationError("x-means requires 1 <= k_min <= k_max");
  }
  Rng rng(options.seed);
  KMeansResult current = kmeans(
      points, kmeans_plus_plus(points, options.k_min, rng), options.kmeans_max_iter);
  if (options.k_min == options.k_max) return current.centroids;

  struct Split {
    std::size_t cluster;
    double gain;
    std::vector<PoseFeature> children;
  };

  while (current.centroids.size() < options.k_max) {
    std::vector<Split> splits;
    for (std::size_t c = 0; c < current.centroids.size(); ++c) {
      std::vector<PoseFeature> members;
      for (std::size_t i = 0; i < points.size(); ++i) {
        if (current.labels[i] == c) members.push_back(points[i]);
      }
      if (members.size() < 3) continue;
      const std::vector<std::size_t> one_label(members.size(), 0);
      const std::vector<PoseFeature> parent{current.centroids[c]};
      const double parent_bic = spherical_bic(members, one_label, parent);
      KMeansResult children = kmeans(members, kmeans_plus_plus(members, 2, rng),
                                     options.kmeans_max_iter);
      const double child_bic =
          spherical_bic(members, children.labels, children.centroids);
      if (child_bic > parent_bic) {
        splits.push_back({c, child_bic - parent_bic, std::move(children.centroids)});
      }
    }
    if (splits.empty()) break;

    std::stable_sort(splits.begin(), splits.end(),
                     [](const Split& a, const Split& b) { return a.gain > b.gain; });
    const std::size_t room = options.k_max - current.centroids.size();
    if (splits.size() > room) splits.resize(room);

    std::vector<PoseFeature> next;
    for (std::size_t c = 0; c < current.centroids.size(); ++c) {
      auto it = std::find_if(splits.begin(), splits.end(),
                             [c](const Split& s) { return s.cluster == c; });
      if (it == splits.end()) {
        next.push_back(current.centroids[c]);
      } else {
        next.push_back(it->children[0]);
        next.push_back(it->children[1]);
      }
    }
    current = kmeans(points, std::move(next), options.kmeans_max_iter);
  }
  return kmeans(points, current.centroids, options.kmeans_max_iter).centroids;
}

}  // namespace animlens
