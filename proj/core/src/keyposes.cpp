#include "animlens/keyposes.hpp"

#include <algorithm>

#include "animlens/errors.hpp"

namespace animlens {
namespace {

constexpr double kTieTolerance = 1e-12;

}  // namespace


std::vector<double> frame_reconstruction_errors(
    std::span<const GlobalPose> poses, std::span<const std::size_t> keyframes) {
  std::vector<double> errors(poses.size(), 0.0);
  for (std::size_t s = 0; s + 1 < keyframes.size(); ++s) {
    const std::size_t a = keyframes[s];
    const std::size_t b = keyframes[s + 1];
    const auto& pa = poses[a].positions;
    const auto& pb = poses[b].positions;
    for (std::size_t f = a + 1; f < b; ++f) {
      const double alpha =
          static_cast<double>(f - a) / static_cast<double>(b - a);
      double error = 0.0;
      const auto& pf = poses[f].positions;
      for (std::size_t j = 0; j < pf.size(); ++j) {
        error += (pf[j] - (pa[j] + alpha * (pb[j] - pa[j]))).squaredNorm();
      }
      errors[f] = error;
    }
  }
  return errors;
}

double reconstruction_error(std::span<const GlobalPose> poses,
                            std::span<const std::size_t> keyframes) {
  double total = 0.0;
  for (double e : frame_reconstruction_errors(poses, keyframes)) total += e;
  return total;
}

std::vector<std::size_t> select_keyframes(std::span<const GlobalPose> poses,
                                          std::size_t k) {
  const std::size_t count = poses.size();
  if (count < 2 || k >= count) {
    std::vector<std::size_t> all(count);
    for (std::size_t i = 0; i < count; ++i) all[i] = i;
    return all;
  }
  if (k < 2) throw ValidationError("keypose count must be at least 2");

  std::vector<std::size_t> selected{0, count - 1};
  std::vector<bool> chosen(count, false);
  chosen.front() = chosen.back() = true;
  while (selected.size() < k) {
    const std::vector<double> errors = frame_reconstruction_errors(poses, selected);
    std::size_t best = count;
    double best_error = -1.0;
    for (std::size_t f = 0; f < count; ++f) {
      // Errors within rounding noise of the best count as ties.
      if (!chosen[f] && errors[f] > best_error + kTieTolerance * std::max(1.0, best_error)) {
        best_error = errors[f];
        best = f;
      }
    }
    chosen[best] = true;
    selected.insert(std::upper_bound(selected.begin(), selected.end(), best), best);
  }
  return selected;
}

KeyposeSet extract_keyposes(const AnimationClip& clip, std::size_t k) {
  if (k < 2 && clip.frame_count() >= 2) {
    throw ValidationError("keypose count must be at least 2", {{"k", k}});
  }
  const std::vector<GlobalPose> poses = forward_kinematics(clip);
  KeyposeSet set;
  set.clip_id = clip.id();
  set.frames = select_keyframes(poses, k);
  set.poses.reserve(set.frames.size());
  for (std::size_t f : set.frames) set.poses.push_back(poses[f]);
  return set;
}

}  // namespace animlens
