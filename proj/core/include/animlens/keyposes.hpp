#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "animlens/clip.hpp"
#include "animlens/kinematics.hpp"

namespace animlens {

inline constexpr std::size_t kDefaultKeyposeCount = 15;

struct KeyposeSet {
  std::string clip_id;
  std::vector<std::size_t> frames;  // strictly increasing
  std::vector<GlobalPose> poses;
};

// Greedy curve simplification: start from the first and last frame and keep
// adding the frame whose joints are worst reconstructed by linear
// interpolation between the bracketing selected frames (lowest index wins
// ties), until min(k, T) frames are selected.

/// Per-frame reconstruction error: summed squared joint distance between the
/// real pose and the interpolation between bracketing keyframes. Keyframes
/// must be sorted and include the first and last frame.
std::vector<double> frame_reconstruction_errors(
    std::span<const GlobalPose> poses, std::span<const std::size_t> keyframes);

double reconstruction_error(std::span<const GlobalPose> poses,
                            std::span<const std::size_t> keyframes);

std::vector<std::size_t> select_keyframes(std::span<const GlobalPose> poses,
                                          std::size_t k);

/// Throws ValidationError when k < 2 on a clip with two or more frames.
KeyposeSet extract_keyposes(const AnimationClip& clip,
                            std::size_t k = kDefaultKeyposeCount);

}  // namespace animlens
