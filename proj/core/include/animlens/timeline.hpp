#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "animlens/clip.hpp"

namespace animlens {

enum class PlaybackMode { kConcurrent, kSequential };

std::string_view to_string(PlaybackMode mode);
PlaybackMode parse_playback_mode(std::string_view label);  // ValidationError

struct ClipTrack {
  std::int64_t offset_frames = 0;
  bool selected = true;
};

struct TimelineState {
  std::vector<ClipTrack> tracks;  // one per clip, timeline row order
  PlaybackMode mode = PlaybackMode::kConcurrent;
  double speed = 1.0;
  std::int64_t current_frame = 0;
  double fps = kDefaultFps;
  bool playing = false;
  bool loop = true;
  double frame_remainder = 0.0;  // fractional frames carried between ticks
};

TimelineState make_timeline(std::size_t clip_count, double fps = kDefaultFps);

/// Throws ValidationError if speed/fps are not positive, current_frame is
/// negative, or the tracks do not cover `clip_count` clips.
void validate(const TimelineState& timeline, std::size_t clip_count);

using ActiveFrames = std::vector<std::optional<std::size_t>>;

/// Local frame of every clip at timeline.current_frame.
///
/// Concurrent: clip i is active when selected and 0 <= current - offset_i <
/// T_i. Sequential: selected clips are laid end to end in row order
/// (offsets ignored) and exactly one is active inside that extent.
ActiveFrames active_frames(const TimelineState& timeline,
                           std::span<const std::size_t> clip_lengths);

ActiveFrames active_frames_at(const TimelineState& timeline,
                              std::span<const std::size_t> clip_lengths,
                              std::int64_t frame);

/// Number of global frames covered by the selected clips (0 if none).
std::int64_t timeline_extent(const TimelineState& timeline,
                             std::span<const std::size_t> clip_lengths);

/// Advances playback by wall_dt seconds at fps * speed, carrying the
/// fractional remainder. Past the extent the frame wraps to the start when
/// looping, otherwise it stops on the last frame. A paused timeline is
/// returned unchanged.
TimelineState tick(TimelineState timeline, double wall_dt,
                   std::span<const std::size_t> clip_lengths);

}  // namespace animlens
