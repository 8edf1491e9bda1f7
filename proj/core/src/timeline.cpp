#include "animlens/timeline.hpp"

#include <algorithm>
#include <cmath>

#include "animlens/errors.hpp"

namespace animlens {

std::string_view to_string(PlaybackMode mode) {
  return mode == PlaybackMode::kSequential ? "sequential" : "concurrent";
}

PlaybackMode parse_playback_mode(std::string_view label) {
  if (label == "concurrent") return PlaybackMode::kConcurrent;
  if (label == "sequential") return PlaybackMode::kSequential;
  throw ValidationError("unknown playback mode '" + std::string(label) + "'");
}

TimelineState make_timeline(std::size_t clip_count, double fps) {
  TimelineState timeline;
  timeline.tracks.assign(clip_count, ClipTrack{});
  timeline.fps = fps;
  return timeline;
}

void validate(const TimelineState& timeline, std::size_t clip_count) {
  if (timeline.tracks.size() < clip_count) {
    throw ValidationError("timeline must cover every clip",
                          {{"tracks", timeline.tracks.size()}, {"clips", clip_count}});
  }
  if (!(timeline.speed > 0.0) || !std::isfinite(timeline.speed)) {
    throw ValidationError("playback speed must be positive",
                          {{"speed", timeline.speed}});
  }
  if (!(timeline.fps > 0.0) || !std::isfinite(timeline.fps)) {
    throw ValidationError("timeline fps must be positive");
  }
  if (timeline.current_frame < 0) {
    throw ValidationError("current frame must be non-negative",
                          {{"current_frame", timeline.current_frame}});
  }
}

ActiveFrames active_frames_at(const TimelineState& timeline,
                              std::span<const std::size_t> clip_lengths,
                              std::int64_t frame) {
  ActiveFrames active(clip_lengths.size());
  if (timeline.mode == PlaybackMode::kConcurrent) {
    for (std::size_t i = 0; i < clip_lengths.size(); ++i) {
      const ClipTrack& track = timeline.tracks.at(i);
      const std::int64_t local = frame - track.offset_frames;
      if (track.selected && local >= 0 &&
          local < static_cast<std::int64_t>(clip_lengths[i])) {
        active[i] = static_cast<std::size_t>(local);
      }
    }
    return active;
  }
  std::int64_t start = 0;
  for (std::size_t i = 0; i < clip_lengths.size(); ++i) {
    if (!timeline.tracks.at(i).selected) continue;
    const auto length = static_cast<std::int64_t>(clip_lengths[i]);
    if (frame >= start && frame < start + length) {
      active[i] = static_cast<std::size_t>(frame - start);
      break;
    }
    start += length;
  }
  return active;
}

ActiveFrames active_frames(const TimelineState& timeline,
                           std::span<const std::size_t> clip_lengths) {
  return active_frames_at(timeline, clip_lengths, timeline.current_frame);
}

std::int64_t timeline_extent(const TimelineState& timeline,
                             std::span<const std::size_t> clip_lengths) {
  std::int64_t extent = 0;
  for (std::size_t i = 0; i < clip_lengths.size(); ++i) {
    const ClipTrack& track = timeline.tracks.at(i);
    if (!track.selected) continue;
    const auto length = static_cast<std::int64_t>(clip_lengths[i]);
    if (timeline.mode == PlaybackMode::kSequential) {
      extent += length;
    } else {
      extent = std::max(extent, track.offset_frames + length);
    }
  }
  return extent;
}

TimelineState tick(TimelineState timeline, double wall_dt,
                   std::span<const std::size_t> clip_lengths) {
  if (!timeline.playing || !(wall_dt > 0.0)) return timeline;
  const double advance =
      timeline.frame_remainder + wall_dt * timeline.fps * timeline.speed;
  // Absorb rounding so that, e.g., 10 ticks of 0.1 frames land on 1.
  const double whole = std::floor(advance + 1e-9);
  timeline.frame_remainder = std::max(0.0, advance - whole);
  timeline.current_frame += static_cast<std::int64_t>(whole);

  const std::int64_t extent = timeline_extent(timeline, clip_lengths);
  if (extent <= 0) {
    timeline.current_frame = 0;
    return timeline;
  }
  if (timeline.current_frame >= extent) {
    if (timeline.loop) {
      timeline.current_frame %= extent;
    } else {
      timeline.current_frame = extent - 1;
      timeline.frame_remainder = 0.0;
      timeline.playing = false;
    }
  }
  return timeline;
}

}  // namespace animlens
