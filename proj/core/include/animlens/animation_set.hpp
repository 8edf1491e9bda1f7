#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "animlens/clip.hpp"

namespace animlens {

struct SourceFile {
  std::string name;   // file name, used for format sniffing and clip ids
  std::string bytes;
};

/// Clips that share one skeleton. Clip order is timeline row order.
class AnimationSet {
 public:
  AnimationSet(std::shared_ptr<const Skeleton> skeleton,
               std::vector<AnimationClip> clips,
               std::vector<std::string> source_names);

  const Skeleton& skeleton() const noexcept { return *skeleton_; }
  const std::shared_ptr<const Skeleton>& skeleton_ptr() const noexcept {
    return skeleton_;
  }
  const std::vector<AnimationClip>& clips() const noexcept { return clips_; }
  const std::vector<std::string>& source_names() const noexcept {
    return source_names_;
  }
  std::size_t size() const noexcept { return clips_.size(); }
  const AnimationClip& clip(std::size_t i) const { return clips_.at(i); }

  std::optional<std::size_t> find_clip(std::string_view id) const;
  std::vector<std::size_t> clip_lengths() const;

 private:
  std::shared_ptr<const Skeleton> skeleton_;
  std::vector<AnimationClip> clips_;
  std::vector<std::string> source_names_;
};

struct LoadOptions {
  double fps = kDefaultFps;
};

enum class SourceFormat { kBvh, kClipJson };

/// Extension first (.bvh / .json), then content ('{' vs HIERARCHY).
SourceFormat sniff_format(const SourceFile& file);
AnimationClip parse_source(const SourceFile& file, std::string id);

/// Unifies clips onto the first clip's skeleton by joint-name matching,
/// reordering rotations where the joint order differs. Ids are made unique
/// by suffixing "_2", "_3", ... Throws EmptySession or IncompatibleSkeletons.
AnimationSet assemble_set(std::vector<AnimationClip> clips,
                          std::vector<std::string> source_names,
                          const LoadOptions& options = {});

/// Parses every file and assembles the set at options.fps.
AnimationSet load_session(std::span<const SourceFile> files,
                          const LoadOptions& options = {});

std::string file_stem(std::string_view name);

}  // namespace animlens
