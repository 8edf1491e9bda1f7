#include "animlens/animation_set.hpp"

#include <algorithm>
#include <cctype>
#include <iterator>
#include <set>

#include "animlens/bvh.hpp"
#include "animlens/clip_json.hpp"
#include "animlens/errors.hpp"
#include "animlens/kinematics.hpp"

namespace animlens {

AnimationSet::AnimationSet(std::shared_ptr<const Skeleton> skeleton,
                           std::vector<AnimationClip> clips,
                           std::vector<std::string> source_names)
    : skeleton_(std::move(skeleton)),
      clips_(std::move(clips)),
      source_names_(std::move(source_names)) {
  if (clips_.empty()) throw EmptySession();
  if (source_names_.size() != clips_.size()) {
    source_names_.resize(clips_.size());
  }
  std::set<std::string_view> ids;
  for (const AnimationClip& clip : clips_) {
    if (clip.skeleton_ptr() != skeleton_ && !(clip.skeleton() == *skeleton_)) {
      throw StructuralError("clip '" + clip.id() +
                            "' does not use the set skeleton");
    }
    if (!ids.insert(clip.id()).second) {
      throw StructuralError("duplicate clip id '" + clip.id() + "'");
    }
  }
}

std::optional<std::size_t> AnimationSet::find_clip(std::string_view id) const {
  for (std::size_t i = 0; i < clips_.size(); ++i) {
    if (clips_[i].id() == id) return i;
  }
  return std::nullopt;
}

std::vector<std::size_t> AnimationSet::clip_lengths() const {
  std::vector<std::size_t> lengths;
  lengths.reserve(clips_.size());
  for (const AnimationClip& clip : clips_) lengths.push_back(clip.frame_count());
  return lengths;
}

std::string file_stem(std::string_view name) {
  const std::size_t slash = name.find_last_of("/\\");
  if (slash != std::string_view::npos) name.remove_prefix(slash + 1);
  const std::size_t dot = name.find_last_of('.');
  if (dot != std::string_view::npos && dot > 0) name = name.substr(0, dot);
  return name.empty() ? std::string("clip") : std::string(name);
}

namespace {

bool ends_with_ci(std::string_view s, std::string_view suffix) {
  if (s.size() < suffix.size()) return false;
  return std::equal(suffix.begin(), suffix.end(), s.end() - suffix.size(),
                    [](char a, char b) {
                      return std::tolower(static_cast<unsigned char>(a)) ==
                             std::tolower(static_cast<unsigned char>(b));
                    });
}

// Reorders `clip` onto `target`, which must share its joint names and
// parents.
AnimationClip retarget(const AnimationClip& clip,
                       const std::shared_ptr<const Skeleton>& target) {
  if (clip.skeleton_ptr() == target) return clip;
  const Skeleton& source = clip.skeleton();
  std::vector<std::size_t> source_index(target->size());
  bool identity_order = true;
  for (std::size_t i = 0; i < target->size(); ++i) {
    source_index[i] = *source.find(target->joint(i).name);
    identity_order = identity_order && source_index[i] == i;
  }
  std::vector<Frame> frames;
  frames.reserve(clip.frame_count());
  for (const Frame& frame : clip.frames()) {
    Frame out;
    out.root_translation = frame.root_translation;
    if (identity_order) {
      out.rotations = frame.rotations;
    } else {
      out.rotations.resize(target->size());
      for (std::size_t i = 0; i < target->size(); ++i) {
        out.rotations[i] = frame.rotations[source_index[i]];
      }
    }
    frames.push_back(std::move(out));
  }
  return AnimationClip(clip.id(), target, clip.fps(), std::move(frames));
}

void check_compatible(const Skeleton& reference, const Skeleton& other,
                      const std::string& reference_name,
                      const std::string& other_name) {
  std::set<std::string> ref_names, other_names;
  for (const Joint& j : reference.joints()) ref_names.insert(j.name);
  for (const Joint& j : other.joints()) other_names.insert(j.name);
  std::vector<std::string> missing, extra;
  std::set_difference(ref_names.begin(), ref_names.end(), other_names.begin(),
                      other_names.end(), std::back_inserter(missing));
  std::set_difference(other_names.begin(), other_names.end(), ref_names.begin(),
                      ref_names.end(), std::back_inserter(extra));
  if (!missing.empty() || !extra.empty()) {
    std::string names;
    for (const auto& n : missing) names += (names.empty() ? "" : ", ") + n;
    for (const auto& n : extra) names += (names.empty() ? "" : ", ") + n;
    throw IncompatibleSkeletons(
        "'" + other_name + "' does not match the skeleton of '" +
            reference_name + "' (joints: " + names + ")",
        {{"reference", reference_name},
         {"file", other_name},
         {"missing", missing},
         {"extra", extra}});
  }
  if (!reference.same_hierarchy(other)) {
    std::vector<std::string> reparented;
    for (const Joint& j : other.joints()) {
      const Joint& r = reference.joint(*reference.find(j.name));
      const std::string rp = r.parent ? reference.joint(*r.parent).name : "";
      const std::string op = j.parent ? other.joint(*j.parent).name : "";
      if (rp != op) reparented.push_back(j.name);
    }
    throw IncompatibleSkeletons(
        "'" + other_name + "' has a different hierarchy than '" +
            reference_name + "'",
        {{"reference", reference_name},
         {"file", other_name},
         {"missing", nlohmann::json::array()},
         {"extra", nlohmann::json::array()},
         {"reparented", reparented}});
  }
}

}  // namespace

SourceFormat sniff_format(const SourceFile& file) {
  if (ends_with_ci(file.name, ".bvh")) return SourceFormat::kBvh;
  if (ends_with_ci(file.name, ".json")) return SourceFormat::kClipJson;
  const auto first = file.bytes.find_first_not_of(" \t\r\n\xEF\xBB\xBF");
  if (first != std::string::npos && file.bytes[first] == '{') {
    return SourceFormat::kClipJson;
  }
  if (file.bytes.compare(first == std::string::npos ? 0 : first, 9,
                         "HIERARCHY") == 0) {
    return SourceFormat::kBvh;
  }
  throw ParseError("'" + file.name + "' is neither BVH nor Clip-JSON",
                   {{"file", file.name}});
}

AnimationClip parse_source(const SourceFile& file, std::string id) {
  try {
    return sniff_format(file) == SourceFormat::kBvh
               ? parse_bvh(file.bytes, std::move(id))
               : parse_clip_json(file.bytes, std::move(id));
  } catch (const ParseError& e) {
    nlohmann::json detail = e.detail();
    detail["file"] = file.name;
    throw ParseError(file.name + ": " + e.what(), std::move(detail));
  } catch (const StructuralError& e) {
    nlohmann::json detail = e.detail();
    detail["file"] = file.name;
    throw ParseError(file.name + ": " + e.what(), std::move(detail));
  }
}

AnimationSet assemble_set(std::vector<AnimationClip> clips,
                          std::vector<std::string> source_names,
                          const LoadOptions& options) {
  if (clips.empty()) throw EmptySession();
  if (!(options.fps > 0.0)) throw ValidationError("session fps must be positive");
  source_names.resize(clips.size());
  for (std::size_t i = 0; i < clips.size(); ++i) {
    if (source_names[i].empty()) source_names[i] = clips[i].id();
  }

  const auto skeleton = clips.front().skeleton_ptr();
  std::set<std::string> used;
  std::vector<AnimationClip> unified;
  unified.reserve(clips.size());
  for (std::size_t i = 0; i < clips.size(); ++i) {
    if (i > 0) {
      check_compatible(*skeleton, clips[i].skeleton(), source_names[0],
                       source_names[i]);
    }
    std::string id = clips[i].id();
    for (int suffix = 2; used.count(id) > 0; ++suffix) {
      id = clips[i].id() + "_" + std::to_string(suffix);
    }
    used.insert(id);
    AnimationClip clip = retarget(clips[i], skeleton).with_id(id);
    unified.push_back(resample(clip, options.fps));
  }
  return AnimationSet(skeleton, std::move(unified), std::move(source_names));
}

AnimationSet load_session(std::span<const SourceFile> files,
                          const LoadOptions& options) {
  if (files.empty()) throw EmptySession();
  std::vector<AnimationClip> clips;
  std::vector<std::string> names;
  clips.reserve(files.size());
  for (const SourceFile& file : files) {
    clips.push_back(parse_source(file, file_stem(file.name)));
    names.push_back(file_stem(file.name));
  }
  return assemble_set(std::move(clips), std::move(names), options);
}

}  // namespace animlens
