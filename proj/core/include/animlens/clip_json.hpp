#pragma once

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "animlens/clip.hpp"

namespace animlens {

// Clip-JSON:
//   { "skeleton": { "up_axis": "Y",
//                   "joints": [{ "name", "parent": int|-1, "offset": [x,y,z] }],
//                   "chains": { name: [int] } },
//     "fps": number,
//     "frames": [{ "root_translation": [x,y,z], "rotations": [[w,x,y,z], ...] }] }

nlohmann::json skeleton_to_json(const Skeleton& skeleton);
Skeleton skeleton_from_json(const nlohmann::json& doc,
                            const std::string& path = "skeleton");

nlohmann::json clip_to_json(const AnimationClip& clip);
AnimationClip clip_from_json(const nlohmann::json& doc, std::string id,
                             const std::string& path = "");

/// Throws ParseError whose detail carries the offending field `path`, e.g.
/// "frames[0].rotations[2]".
AnimationClip parse_clip_json(std::string_view text, std::string id = "clip");
std::string emit_clip_json(const AnimationClip& clip);

}  // namespace animlens
