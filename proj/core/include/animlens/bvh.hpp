#pragma once

#include <string>
#include <string_view>

#include "animlens/clip.hpp"

namespace animlens {

/// Parses a BVH document into a clip (the skeleton is reachable through
/// clip.skeleton()).
///
/// Euler channels are composed intrinsically in declared order and converted
/// to quaternions. End Sites become leaf joints named "<parent>_end". The
/// root translation is the root OFFSET plus its position channels; position
/// channels on non-root joints are read and dropped. fps = round(1 / Frame
/// Time). Throws ParseError with a `line` entry in detail where applicable.
AnimationClip parse_bvh(std::string_view text, std::string id = "clip");

}  // namespace animlens
