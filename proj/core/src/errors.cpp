#include "animlens/errors.hpp"

#include "animlens/math.hpp"

namespace animlens {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParse: return "parse_error";
    case ErrorCode::kIncompatibleSkeletons: return "incompatible_skeletons";
    case ErrorCode::kEmptySession: return "empty_session";
    case ErrorCode::kStructural: return "structural";
    case ErrorCode::kFrameOutOfRange: return "frame_out_of_range";
    case ErrorCode::kObjectDegenerate: return "object_degenerate";
    case ErrorCode::kNotFound: return "not_found";
    case ErrorCode::kValidation: return "validation";
  }
  return "unknown";
}

Error::Error(ErrorCode code, const std::string& message, nlohmann::json detail)
    : std::runtime_error(message), code_(code), detail_(std::move(detail)) {}

std::string_view to_string(Axis axis) {
  switch (axis) {
    case Axis::kX: return "X";
    case Axis::kY: return "Y";
    case Axis::kZ: return "Z";
  }
  return "Y";
}

Axis parse_axis(std::string_view label) {
  if (label == "X" || label == "x") return Axis::kX;
  if (label == "Y" || label == "y") return Axis::kY;
  if (label == "Z" || label == "z") return Axis::kZ;
  throw ParseError("unknown axis label '" + std::string(label) + "'");
}

}  // namespace animlens
