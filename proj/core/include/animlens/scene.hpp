#pragma once

#include <string>
#include <string_view>

#include "animlens/math.hpp"

namespace animlens {

// Primitive shapes in their local frame (all closed sets):
//   cube      [-0.5, 0.5]^3
//   sphere    radius 0.5 around the origin
//   plane     quad y = 0, x and z in [-0.5, 0.5]
//   cylinder  radius 0.5, y in [-0.5, 0.5]
//   cone      base radius 0.5 at y = -0.5, apex at y = 0.5
enum class PrimitiveKind { kCube, kSphere, kPlane, kCylinder, kCone };

std::string_view to_string(PrimitiveKind kind);
PrimitiveKind parse_primitive_kind(std::string_view label);  // ValidationError

struct SceneObject {
  std::string id;
  PrimitiveKind kind = PrimitiveKind::kCube;
  Vec3 position = Vec3::Zero();
  Quat rotation = Quat::Identity();
  Vec3 scale = Vec3::Ones();
};

/// Throws ValidationError on empty id, non-positive/non-finite scale, or a
/// rotation that is not unit length.
void validate(const SceneObject& object);

}  // namespace animlens
