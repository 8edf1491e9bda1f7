#include "animlens/scene.hpp"

#include <cmath>

#include "animlens/errors.hpp"

namespace animlens {

std::string_view to_string(PrimitiveKind kind) {
  switch (kind) {
    case PrimitiveKind::kCube: return "cube";
    case PrimitiveKind::kSphere: return "sphere";
    case PrimitiveKind::kPlane: return "plane";
    case PrimitiveKind::kCylinder: return "cylinder";
    case PrimitiveKind::kCone: return "cone";
  }
  return "cube";
}

PrimitiveKind parse_primitive_kind(std::string_view label) {
  for (PrimitiveKind kind : {PrimitiveKind::kCube, PrimitiveKind::kSphere,
                             PrimitiveKind::kPlane, PrimitiveKind::kCylinder,
                             PrimitiveKind::kCone}) {
    if (to_string(kind) == label) return kind;
  }
  throw ValidationError("unknown primitive kind '" + std::string(label) + "'",
                        {{"kind", label}});
}

void validate(const SceneObject& object) {
  if (object.id.empty()) throw ValidationError("scene object needs an id");
  if (!object.position.allFinite()) {
    throw ValidationError("object position must be finite", {{"id", object.id}});
  }
  if (!object.scale.allFinite() || (object.scale.array() <= 0.0).any()) {
    throw ValidationError("object scale must be strictly positive",
                          {{"id", object.id}});
  }
  if (!object.rotation.coeffs().allFinite() ||
      std::abs(object.rotation.norm() - 1.0) > 1e-6) {
    throw ValidationError("object rotation must be a unit quaternion",
                          {{"id", object.id}});
  }
}

}  // namespace animlens
