#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <string_view>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace animlens {

using Vec3 = Eigen::Vector3d;
using Quat = Eigen::Quaterniond;

using Rng = std::mt19937_64;

enum class Axis { kX, kY, kZ };

inline Vec3 axis_vector(Axis axis) {
  switch (axis) {
    case Axis::kX: return Vec3::UnitX();
    case Axis::kY: return Vec3::UnitY();
    case Axis::kZ: return Vec3::UnitZ();
  }
  return Vec3::UnitY();
}

inline int axis_index(Axis axis) { return static_cast<int>(axis); }

std::string_view to_string(Axis axis);
Axis parse_axis(std::string_view label);  // throws ParseError

// Deterministic RNG helpers. std::mt19937_64 output is fixed by the standard,
// the <random> distributions are not, so sampling goes through these.
template <typename Engine>
double uniform01(Engine& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

template <typename Engine>
std::size_t uniform_index(Engine& rng, std::size_t n) {
  // Rejection sampling keeps the result unbiased.
  const std::uint64_t bound = static_cast<std::uint64_t>(n);
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() -
      std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t draw = rng();
  while (draw >= limit) draw = rng();
  return static_cast<std::size_t>(draw % bound);
}

}  // namespace animlens
