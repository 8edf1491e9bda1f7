#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "animlens/math.hpp"

namespace animlens {

struct Joint {
  std::string name;
  std::optional<std::size_t> parent;  // nullopt for the root
  Vec3 rest_offset = Vec3::Zero();
};

using ChainMap = std::map<std::string, std::vector<std::size_t>>;

/// Joint hierarchy shared by every clip of a session.
///
/// Joints are stored in topological order (parent index < child index) with
/// exactly one root at index 0. The constructor enforces this, along with
/// unique names and in-range chain indices, and throws StructuralError.
class Skeleton {
 public:
  Skeleton(std::vector<Joint> joints, Axis up_axis = Axis::kY,
           ChainMap chains = {});

  std::size_t size() const noexcept { return joints_.size(); }
  const std::vector<Joint>& joints() const noexcept { return joints_; }
  const Joint& joint(std::size_t i) const { return joints_.at(i); }
  Axis up_axis() const noexcept { return up_axis_; }
  const ChainMap& chains() const noexcept { return chains_; }

  std::optional<std::size_t> find(std::string_view name) const;
  std::vector<std::size_t> children(std::size_t joint) const;

  /// Same joint names with the same parent names, ignoring order and offsets.
  bool same_hierarchy(const Skeleton& other) const;

  friend bool operator==(const Skeleton& a, const Skeleton& b);

 private:
  std::vector<Joint> joints_;
  Axis up_axis_;
  ChainMap chains_;
};

/// One chain per branch hanging off a joint with more than one child, named
/// after the branch's first joint. Used when the source format has no chains.
ChainMap infer_chains(const std::vector<Joint>& joints);

}  // namespace animlens
