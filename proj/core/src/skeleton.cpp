#include "animlens/skeleton.hpp"

#include <set>
#include <unordered_map>

#include "animlens/errors.hpp"

namespace animlens {

Skeleton::Skeleton(std::vector<Joint> joints, Axis up_axis, ChainMap chains)
    : joints_(std::move(joints)), up_axis_(up_axis), chains_(std::move(chains)) {
  if (joints_.empty()) throw StructuralError("skeleton has no joints");
  if (joints_.front().parent.has_value()) {
    throw StructuralError("joint 0 must be the root");
  }
  std::set<std::string_view> names;
  for (std::size_t i = 0; i < joints_.size(); ++i) {
    const Joint& joint = joints_[i];
    if (i > 0) {
      if (!joint.parent) {
        throw StructuralError("skeleton has more than one root",
                              {{"joint", joint.name}});
      }
      if (*joint.parent >= i) {
        throw StructuralError("joints are not in topological order",
                              {{"joint", joint.name}});
      }
    }
    if (joint.name.empty()) {
      throw StructuralError("joint " + std::to_string(i) + " has no name");
    }
    if (!names.insert(joint.name).second) {
      throw StructuralError("duplicate joint name '" + joint.name + "'",
                            {{"joint", joint.name}});
    }
    if (!joint.rest_offset.allFinite()) {
      throw StructuralError("non-finite rest offset", {{"joint", joint.name}});
    }
  }
  for (const auto& [name, members] : chains_) {
    for (std::size_t index : members) {
      if (index >= joints_.size()) {
        throw StructuralError("chain '" + name + "' references joint " +
                                  std::to_string(index),
                              {{"chain", name}});
      }
    }
  }
}

std::optional<std::size_t> Skeleton::find(std::string_view name) const {
  for (std::size_t i = 0; i < joints_.size(); ++i) {
    if (joints_[i].name == name) return i;
  }
  return std::nullopt;
}

std::vector<std::size_t> Skeleton::children(std::size_t joint) const {
  std::vector<std::size_t> out;
  for (std::size_t i = joint + 1; i < joints_.size(); ++i) {
    if (joints_[i].parent == joint) out.push_back(i);
  }
  return out;
}

bool Skeleton::same_hierarchy(const Skeleton& other) const {
  if (size() != other.size()) return false;
  std::unordered_map<std::string_view, std::string_view> parents;
  for (const Joint& j : joints_) {
    parents[j.name] = j.parent ? std::string_view(joints_[*j.parent].name) : "";
  }
  for (const Joint& j : other.joints_) {
    auto it = parents.find(j.name);
    if (it == parents.end()) return false;
    const std::string_view parent =
        j.parent ? std::string_view(other.joints_[*j.parent].name) : "";
    if (it->second != parent) return false;
  }
  return true;
}

bool operator==(const Skeleton& a, const Skeleton& b) {
  if (a.up_axis_ != b.up_axis_ || a.chains_ != b.chains_ ||
      a.joints_.size() != b.joints_.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.joints_.size(); ++i) {
    const Joint& x = a.joints_[i];
    const Joint& y = b.joints_[i];
    if (x.name != y.name || x.parent != y.parent ||
        x.rest_offset != y.rest_offset) {
      return false;
    }
  }
  return true;
}

ChainMap infer_chains(const std::vector<Joint>& joints) {
  std::vector<std::vector<std::size_t>> kids(joints.size());
  for (std::size_t i = 1; i < joints.size(); ++i) {
    if (joints[i].parent && *joints[i].parent < joints.size()) {
      kids[*joints[i].parent].push_back(i);
    }
  }
  ChainMap chains;
  for (std::size_t branch_point = 0; branch_point < joints.size();
       ++branch_point) {
    if (kids[branch_point].size() < 2) continue;
    for (std::size_t start : kids[branch_point]) {
      std::vector<std::size_t> members{start};
      std::size_t cursor = start;
      while (kids[cursor].size() == 1) {
        cursor = kids[cursor].front();
        members.push_back(cursor);
      }
      chains.emplace(joints[start].name, std::move(members));
    }
  }
  return chains;
}

}  // namespace animlens
