#include "animlens/clip_json.hpp"

#include <cmath>

#include "animlens/errors.hpp"

namespace animlens {
namespace {

using nlohmann::json;

std::string join(const std::string& base, const std::string& key) {
  return base.empty() ? key : base + "." + key;
}

std::string index(const std::string& base, std::size_t i) {
  return base + "[" + std::to_string(i) + "]";
}

[[noreturn]] void bad(const std::string& path, const std::string& what) {
  throw ParseError((path.empty() ? std::string("document") : path) + ": " + what,
                   {{"path", path}});
}

const json& field(const json& obj, const std::string& base, const char* key) {
  if (!obj.is_object()) bad(base, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) bad(join(base, key), "missing field");
  return *it;
}

double number(const json& j, const std::string& path) {
  if (!j.is_number()) bad(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) bad(path, "expected a finite number");
  return v;
}

const json& array(const json& j, const std::string& path) {
  if (!j.is_array()) bad(path, "expected an array");
  return j;
}

Vec3 vec3(const json& j, const std::string& path) {
  array(j, path);
  if (j.size() != 3) bad(path, "expected 3 numbers");
  return {number(j[0], index(path, 0)), number(j[1], index(path, 1)),
          number(j[2], index(path, 2))};
}

Quat quat(const json& j, const std::string& path) {
  array(j, path);
  if (j.size() != 4) bad(path, "expected a quaternion [w, x, y, z]");
  Quat q(number(j[0], index(path, 0)), number(j[1], index(path, 1)),
         number(j[2], index(path, 2)), number(j[3], index(path, 3)));
  const double norm = q.norm();
  if (norm < 1e-9) bad(path, "zero quaternion");
  if (std::abs(norm - 1.0) > 1e-6) q.normalize();
  return q;
}

}  // namespace

json skeleton_to_json(const Skeleton& skeleton) {
  json joints = json::array();
  for (const Joint& joint : skeleton.joints()) {
    joints.push_back({{"name", joint.name},
                      {"parent", joint.parent ? static_cast<long long>(*joint.parent) : -1LL},
                      {"offset",
                       {joint.rest_offset.x(), joint.rest_offset.y(),
                        joint.rest_offset.z()}}});
  }
  json chains = json::object();
  for (const auto& [name, members] : skeleton.chains()) chains[name] = members;
  return {{"up_axis", std::string(to_string(skeleton.up_axis()))},
          {"joints", std::move(joints)},
          {"chains", std::move(chains)}};
}

Skeleton skeleton_from_json(const json& doc, const std::string& path) {
  if (!doc.is_object()) bad(path, "expected an object");
  Axis up = Axis::kY;
  if (auto it = doc.find("up_axis"); it != doc.end()) {
    if (!it->is_string()) bad(join(path, "up_axis"), "expected a string");
    try {
      up = parse_axis(it->get<std::string>());
    } catch (const ParseError&) {
      bad(join(path, "up_axis"), "expected X, Y or Z");
    }
  }
  const std::string joints_path = join(path, "joints");
  const json& joints_json = array(field(doc, path, "joints"), joints_path);
  if (joints_json.empty()) bad(joints_path, "skeleton has no joints");
  std::vector<Joint> joints;
  for (std::size_t i = 0; i < joints_json.size(); ++i) {
    const std::string jp = index(joints_path, i);
    const json& jj = joints_json[i];
    const json& name = field(jj, jp, "name");
    if (!name.is_string()) bad(join(jp, "name"), "expected a string");
    const json& parent = field(jj, jp, "parent");
    if (!parent.is_number_integer()) bad(join(jp, "parent"), "expected an integer");
    const auto parent_index = parent.get<long long>();
    Joint joint;
    joint.name = name.get<std::string>();
    if (parent_index >= 0) {
      if (static_cast<std::size_t>(parent_index) >= i) {
        bad(join(jp, "parent"), "parent must precede the joint");
      }
      joint.parent = static_cast<std::size_t>(parent_index);
    } else if (parent_index != -1) {
      bad(join(jp, "parent"), "expected a joint index or -1");
    }
    joint.rest_offset = vec3(field(jj, jp, "offset"), join(jp, "offset"));
    joints.push_back(std::move(joint));
  }
  ChainMap chains;
  if (auto it = doc.find("chains"); it != doc.end() && !it->is_null()) {
    const std::string cp = join(path, "chains");
    if (!it->is_object()) bad(cp, "expected an object");
    for (const auto& [name, members] : it->items()) {
      const std::string mp = join(cp, name);
      array(members, mp);
      std::vector<std::size_t> indices;
      for (std::size_t k = 0; k < members.size(); ++k) {
        if (!members[k].is_number_integer() || members[k].get<long long>() < 0 ||
            members[k].get<std::size_t>() >= joints.size()) {
          bad(index(mp, k), "expected a valid joint index");
        }
        indices.push_back(members[k].get<std::size_t>());
      }
      chains.emplace(name, std::move(indices));
    }
  }
  try {
    return Skeleton(std::move(joints), up, std::move(chains));
  } catch (const StructuralError& e) {
    bad(path, e.what());
  }
}

json clip_to_json(const AnimationClip& clip) {
  json frames = json::array();
  for (const Frame& frame : clip.frames()) {
    json rotations = json::array();
    for (const Quat& q : frame.rotations) {
      rotations.push_back({q.w(), q.x(), q.y(), q.z()});
    }
    frames.push_back({{"root_translation",
                       {frame.root_translation.x(), frame.root_translation.y(),
                        frame.root_translation.z()}},
                      {"rotations", std::move(rotations)}});
  }
  return {{"skeleton", skeleton_to_json(clip.skeleton())},
          {"fps", clip.fps()},
          {"frames", std::move(frames)}};
}

AnimationClip clip_from_json(const json& doc, std::string id,
                             const std::string& path) {
  if (!doc.is_object()) bad(path, "expected an object");
  auto skeleton = std::make_shared<const Skeleton>(
      skeleton_from_json(field(doc, path, "skeleton"), join(path, "skeleton")));
  const double fps = number(field(doc, path, "fps"), join(path, "fps"));
  if (!(fps > 0.0)) bad(join(path, "fps"), "fps must be positive");

  const std::string frames_path = join(path, "frames");
  const json& frames_json = array(field(doc, path, "frames"), frames_path);
  if (frames_json.empty()) bad(frames_path, "clip has no frames");
  std::vector<Frame> frames;
  frames.reserve(frames_json.size());
  for (std::size_t f = 0; f < frames_json.size(); ++f) {
    const std::string fp = index(frames_path, f);
    const json& fj = frames_json[f];
    Frame frame;
    frame.root_translation =
        vec3(field(fj, fp, "root_translation"), join(fp, "root_translation"));
    const std::string rp = join(fp, "rotations");
    const json& rotations = array(field(fj, fp, "rotations"), rp);
    if (rotations.size() != skeleton->size()) {
      bad(rp, "expected " + std::to_string(skeleton->size()) + " rotations");
    }
    frame.rotations.reserve(rotations.size());
    for (std::size_t r = 0; r < rotations.size(); ++r) {
      frame.rotations.push_back(quat(rotations[r], index(rp, r)));
    }
    frames.push_back(std::move(frame));
  }
  return AnimationClip(std::move(id), std::move(skeleton), fps, std::move(frames));
}

AnimationClip parse_clip_json(std::string_view text, std::string id) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what(),
                     {{"path", ""}, {"byte", e.byte}});
  }
  return clip_from_json(doc, std::move(id));
}

std::string emit_clip_json(const AnimationClip& clip) {
  return clip_to_json(clip).dump();
}

}  // namespace animlens
