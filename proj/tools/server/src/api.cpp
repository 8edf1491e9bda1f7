#include "animlens/server/api.hpp"

#include <charconv>
#include <cstdio>
#include <utility>

#include "animlens/diff.hpp"
#include "animlens/serialize.hpp"
#include "animlens/spatial.hpp"
#include "animlens/timeline.hpp"

namespace animlens::server {

using nlohmann::json;

std::string api_error_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParse:
      return "parse_error";
    case ErrorCode::kIncompatibleSkeletons:
      return "incompatible_skeletons";
    case ErrorCode::kNotFound:
      return "not_found";
    case ErrorCode::kFrameOutOfRange:
      return "frame_out_of_range";
    case ErrorCode::kEmptySession:
    case ErrorCode::kStructural:
    case ErrorCode::kObjectDegenerate:
    case ErrorCode::kValidation:
      return "validation";
  }
  return "validation";
}

int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::kIncompatibleSkeletons:
      return 422;
    case ErrorCode::kNotFound:
      return 404;
    default:
      return 400;
  }
}

json error_body(const Error& error) {
  json detail = error.detail();
  if (error.code() == ErrorCode::kEmptySession ||
      error.code() == ErrorCode::kStructural ||
      error.code() == ErrorCode::kObjectDegenerate) {
    detail["reason"] = std::string(to_string(error.code()));
  }
  return {{"code", api_error_code(error.code())},
          {"message", error.what()},
          {"detail", std::move(detail)}};
}

namespace {

ApiResponse json_response(int status, const json& body) {
  return {status, body.dump(), "application/json"};
}

std::vector<std::string> split_path(const std::string& path) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (start <= path.size()) {
    std::size_t end = path.find('/', start);
    if (end == std::string::npos) end = path.size();
    if (end > start) parts.push_back(path.substr(start, end - start));
    start = end + 1;
  }
  return parts;
}

json parse_body(const ApiRequest& request) {
  if (request.body.empty()) throw ValidationError("request body is empty");
  json doc = json::parse(request.body, nullptr, false);
  if (doc.is_discarded()) throw ValidationError("request body is not valid JSON");
  return doc;
}

const std::string* query(const ApiRequest& request, const std::string& key) {
  auto it = request.query.find(key);
  return it == request.query.end() ? nullptr : &it->second;
}

std::int64_t query_int(const std::string& key, const std::string& text) {
  std::int64_t value = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw ValidationError("query parameter '" + key + "' must be an integer",
                          {{"parameter", key}, {"value", text}});
  }
  return value;
}

std::size_t resolve_joint(const Session& session, const std::string& text) {
  if (auto index = session.animations().skeleton().find(text)) return *index;
  bool numeric = !text.empty();
  for (char c : text) numeric = numeric && c >= '0' && c <= '9';
  if (numeric) {
    const auto index = static_cast<std::size_t>(query_int("joint", text));
    if (index < session.animations().skeleton().size()) return index;
  }
  throw NotFound("unknown joint '" + text + "'", {{"joint", text}});
}

ApiResponse method_not_allowed(const ApiRequest& request) {
  return json_response(405, {{"code", "validation"},
                             {"message", "method not allowed"},
                             {"detail", {{"method", request.method},
                                         {"path", request.path}}}});
}

json state_json(const Session& session) {
  return {{"timeline", to_json(session.timeline(), session.clip_ids())},
          {"lens", to_json(session.lens())},
          {"diff_auto_disabled", session.diff_auto_disabled()}};
}

json objects_json(const Session& session) {
  json objects = json::array();
  for (const SceneObject& o : session.objects()) objects.push_back(to_json(o));
  return {{"objects", std::move(objects)}};
}

json collisions_json(const Session& session, const std::vector<CollisionEvent>& events) {
  json out = json::array();
  for (const CollisionEvent& e : events) {
    json item = to_json(e);
    item["joint_name"] = session.animations().skeleton().joint(e.joint).name;
    out.push_back(std::move(item));
  }
  return {{"events", std::move(out)}};
}

// The two clips a diff request compares: explicit a/b, a "clips" list, or
// the two clips selected on the timeline.
std::pair<std::size_t, std::size_t> diff_pair(const Session& session,
                                              const ApiRequest& request) {
  std::vector<std::string> ids;
  const std::string* a = query(request, "a");
  const std::string* b = query(request, "b");
  if (a || b) {
    if (a) ids.push_back(*a);
    if (b) ids.push_back(*b);
  } else if (const std::string* list = query(request, "clips")) {
    std::size_t start = 0;
    while (start <= list->size()) {
      std::size_t end = list->find(',', start);
      if (end == std::string::npos) end = list->size();
      if (end > start) ids.push_back(list->substr(start, end - start));
      start = end + 1;
    }
  } else {
    const auto& tracks = session.timeline().tracks;
    for (std::size_t i = 0; i < tracks.size(); ++i) {
      if (tracks[i].selected) ids.push_back(session.animations().clip(i).id());
    }
  }
  if (ids.size() != 2) {
    throw ValidationError("diff compares exactly two clips",
                          {{"clips", ids}, {"count", ids.size()}});
  }
  const std::size_t ia = session.clip_index(ids[0]);
  const std::size_t ib = session.clip_index(ids[1]);
  if (ia == ib) {
    throw ValidationError("diff needs two different clips", {{"clips", ids}});
  }
  return {ia, ib};
}

json frame_json(Session& session, std::int64_t t) {
  if (t < 0) throw FrameOutOfRange("frame must be non-negative", {{"frame", t}});
  const AnimationSet& set = session.animations();
  const std::vector<std::size_t> lengths = set.clip_lengths();
  const ActiveFrames active = active_frames_at(session.timeline(), lengths, t);
  const bool trace = session.lens().spatial.count(SpatialLens::kTrace) > 0;
  json clips = json::array();
  for (std::size_t i = 0; i < active.size(); ++i) {
    if (!active[i]) continue;
    const AnimationClip& clip = set.clip(i);
    json item = {{"id", clip.id()},
                 {"local_frame", *active[i]},
                 {"pose", to_json(forward_kinematics(set.skeleton(), clip.frame(*active[i])))}};
    if (trace) {
      json ghosts = json::array();
      for (const TracedPose& p : trace_window(clip, *active[i], session.lens().params.trace_n)) {
        ghosts.push_back({{"frame", p.frame}, {"pose", to_json(p.pose)}});
      }
      item["trace"] = std::move(ghosts);
    }
    clips.push_back(std::move(item));
  }
  return {{"frame", t},
          {"extent", timeline_extent(session.timeline(), lengths)},
          {"clips", std::move(clips)}};
}

}  // namespace

Api::Api(EngineConfig config) : config_(std::move(config)) { validate(config_); }

std::size_t Api::session_count() const {
  std::lock_guard lock(sessions_mutex_);
  return sessions_.size();
}

std::shared_ptr<Api::Entry> Api::find(const std::string& id) const {
  std::lock_guard lock(sessions_mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) {
    throw NotFound("unknown session '" + id + "'", {{"session_id", id}});
  }
  return it->second;
}

ApiResponse Api::handle(const ApiRequest& request) {
  try {
    return route(request);
  } catch (const Error& error) {
    return json_response(http_status(error.code()), error_body(error));
  } catch (const json::exception& error) {
    return json_response(400, {{"code", "validation"},
                               {"message", error.what()},
                               {"detail", json::object()}});
  } catch (const std::exception& error) {
    return json_response(500, {{"code", "internal"},
                               {"message", error.what()},
                               {"detail", json::object()}});
  }
}

ApiResponse Api::route(const ApiRequest& request) {
  const std::vector<std::string> parts = split_path(request.path);
  if (parts.size() == 1 && parts[0] == "health") {
    return json_response(200, {{"status", "ok"}});
  }
  if (parts.empty() || parts[0] != "sessions") {
    throw NotFound("no route for " + request.path, {{"path", request.path}});
  }
  if (parts.size() == 1) {
    if (request.method == "POST") return create_session(request);
    if (request.method == "GET") {
      std::lock_guard lock(sessions_mutex_);
      json ids = json::array();
      for (const auto& [id, entry] : sessions_) ids.push_back(id);
      return json_response(200, {{"sessions", std::move(ids)}});
    }
    return method_not_allowed(request);
  }
  return session_request(request, parts);
}

ApiResponse Api::create_session(const ApiRequest& request) {
  LoadOptions options;
  options.fps = config_.fps;
  std::optional<Session> session;
  if (!request.files.empty()) {
    session.emplace(load_session(request.files, options), config_);
  } else {
    const json doc = parse_body(request);
    if (doc.is_object() && doc.contains("version")) {
      session.emplace(Session::from_json(doc, config_));
    } else if (doc.is_object() && doc.contains("files") && doc["files"].is_array()) {
      std::vector<SourceFile> files;
      for (std::size_t i = 0; i < doc["files"].size(); ++i) {
        const json& f = doc["files"][i];
        if (!f.is_object() || !f.contains("name") || !f.contains("content") ||
            !f["name"].is_string() || !f["content"].is_string()) {
          const std::string path = "files[" + std::to_string(i) + "]";
          throw ValidationError(path + ": expected {name, content}", {{"path", path}});
        }
        files.push_back({f["name"].get<std::string>(), f["content"].get<std::string>()});
      }
      session.emplace(load_session(files, options), config_);
    } else {
      throw ValidationError("expected multipart clip files, {files: [...]} or a session document");
    }
  }
  if (const std::string* seed = query(request, "seed")) {
    LensConfig lens = session->lens();
    const std::int64_t value = query_int("seed", *seed);
    if (value < 0) throw ValidationError("seed must be non-negative", {{"seed", value}});
    lens.params.seed = static_cast<std::uint64_t>(value);
    session->set_lens(lens);
  }
  const std::vector<std::string> clip_ids = session->clip_ids();
  std::string id;
  {
    std::lock_guard lock(sessions_mutex_);
    char buf[32];
    std::snprintf(buf, sizeof buf, "s%06llu", static_cast<unsigned long long>(next_id_++));
    id = buf;
    sessions_.emplace(id, std::make_shared<Entry>(std::move(*session)));
  }
  return json_response(201, {{"session_id", id}, {"clip_ids", clip_ids}});
}

ApiResponse Api::session_request(const ApiRequest& request,
                                 const std::vector<std::string>& parts) {
  const std::string& id = parts[1];
  if (parts.size() == 2 && request.method == "DELETE") {
    std::lock_guard lock(sessions_mutex_);
    if (sessions_.erase(id) == 0) {
      throw NotFound("unknown session '" + id + "'", {{"session_id", id}});
    }
    return {204, "", "application/json"};
  }
  std::shared_ptr<Entry> entry = find(id);
  std::lock_guard lock(entry->mutex);
  Session& session = entry->session;
  const std::string& m = request.method;

  if (parts.size() == 2) {
    if (m != "GET") return method_not_allowed(request);
    json doc = session.to_json();
    doc["session_id"] = id;
    return json_response(200, doc);
  }
  const std::string& resource = parts[2];

  if (resource == "timeline" && parts.size() == 3) {
    if (m == "PUT") {
      session.set_timeline(
          timeline_from_json(parse_body(request), session.timeline(), session.clip_ids()));
    } else if (m != "GET") {
      return method_not_allowed(request);
    }
    return json_response(200, state_json(session));
  }
  if (resource == "tick" && parts.size() == 3) {
    if (m != "POST") return method_not_allowed(request);
    const json body = parse_body(request);
    if (!body.is_object() || !body.contains("dt") || !body["dt"].is_number()) {
      throw ValidationError("expected {dt: seconds}", {{"path", "dt"}});
    }
    session.tick(body["dt"].get<double>());
    return json_response(200, state_json(session));
  }
  if (resource == "lens" && parts.size() == 3) {
    if (m == "PUT") {
      session.set_lens(
          lens_from_json(parse_body(request), session.lens(), session.animations().skeleton()));
    } else if (m != "GET") {
      return method_not_allowed(request);
    }
    return json_response(200, state_json(session));
  }
  if (resource == "scene" && parts.size() >= 4) {
    if (parts[3] == "camera" && parts.size() == 4) {
      if (m == "PUT") {
        session.set_camera(camera_from_json(parse_body(request)));
      } else if (m != "GET") {
        return method_not_allowed(request);
      }
      return json_response(200, to_json(session.camera()));
    }
    if (parts[3] == "objects" && parts.size() == 4) {
      if (m == "PUT") {
        const json body = parse_body(request);
        const json& list = body.is_object() ? body.value("objects", json()) : body;
        if (!list.is_array()) throw ValidationError("expected an array of objects");
        std::vector<SceneObject> objects;
        for (const json& o : list) objects.push_back(scene_object_from_json(o));
        session.set_objects(std::move(objects));
      } else if (m == "POST") {
        session.add_object(scene_object_from_json(parse_body(request)));
        return json_response(201, objects_json(session));
      } else if (m != "GET") {
        return method_not_allowed(request);
      }
      return json_response(200, objects_json(session));
    }
    if (parts[3] == "objects" && parts.size() == 5) {
      if (m == "DELETE") {
        session.remove_object(parts[4]);
      } else if (m == "PUT") {
        json body = parse_body(request);
        if (!body.is_object()) throw ValidationError("expected an object");
        body["id"] = parts[4];
        session.update_object(scene_object_from_json(body));
      } else {
        return method_not_allowed(request);
      }
      return json_response(200, objects_json(session));
    }
  }

  if (m != "GET") return method_not_allowed(request);

  if (resource == "pose-clusters") {
    return json_response(200, to_json(*session.pose_clustering(), session.clip_ids()));
  }
  if (resource == "joint-curves") {
    const std::string* name = query(request, "joint");
    const std::size_t joint =
        name ? resolve_joint(session, *name) : session.lens().temporal_joint;
    json body = to_json(*session.joint_curves(joint));
    body["joint_name"] = session.animations().skeleton().joint(joint).name;
    return json_response(200, body);
  }
  if (resource == "keyposes") {
    auto sets = session.keyposes();
    if (const std::string* clip = query(request, "clip")) {
      return json_response(200, to_json((*sets)[session.clip_index(*clip)]));
    }
    json all = json::array();
    for (const KeyposeSet& s : *sets) all.push_back(to_json(s));
    return json_response(200, {{"keyposes", std::move(all)}});
  }
  if (resource == "paths") {
    auto paths = session.joint_paths();
    json out = json::array();
    if (const std::string* name = query(request, "joint")) {
      const std::size_t joint = resolve_joint(session, *name);
      for (const auto& clip_paths : *paths) out.push_back(to_json(clip_paths[joint]));
      return json_response(200, {{"joint", joint},
                                 {"joint_name", session.animations().skeleton().joint(joint).name},
                                 {"paths", std::move(out)}});
    }
    for (const auto& clip_paths : *paths) {
      for (const JointPath& p : clip_paths) out.push_back(to_json(p));
    }
    return json_response(200, {{"paths", std::move(out)}});
  }
  if (resource == "collisions") {
    return json_response(200, collisions_json(session, *session.collisions()));
  }
  if (resource == "diff") {
    const auto [a, b] = diff_pair(session, request);
    const std::string* frame_text = query(request, "frame");
    const std::int64_t frame =
        frame_text ? query_int("frame", *frame_text) : session.timeline().current_frame;
    std::vector<std::int64_t> offsets;
    for (const ClipTrack& t : session.timeline().tracks) offsets.push_back(t.offset_frames);
    json body = to_json(diff_frames(session.animations(), a, b, offsets, frame));
    body["clip_a"] = session.animations().clip(a).id();
    body["clip_b"] = session.animations().clip(b).id();
    return json_response(200, body);
  }
  if (resource == "frame") {
    const std::string* t = query(request, "t");
    const std::int64_t frame = t ? query_int("t", *t) : session.timeline().current_frame;
    return json_response(200, frame_json(session, frame));
  }
  throw NotFound("no route for " + request.path, {{"path", request.path}});
}

}  // namespace animlens::server
