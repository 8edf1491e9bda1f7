#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "animlens/animation_set.hpp"
#include "animlens/config.hpp"
#include "animlens/errors.hpp"
#include "animlens/session.hpp"

namespace animlens::server {

struct ApiRequest {
  std::string method;  // GET, POST, PUT, DELETE
  std::string path;    // without query string
  std::map<std::string, std::string> query;
  std::string body;
  std::string content_type;
  std::vector<SourceFile> files;  // multipart uploads, in request order
};

struct ApiResponse {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
};

/// Wire code of an engine error. Codes outside the public enum collapse to
/// "validation".
std::string api_error_code(ErrorCode code);
int http_status(ErrorCode code);

/// {code, message, detail}
nlohmann::json error_body(const Error& error);

/// Session-hosting JSON API, transport independent. Requests on different
/// sessions run concurrently; requests on one session are serialised.
class Api {
 public:
  explicit Api(EngineConfig config = {});

  ApiResponse handle(const ApiRequest& request);

  std::size_t session_count() const;
  const EngineConfig& config() const noexcept { return config_; }

 private:
  struct Entry {
    std::mutex mutex;
    Session session;
    explicit Entry(Session s) : session(std::move(s)) {}
  };

  ApiResponse route(const ApiRequest& request);
  ApiResponse create_session(const ApiRequest& request);
  ApiResponse session_request(const ApiRequest& request,
                              const std::vector<std::string>& parts);
  std::shared_ptr<Entry> find(const std::string& id) const;

  EngineConfig config_;
  mutable std::mutex sessions_mutex_;
  std::map<std::string, std::shared_ptr<Entry>> sessions_;
  std::uint64_t next_id_ = 1;
};

}  // namespace animlens::server
