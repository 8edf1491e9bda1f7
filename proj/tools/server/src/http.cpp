#include "animlens/server/http.hpp"

#include <algorithm>
#include <mutex>
#include <vector>

#include <httplib.h>

namespace animlens::server {
namespace {

std::mutex g_servers_mutex;
std::vector<httplib::Server*> g_servers;

ApiRequest to_api_request(const httplib::Request& req) {
  ApiRequest out;
  out.method = req.method;
  out.path = req.path;
  for (const auto& [key, value] : req.params) out.query.emplace(key, value);
  out.body = req.body;
  out.content_type = req.get_header_value("Content-Type");
  for (const auto& [field, part] : req.files) {
    out.files.push_back({part.filename.empty() ? part.name : part.filename, part.content});
  }
  return out;
}

}  // namespace

bool serve(Api& api, const HttpOptions& options,
           const std::function<void(int)>& on_listening) {
  httplib::Server server;
  server.set_default_headers({
      {"Access-Control-Allow-Origin", "*"},
      {"Access-Control-Allow-Methods", "GET, POST, PUT, DELETE, OPTIONS"},
      {"Access-Control-Allow-Headers", "Content-Type"},
  });
  if (!options.ui_dir.empty()) server.set_mount_point("/", options.ui_dir);

  auto handler = [&api](const httplib::Request& req, httplib::Response& res) {
    const ApiResponse response = api.handle(to_api_request(req));
    res.status = response.status;
    if (response.status != 204) res.set_content(response.body, response.content_type);
  };
  const char* pattern = R"((/sessions.*|/health))";
  server.Get(pattern, handler);
  server.Post(pattern, handler);
  server.Put(pattern, handler);
  server.Delete(pattern, handler);
  server.Options(".*", [](const httplib::Request&, httplib::Response& res) {
    res.status = 204;
  });

  int port = options.port;
  if (port == 0) {
    port = server.bind_to_any_port(options.host);
    if (port < 0) return false;
  } else if (!server.bind_to_port(options.host, port)) {
    return false;
  }
  {
    std::lock_guard lock(g_servers_mutex);
    g_servers.push_back(&server);
  }
  if (on_listening) on_listening(port);
  const bool ok = server.listen_after_bind();
  {
    std::lock_guard lock(g_servers_mutex);
    g_servers.erase(std::remove(g_servers.begin(), g_servers.end(), &server),
                    g_servers.end());
  }
  return ok;
}

void stop_all() {
  std::lock_guard lock(g_servers_mutex);
  for (httplib::Server* server : g_servers) server->stop();
}

}  // namespace animlens::server
