#pragma once

#include <functional>
#include <string>

#include "animlens/server/api.hpp"

namespace animlens::server {

struct HttpOptions {
  std::string host = "0.0.0.0";
  int port = 8080;  // 0 binds an ephemeral port
  std::string ui_dir;  // served under / when non-empty
};

/// Blocking HTTP front end for `api`. `on_listening` receives the bound port
/// once the socket is open. Returns false if the socket could not be bound.
bool serve(Api& api, const HttpOptions& options,
           const std::function<void(int)>& on_listening = {});

/// Stops every server started by serve() in this process.
void stop_all();

}  // namespace animlens::server
