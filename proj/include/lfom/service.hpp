#pragma once

#include <memory>
#include <string>

namespace httplib {
class Server;
}

namespace lfom {

struct ServiceOptions {
  std::string host = "127.0.0.1";
  int port = 8080;
  int threads = 8;
  int workers = 0;  // grid / MC parallelism per request
};

/// Routes:
///   GET  /healthz, /api/presets
///   POST /api/evaluate, /api/heatmap, /api/sweep, /api/validate
std::unique_ptr<httplib::Server> make_server(const ServiceOptions& opt);

/// Blocks until the server stops.
int serve(const ServiceOptions& opt);

}  // namespace lfom
