#include "lfom/service.hpp"

#include <iostream>

#include <httplib.h>

#include "lfom/jobs.hpp"

namespace lfom {
namespace {

void send_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

httplib::Server::Handler job_handler(const std::string& mode, int workers) {
  return [mode, workers](const httplib::Request& req, httplib::Response& res) {
    try {
      json body = json::parse(req.body);
      if (!body.is_object()) throw SchemaError("request must be a JSON object", "");
      body["mode"] = mode;
      if (workers > 0 && !body.contains("workers")) body["workers"] = workers;
      send_json(res, 200, run_job(body));
    } catch (const json::parse_error& e) {
      send_json(res, 400, error_to_json(SchemaError(std::string("malformed JSON: ") + e.what(), "")));
    } catch (const std::exception& e) {
      send_json(res, http_status_for(e), error_to_json(e));
    }
  };
}

}  // namespace

std::unique_ptr<httplib::Server> make_server(const ServiceOptions& opt) {
  auto srv = std::make_unique<httplib::Server>();
  const int threads = opt.threads > 0 ? opt.threads : 1;
  srv->new_task_queue = [threads] { return new httplib::ThreadPool(static_cast<size_t>(threads)); };
  srv->set_default_headers({{"Access-Control-Allow-Origin", "*"},
                            {"Access-Control-Allow-Headers", "Content-Type"},
                            {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"}});

  srv->Get("/healthz", [](const httplib::Request&, httplib::Response& res) {
    res.set_content("ok", "text/plain");
  });
  srv->Get("/api/presets", [](const httplib::Request&, httplib::Response& res) {
    try {
      send_json(res, 200, list_presets());
    } catch (const std::exception& e) {
      send_json(res, http_status_for(e), error_to_json(e));
    }
  });
  srv->Post("/api/evaluate", job_handler("point", opt.workers));
  srv->Post("/api/heatmap", job_handler("grid", opt.workers));
  srv->Post("/api/sweep", job_handler("sweep", opt.workers));
  srv->Post("/api/validate", job_handler("validate", opt.workers));
  srv->Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
  return srv;
}

int serve(const ServiceOptions& opt) {
  auto srv = make_server(opt);
  std::cerr << "listening on http://" << opt.host << ":" << opt.port << std::endl;
  if (!srv->listen(opt.host, opt.port)) {
    std::cerr << json{{"error", {{"code", "Internal"}, {"message", "cannot bind " + opt.host + ":" + std::to_string(opt.port)}}}}.dump()
              << std::endl;
    return 4;
  }
  return 0;
}

}  // namespace lfom
