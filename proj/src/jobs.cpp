#include "lfom/jobs.hpp"

#include <chrono>
#include <cmath>

#include "lfom/errors.hpp"

namespace lfom {
namespace {

double num_or(const json& obj, const char* key, double fallback) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (!v.is_number()) throw SchemaError(std::string("'") + key + "' must be a number", key);
  return v.get<double>();
}

Averaging averaging_of(const json& obj) {
  if (!obj.contains("averaging")) return Averaging::Linear;
  const auto s = obj.at("averaging").get<std::string>();
  if (s == "linear") return Averaging::Linear;
  if (s == "decibel") return Averaging::Decibel;
  throw SchemaError("averaging must be 'linear' or 'decibel'", "/grid/averaging");
}

std::vector<double> number_list(const json& obj, const char* key) {
  if (!obj.contains(key) || !obj.at(key).is_array()) {
    throw SchemaError(std::string("'") + key + "' must be an array of numbers", key);
  }
  std::vector<double> out;
  for (const auto& v : obj.at(key)) {
    if (!v.is_number()) throw SchemaError(std::string("'") + key + "' must hold numbers", key);
    out.push_back(v.get<double>());
  }
  return out;
}

const json& section(const json& req, const char* key) {
  static const json empty = json::object();
  if (!req.contains(key)) return empty;
  if (!req.at(key).is_object()) throw SchemaError(std::string("'") + key + "' must be an object", key);
  return req.at(key);
}

int workers_of(const json& req) {
  return static_cast<int>(num_or(req, "workers", 0.0));
}

Vec2 probe_of(const json& req) {
  const auto& pr = section(req, "probe");
  if (!pr.contains("x") || !pr.contains("y")) throw SchemaError("point mode needs probe {x, y}", "/probe");
  return {num_or(pr, "x", 0.0), num_or(pr, "y", 0.0)};
}

json run_validate(const json& req, const ScenarioParams& p) {
  const auto& v = section(req, "validate");
  ValidationOptions opt;
  opt.mc.samples = static_cast<std::uint64_t>(num_or(v, "samples", 1e7));
  opt.mc.seed = static_cast<std::uint64_t>(num_or(v, "seed", static_cast<double>(opt.mc.seed)));
  opt.mc.r_disc = num_or(v, "r_disc", 0.0);
  opt.mc.r_core = num_or(v, "r_core", -1.0);
  opt.mc.workers = workers_of(req);
  opt.run_mc = v.value("run_mc", true);
  opt.margin = num_or(v, "margin", kDefaultMargin);

  if (!req.contains("layout")) {
    return report_to_json(validate_tms(protocol_toy_models(p), p, opt));
  }
  const Layout layout = resolve_layout(req);
  std::vector<Vec2> probes;
  if (v.contains("probes")) {
    for (const auto& pt : v.at("probes")) {
      if (!pt.is_array() || pt.size() != 2) throw SchemaError("probes must be [[x, y], ...]", "/validate/probes");
      probes.push_back({pt[0].get<double>(), pt[1].get<double>()});
    }
  } else {
    probes = default_probes(layout, p, static_cast<int>(num_or(v, "probe_count", 20)), opt.margin);
  }
  return report_to_json(validate(layout, probes, p, opt));
}

}  // namespace

ScenarioParams resolve_params(const json& request) {
  std::string preset = "1ghz-75";
  if (request.contains("preset")) {
    if (!request.at("preset").is_string()) throw SchemaError("preset must be a string", "/preset");
    preset = request.at("preset").get<std::string>();
  }
  ScenarioConfig cfg = load_preset(preset);
  if (request.contains("params")) cfg = config_from_json(request.at("params"), cfg);
  return ScenarioParams(cfg);
}

Layout resolve_layout(const json& request) {
  if (!request.contains("layout")) throw SchemaError("request needs a layout", "/layout");
  return layout_from_json(request.at("layout"));
}

std::vector<ToyModel> protocol_toy_models(const ScenarioParams& p, int d0_points) {
  const double r_l = coverage_radii(p).r_l;
  std::vector<ToyModel> out;
  for (double theta_r : {-0.4, 0.0, 0.4, 1.0}) {
    for (int k = 0; k < d0_points; ++k) {
      const double d0 = 0.2 + (2.0 * r_l - 0.2) * k / (d0_points - 1);
      out.push_back({d0, -1.0, theta_r, 0.0});
    }
  }
  return out;
}

std::vector<Vec2> default_probes(const Layout& layout, const ScenarioParams& p, int count,
                                 double margin) {
  const auto b = layout.bounds();
  const int side = 4 * std::max(1, static_cast<int>(std::ceil(std::sqrt(count))));
  std::vector<Vec2> ok;
  for (int j = 0; j < side; ++j) {
    for (int i = 0; i < side; ++i) {
      const Vec2 c{b.min.x + (i + 0.5) * b.width() / side, b.min.y + (j + 0.5) * b.height() / side};
      try {
        evaluate_point(layout, c, p, margin);
        ok.push_back(c);
      } catch (const ProbeTooClose&) {
      } catch (const NotEnclosed&) {
      }
    }
  }
  if (static_cast<int>(ok.size()) <= count) return ok;
  std::vector<Vec2> out;
  for (int k = 0; k < count; ++k) out.push_back(ok[k * ok.size() / count]);
  return out;
}

json run_job(const json& request) {
  if (!request.is_object()) throw SchemaError("request must be a JSON object", "");
  const auto t0 = std::chrono::steady_clock::now();
  const std::string mode = request.value("mode", std::string("point"));
  const ScenarioParams p = resolve_params(request);

  json result;
  if (mode == "radii") {
    const auto r = coverage_radii(p);
    result = {{"r_o", r.r_o}, {"r_l", r.r_l}, {"r_n", r.r_n}};
  } else if (mode == "point") {
    const Layout layout = resolve_layout(request);
    const double margin = num_or(request, "margin", kDefaultMargin);
    const Vec2 probe = probe_of(request);
    result = point_to_json(evaluate_point(layout, probe, p, margin));
    result["probe"] = {{"x", probe.x}, {"y", probe.y}};
    if (auto room = point_in_room(layout, probe)) result["room"] = *room;
  } else if (mode == "grid") {
    const Layout layout = resolve_layout(request);
    const auto& g = section(request, "grid");
    GridOptions opt;
    opt.resolution = num_or(g, "resolution", opt.resolution);
    opt.margin = num_or(g, "margin", opt.margin);
    opt.averaging = averaging_of(g);
    opt.workers = workers_of(request);
    result = grid_to_json(evaluate_grid(layout, p, opt));
  } else if (mode == "sweep") {
    const auto& s = section(request, "sweep");
    SweepOptions opt;
    opt.cells_per_short_side = static_cast<int>(num_or(s, "cells_per_short_side", 20));
    opt.margin = num_or(s, "margin", opt.margin);
    opt.averaging = averaging_of(s);
    opt.workers = workers_of(request);
    result = sweep_to_json(sweep_rect(number_list(s, "areas"), number_list(s, "aspect_ratios"), p, opt));
  } else if (mode == "validate") {
    result = run_validate(request, p);
  } else {
    throw SchemaError("unknown mode '" + mode + "'", "/mode");
  }

  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {{"mode", mode}, {"params", params_to_json(p)}, {"result", result},
          {"timing", {{"seconds", secs}}}, {"diagnostics", json::array()}};
}

}  // namespace lfom
