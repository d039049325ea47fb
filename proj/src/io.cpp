#include "lfom/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include "lfom/errors.hpp"

namespace lfom {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::Domain:
      return "DomainError";
    case ErrorCode::NumericalGuard:
      return "NumericalGuard";
    case ErrorCode::ProbeTooClose:
      return "ProbeTooClose";
    case ErrorCode::DegenerateGeometry:
      return "DegenerateGeometry";
    case ErrorCode::NotEnclosed:
      return "NotEnclosed";
    case ErrorCode::NonConvergence:
      return "NonConvergence";
    case ErrorCode::Schema:
      break;
  }
  return "SchemaError";
}

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SchemaError("cannot open '" + path + "'", path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::pair<int, int> line_col(std::string_view text, std::size_t byte) {
  int line = 1;
  int col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

json parse_json_text(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // nlohmann reports the byte just past the offending token
    const auto [line, col] = line_col(text, e.byte > 0 ? e.byte - 1 : 0);
    throw SchemaError(std::string("malformed JSON: ") + e.what(), "", line, col);
  }
}

const json& need(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw SchemaError("missing field '" + key + "'", path + "/" + key);
  }
  return obj.at(key);
}

double need_number(const json& obj, const std::string& key, const std::string& path) {
  const auto& v = need(obj, key, path);
  if (!v.is_number()) throw SchemaError("field '" + key + "' must be a number", path + "/" + key);
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw SchemaError("field '" + key + "' must be finite", path + "/" + key);
  return d;
}

std::string need_string(const json& obj, const std::string& key, const std::string& path) {
  const auto& v = need(obj, key, path);
  if (!v.is_string()) throw SchemaError("field '" + key + "' must be a string", path + "/" + key);
  return v.get<std::string>();
}

Vec2 need_point(const json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    throw SchemaError("vertex must be [x, y]", path);
  }
  return {v[0].get<double>(), v[1].get<double>()};
}

struct BuiltinPreset {
  const char* name;
  double f_c_hz;
  double p_th_dbw_m2;
};

constexpr BuiltinPreset kBuiltins[] = {
    {"1ghz-75", 1.0e9, -75.0},
    {"1ghz-90", 1.0e9, -90.0},
    {"1ghz-100", 1.0e9, -100.0},
    {"28ghz-100", 28.0e9, -100.0},
};

const std::set<std::string>& config_keys() {
  static const std::set<std::string> keys{"name", "f_c_hz", "p_t_dbw_m2", "p_th_dbw_m2",
                                          "sigma2_dbw", "h_t_m", "h_r_m", "n_l", "n_n"};
  return keys;
}

json number_or_null(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

double to_db(double v) { return v > 0.0 ? 10.0 * std::log10(v) : -std::numeric_limits<double>::infinity(); }

std::vector<std::string> split(std::string_view line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.emplace_back(line.substr(start, pos == std::string_view::npos ? line.npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

json average_to_json(const RoomAverage& a) {
  return {{"room", a.room}, {"g_i", a.g_i}, {"g_p", a.g_p}, {"cells", a.cells}};
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

double parse_number(std::string_view text) {
  if (text == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (text == "inf") return std::numeric_limits<double>::infinity();
  if (text == "-inf") return -std::numeric_limits<double>::infinity();
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw SchemaError("not a number: '" + std::string(text) + "'", "");
  }
  return v;
}

Layout layout_from_json(const json& doc) {
  if (!doc.is_object()) throw SchemaError("layout document must be a JSON object", "");
  const auto& ver = need(doc, "schema_version", "");
  if (!ver.is_number_integer() || ver.get<int>() != kLayoutSchemaVersion) {
    throw SchemaError("unsupported schema_version (expected 1)", "/schema_version");
  }
  if (need_string(doc, "units", "") != "m") {
    throw SchemaError("units must be \"m\"", "/units");
  }
  std::string name;
  if (doc.contains("name")) name = need_string(doc, "name", "");

  const auto& walls_j = need(doc, "walls", "");
  if (!walls_j.is_array()) throw SchemaError("walls must be an array", "/walls");
  std::vector<WallSegment> walls;
  std::set<std::string> ids;
  for (std::size_t i = 0; i < walls_j.size(); ++i) {
    const std::string path = "/walls/" + std::to_string(i);
    const auto& w = walls_j[i];
    WallSegment seg;
    seg.id = need_string(w, "id", path);
    seg.a = {need_number(w, "ax", path), need_number(w, "ay", path)};
    seg.b = {need_number(w, "bx", path), need_number(w, "by", path)};
    if (!ids.insert(seg.id).second) {
      throw SchemaError("duplicate wall id '" + seg.id + "'", path + "/id");
    }
    if (seg.a == seg.b) {
      throw SchemaError("wall '" + seg.id + "' has zero length", path);
    }
    walls.push_back(seg);
  }

  std::vector<Room> rooms;
  if (doc.contains("rooms")) {
    const auto& rooms_j = doc.at("rooms");
    if (!rooms_j.is_array()) throw SchemaError("rooms must be an array", "/rooms");
    std::set<std::string> room_ids;
    for (std::size_t i = 0; i < rooms_j.size(); ++i) {
      const std::string path = "/rooms/" + std::to_string(i);
      Room r;
      r.id = need_string(rooms_j[i], "id", path);
      if (!room_ids.insert(r.id).second) {
        throw SchemaError("duplicate room id '" + r.id + "'", path + "/id");
      }
      const auto& verts = need(rooms_j[i], "vertices", path);
      if (!verts.is_array()) throw SchemaError("vertices must be an array", path + "/vertices");
      for (std::size_t k = 0; k < verts.size(); ++k) {
        r.vertices.push_back(need_point(verts[k], path + "/vertices/" + std::to_string(k)));
      }
      rooms.push_back(std::move(r));
    }
  }
  try {
    return Layout(std::move(walls), std::move(rooms), std::move(name));
  } catch (const DegenerateGeometry& e) {
    throw SchemaError(e.what(), "/rooms");
  }
}

Layout parse_layout(std::string_view text) { return layout_from_json(parse_json_text(text)); }

json layout_to_json(const Layout& layout, const std::string& source) {
  json doc;
  doc["schema_version"] = kLayoutSchemaVersion;
  doc["units"] = "m";
  if (!layout.name().empty()) doc["name"] = layout.name();
  if (!source.empty()) doc["source"] = source;
  doc["walls"] = json::array();
  for (const auto& w : layout.walls()) {
    doc["walls"].push_back({{"id", w.id}, {"ax", w.a.x}, {"ay", w.a.y}, {"bx", w.b.x}, {"by", w.b.y}});
  }
  doc["rooms"] = json::array();
  for (const auto& r : layout.rooms()) {
    json verts = json::array();
    for (auto v : r.vertices) verts.push_back({v.x, v.y});
    doc["rooms"].push_back({{"id", r.id}, {"vertices", verts}});
  }
  return doc;
}

std::string emit_layout(const Layout& layout, const std::string& source) {
  return layout_to_json(layout, source).dump(2) + "\n";
}

Layout load_layout_file(const std::string& path) { return parse_layout(read_file(path)); }

ScenarioConfig config_from_json(const json& j, ScenarioConfig base) {
  if (!j.is_object()) throw SchemaError("parameters must be a JSON object", "/params");
  for (const auto& [key, value] : j.items()) {
    if (!config_keys().count(key)) throw SchemaError("unknown parameter '" + key + "'", "/params/" + key);
    if (key == "name") {
      if (!value.is_string()) throw SchemaError("name must be a string", "/params/name");
      base.name = value.get<std::string>();
      continue;
    }
    double v;
    if (value.is_null() && key == "sigma2_dbw") {
      v = -std::numeric_limits<double>::infinity();
    } else if (value.is_number()) {
      v = value.get<double>();
    } else {
      throw SchemaError("parameter '" + key + "' must be a number", "/params/" + key);
    }
    if (key == "f_c_hz") base.f_c_hz = v;
    else if (key == "p_t_dbw_m2") base.p_t_dbw_m2 = v;
    else if (key == "p_th_dbw_m2") base.p_th_dbw_m2 = v;
    else if (key == "sigma2_dbw") base.sigma2_dbw = v;
    else if (key == "h_t_m") base.h_t_m = v;
    else if (key == "h_r_m") base.h_r_m = v;
    else if (key == "n_l") base.n_l = v;
    else if (key == "n_n") base.n_n = v;
  }
  return base;
}

json config_to_json(const ScenarioConfig& c) {
  json j{{"f_c_hz", c.f_c_hz},          {"p_t_dbw_m2", c.p_t_dbw_m2},
         {"p_th_dbw_m2", c.p_th_dbw_m2}, {"sigma2_dbw", number_or_null(c.sigma2_dbw)},
         {"h_t_m", c.h_t_m},            {"h_r_m", c.h_r_m},
         {"n_l", c.n_l},                {"n_n", c.n_n}};
  if (!c.name.empty()) j["name"] = c.name;
  return j;
}

json params_to_json(const ScenarioParams& p) {
  const auto r = coverage_radii(p);
  json j = config_to_json(p.config());
  j["linear"] = {{"p_t_w_m2", p.p_t()},
                 {"p_th_w_m2", p.p_th()},
                 {"sigma2_w", p.sigma2()},
                 {"lambda_m", p.lambda()}};
  j["radii_m"] = {{"r_o", r.r_o}, {"r_l", r.r_l}, {"r_n", r.r_n}};
  j["open_space_regime"] = p.open_space_far_regime() ? "two-ray" : "free-space";
  return j;
}

std::vector<std::string> builtin_preset_names() {
  std::vector<std::string> out;
  for (const auto& b : kBuiltins) out.emplace_back(b.name);
  return out;
}

ScenarioConfig load_preset(const std::string& name) {
  for (const auto& b : kBuiltins) {
    if (name == b.name) {
      ScenarioConfig c;
      c.name = b.name;
      c.f_c_hz = b.f_c_hz;
      c.p_th_dbw_m2 = b.p_th_dbw_m2;
      return c;
    }
  }
  if (const char* dir = std::getenv(kPresetDirEnv)) {
    const auto path = std::filesystem::path(dir) / (name + ".json");
    if (name.find('/') == std::string::npos && name.find("..") == std::string::npos &&
        std::filesystem::exists(path)) {
      ScenarioConfig base;
      base.name = name;
      return config_from_json(parse_json_text(read_file(path.string())), base);
    }
  }
  throw SchemaError("unknown preset '" + name + "'", "/preset");
}

json list_presets() {
  json out = json::object();
  for (const auto& n : builtin_preset_names()) out[n] = config_to_json(load_preset(n));
  if (const char* dir = std::getenv(kPresetDirEnv)) {
    std::error_code ec;
    std::vector<std::string> names;
    for (const auto& e : std::filesystem::directory_iterator(dir, ec)) {
      if (e.path().extension() == ".json") names.push_back(e.path().stem().string());
    }
    std::sort(names.begin(), names.end());
    for (const auto& n : names) {
      if (out.contains(n)) continue;
      try {
        out[n] = config_to_json(load_preset(n));
      } catch (const SchemaError&) {
      }
    }
  }
  return out;
}

json fom_to_json(const FomResult& f) {
  return {{"g_i", f.g_i},
          {"g_p", f.g_p},
          {"gamma_o", f.gamma_o},
          {"gamma_b", f.gamma_b},
          {"g_i_db", to_db(f.g_i)},
          {"g_p_db", number_or_null(to_db(f.g_p))},
          {"gamma_o_db", to_db(f.gamma_o)},
          {"gamma_b_db", number_or_null(to_db(f.gamma_b))}};
}

json breakdown_to_json(const SignalBreakdown& s) {
  return {{"p_o", s.p_o}, {"i_o", s.i_o}, {"p_l", s.p_l},
          {"i_l", s.i_l}, {"p_n", s.p_n}, {"i_n", s.i_n}};
}

json point_to_json(const PointEvaluation& e) {
  return {{"fom", fom_to_json(e.fom)}, {"signals", breakdown_to_json(e.signals)},
          {"tm_count", e.tm_count}};
}

json grid_to_json(const HeatmapGrid& g) {
  json j;
  j["origin"] = {g.origin.x, g.origin.y};
  j["cell"] = g.cell;
  j["nx"] = g.nx;
  j["ny"] = g.ny;
  j["averaging"] = g.averaging == Averaging::Decibel ? "decibel" : "linear";
  j["rooms"] = g.rooms;
  json gi = json::array(), gp = json::array(), go = json::array(), gb = json::array(),
       room = json::array();
  for (std::size_t k = 0; k < g.cells.size(); ++k) {
    const auto& c = g.cells[k];
    gi.push_back(c ? json(c->g_i) : json(nullptr));
    gp.push_back(c ? json(c->g_p) : json(nullptr));
    go.push_back(c ? json(c->gamma_o) : json(nullptr));
    gb.push_back(c ? json(c->gamma_b) : json(nullptr));
    room.push_back(g.room_of[k]);
  }
  j["g_i"] = gi;
  j["g_p"] = gp;
  j["gamma_o"] = go;
  j["gamma_b"] = gb;
  j["room_of"] = room;
  j["averages"] = json::array();
  for (const auto& a : g.room_averages) j["averages"].push_back(average_to_json(a));
  j["overall"] = average_to_json(g.overall);
  return j;
}

json sweep_to_json(const std::vector<SweepRow>& rows) {
  json out = json::array();
  for (const auto& r : rows) {
    out.push_back({{"area_m2", r.area},
                   {"aspect_ratio", r.aspect_ratio},
                   {"width_m", r.width},
                   {"height_m", r.height},
                   {"avg_g_i", r.avg_g_i},
                   {"avg_g_p", r.avg_g_p},
                   {"cells", r.cells}});
  }
  return out;
}

json report_to_json(const ValidationReport& r) {
  json j;
  j["pass"] = r.pass();
  j["quadrature"] = {{"pass", r.quad_pass},
                     {"toy_models", r.tms.size()},
                     {"max_rel_dev",
                      {{"p_l", r.max_rel_dev.p_l},
                       {"i_l", r.max_rel_dev.i_l},
                       {"p_n", r.max_rel_dev.p_n},
                       {"i_n", r.max_rel_dev.i_n}}}};
  json probes = json::array();
  for (const auto& c : r.probes) {
    probes.push_back({{"x", c.probe.x},
                      {"y", c.probe.y},
                      {"closed", {{"g_i", c.closed.g_i}, {"g_p", c.closed.g_p}}},
                      {"mc",
                       {{"g_i", c.mc.fom.g_i},
                        {"g_p", c.mc.fom.g_p},
                        {"g_i_stderr", c.mc.g_i_stderr},
                        {"g_p_stderr", c.mc.g_p_stderr},
                        {"r_disc", c.mc.r_disc}}},
                      {"z_g_i", c.z_g_i},
                      {"z_g_p", c.z_g_p}});
  }
  j["monte_carlo"] = {{"pass", r.mc_pass},
                      {"seed", r.seed},
                      {"samples", r.samples},
                      {"max_z", r.max_z},
                      {"probes", probes}};
  j["timing"] = {{"closed_form_seconds_per_point", r.closed_seconds},
                 {"monte_carlo_seconds_per_point", r.mc_seconds},
                 {"speedup", r.speedup}};
  return j;
}

std::string report_to_text(const ValidationReport& r) {
  std::ostringstream os;
  os << "quadrature: " << r.tms.size() << " toy models, max rel dev"
     << " P_L=" << r.max_rel_dev.p_l << " I_L=" << r.max_rel_dev.i_l
     << " P_N=" << r.max_rel_dev.p_n << " I_N=" << r.max_rel_dev.i_n << "  "
     << (r.quad_pass ? "PASS" : "FAIL") << "\n";
  if (!r.probes.empty()) {
    os << "monte carlo: seed " << r.seed << ", " << r.samples << " samples/probe\n";
    os << "       x        y       g_I(cf)      g_I(mc)   z      g_P(cf)      g_P(mc)   z\n";
    for (const auto& c : r.probes) {
      char line[160];
      std::snprintf(line, sizeof line, "%8.3f %8.3f %12.6g %12.6g %5.2f %12.6g %12.6g %5.2f\n",
                    c.probe.x, c.probe.y, c.closed.g_i, c.mc.fom.g_i, c.z_g_i, c.closed.g_p,
                    c.mc.fom.g_p, c.z_g_p);
      os << line;
    }
    os << "max z = " << r.max_z << "  " << (r.mc_pass ? "PASS" : "FAIL") << "\n";
    os << "closed form " << r.closed_seconds << " s/point, monte carlo " << r.mc_seconds
       << " s/point, speedup " << r.speedup << "x\n";
  }
  return os.str();
}

std::string emit_heatmap_csv(const HeatmapGrid& g) {
  std::ostringstream os;
  os << "# layoutfom heatmap v1\n";
  os << "# origin_x=" << format_number(g.origin.x) << " origin_y=" << format_number(g.origin.y)
     << " cell=" << format_number(g.cell) << " nx=" << g.nx << " ny=" << g.ny
     << " averaging=" << (g.averaging == Averaging::Decibel ? "decibel" : "linear") << "\n";
  for (const auto& r : g.rooms) os << "# room," << r << "\n";
  os << "x_m,y_m,g_i_linear,g_p_linear,g_i_db,g_p_db,gamma_b_db,valid,gamma_o_linear,"
        "gamma_b_linear,room\n";
  for (std::size_t j = 0; j < g.ny; ++j) {
    for (std::size_t i = 0; i < g.nx; ++i) {
      const std::size_t k = j * g.nx + i;
      const Vec2 c = g.center(i, j);
      os << format_number(c.x) << ',' << format_number(c.y) << ',';
      if (const auto& f = g.cells[k]) {
        os << format_number(f->g_i) << ',' << format_number(f->g_p) << ','
           << format_number(to_db(f->g_i)) << ',' << format_number(to_db(f->g_p)) << ','
           << format_number(to_db(f->gamma_b)) << ",1," << format_number(f->gamma_o) << ','
           << format_number(f->gamma_b) << ',';
      } else {
        os << ",,,,,0,,,";
      }
      if (g.room_of[k] >= 0) os << g.rooms[static_cast<std::size_t>(g.room_of[k])];
      os << '\n';
    }
  }
  auto avg = [&os](const RoomAverage& a) {
    os << "# average," << a.room << ',' << format_number(a.g_i) << ',' << format_number(a.g_p)
       << ',' << a.cells << '\n';
  };
  for (const auto& a : g.room_averages) avg(a);
  avg(g.overall);
  return os.str();
}

HeatmapGrid parse_heatmap_csv(std::string_view text) {
  HeatmapGrid g;
  bool have_dims = false;
  bool have_header = false;
  std::size_t k = 0;
  std::map<std::string, int> room_index;
  std::vector<RoomAverage> averages;
  int line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (line.empty()) continue;
    auto fail = [&](const std::string& msg) { throw SchemaError(msg, "csv", line_no, 1); };

    if (line.rfind("# origin_x=", 0) == 0) {
      std::istringstream is{std::string(line.substr(2))};
      std::string tok;
      while (is >> tok) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos) fail("bad header token '" + tok + "'");
        const std::string key = tok.substr(0, eq);
        const std::string val = tok.substr(eq + 1);
        if (key == "origin_x") g.origin.x = parse_number(val);
        else if (key == "origin_y") g.origin.y = parse_number(val);
        else if (key == "cell") g.cell = parse_number(val);
        else if (key == "nx") g.nx = std::stoul(val);
        else if (key == "ny") g.ny = std::stoul(val);
        else if (key == "averaging") g.averaging = val == "decibel" ? Averaging::Decibel : Averaging::Linear;
      }
      g.cells.assign(g.nx * g.ny, std::nullopt);
      g.room_of.assign(g.nx * g.ny, -1);
      have_dims = true;
      continue;
    }
    if (line.rfind("# room,", 0) == 0) {
      const std::string id(line.substr(7));
      room_index[id] = static_cast<int>(g.rooms.size());
      g.rooms.push_back(id);
      continue;
    }
    if (line.rfind("# average,", 0) == 0) {
      const auto f = split(line.substr(10), ',');
      if (f.size() != 4) fail("average line needs room,g_i,g_p,cells");
      averages.push_back({f[0], parse_number(f[1]), parse_number(f[2]), std::stoul(f[3])});
      continue;
    }
    if (line[0] == '#') continue;
    if (!have_header) {
      if (line.rfind("x_m,y_m,", 0) != 0) fail("missing column header");
      have_header = true;
      continue;
    }
    if (!have_dims) fail("grid dimensions must precede data rows");
    if (k >= g.cells.size()) fail("more rows than nx * ny");
    const auto f = split(line, ',');
    if (f.size() != 11) fail("expected 11 columns");
    if (f[7] == "1") {
      FomResult r;
      r.g_i = parse_number(f[2]);
      r.g_p = parse_number(f[3]);
      r.gamma_o = parse_number(f[8]);
      r.gamma_b = parse_number(f[9]);
      g.cells[k] = r;
    } else if (f[7] != "0") {
      fail("valid column must be 0 or 1");
    }
    if (!f[10].empty()) {
      const auto it = room_index.find(f[10]);
      if (it == room_index.end()) fail("unknown room '" + f[10] + "'");
      g.room_of[k] = it->second;
    }
    ++k;
  }
  if (!have_dims || k != g.cells.size()) throw SchemaError("heatmap CSV is truncated", "csv");
  if (!averages.empty()) {
    g.overall = averages.back();
    averages.pop_back();
    g.room_averages = averages;
  }
  return g;
}

std::string emit_sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << "area_m2,aspect_ratio,width_m,height_m,avg_g_i,avg_g_p,avg_g_i_db,avg_g_p_db,cells\n";
  for (const auto& r : rows) {
    os << format_number(r.area) << ',' << format_number(r.aspect_ratio) << ','
       << format_number(r.width) << ',' << format_number(r.height) << ','
       << format_number(r.avg_g_i) << ',' << format_number(r.avg_g_p) << ','
       << format_number(to_db(r.avg_g_i)) << ',' << format_number(to_db(r.avg_g_p))
       << ',' << r.cells << '\n';
  }
  return os.str();
}

json error_to_json(const std::exception& e) {
  json err;
  err["message"] = e.what();
  if (const auto* le = dynamic_cast<const Error*>(&e)) {
    err["code"] = std::string(to_string(le->code()));
    if (const auto* ne = dynamic_cast<const NotEnclosed*>(&e)) {
      json gaps = json::array();
      for (const auto& g : ne->gaps()) gaps.push_back({g.begin, g.end});
      err["gaps"] = gaps;
    } else if (const auto* pe = dynamic_cast<const ProbeTooClose*>(&e)) {
      err["wall_id"] = pe->wall_id();
      err["distance_m"] = pe->distance();
    } else if (const auto* se = dynamic_cast<const SchemaError*>(&e)) {
      err["field"] = se->field();
      if (se->line() > 0) {
        err["line"] = se->line();
        err["column"] = se->column();
      }
    }
  } else if (dynamic_cast<const json::exception*>(&e)) {
    err["code"] = "SchemaError";
  } else {
    err["code"] = "Internal";
  }
  return {{"error", err}};
}

int exit_code_for(const std::exception& e) {
  if (const auto* le = dynamic_cast<const Error*>(&e)) {
    switch (le->code()) {
      case ErrorCode::NotEnclosed:
      case ErrorCode::ProbeTooClose:
        return 2;
      case ErrorCode::Schema:
      case ErrorCode::Domain:
      case ErrorCode::DegenerateGeometry:
        return 3;
      case ErrorCode::NumericalGuard:
      case ErrorCode::NonConvergence:
        return 4;
    }
  }
  if (dynamic_cast<const json::exception*>(&e)) return 3;
  return 4;
}

int http_status_for(const std::exception& e) {
  switch (exit_code_for(e)) {
    case 2:
      return 422;
    case 3:
      return 400;
    default:
      return 500;
  }
}

}  // namespace lfom
