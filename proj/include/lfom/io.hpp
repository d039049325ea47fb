#pragma once

#include <exception>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "lfom/fom.hpp"
#include "lfom/geometry.hpp"
#include "lfom/oracle.hpp"
#include "lfom/scenario.hpp"

namespace lfom {

using json = nlohmann::json;

inline constexpr int kLayoutSchemaVersion = 1;
inline constexpr const char* kPresetDirEnv = "LAYOUTFOM_PRESET_DIR";

/// 17 significant digits, enough for a bit-exact round trip.
std::string format_number(double v);
double parse_number(std::string_view text);

Layout parse_layout(std::string_view text);
Layout layout_from_json(const json& doc);
json layout_to_json(const Layout& layout, const std::string& source = {});
std::string emit_layout(const Layout& layout, const std::string& source = {});
Layout load_layout_file(const std::string& path);

ScenarioConfig config_from_json(const json& j, ScenarioConfig base = {});
json config_to_json(const ScenarioConfig& c);
/// Config plus linear values and derived radii, echoed in every response.
json params_to_json(const ScenarioParams& p);

std::vector<std::string> builtin_preset_names();
/// Built-in name, or `<name>.json` inside $LAYOUTFOM_PRESET_DIR.
ScenarioConfig load_preset(const std::string& name);
/// Every preset visible to load_preset, keyed by name.
json list_presets();

json fom_to_json(const FomResult& f);
json breakdown_to_json(const SignalBreakdown& s);
json point_to_json(const PointEvaluation& e);
json grid_to_json(const HeatmapGrid& g);
json sweep_to_json(const std::vector<SweepRow>& rows);
json report_to_json(const ValidationReport& r);
std::string report_to_text(const ValidationReport& r);

std::string emit_heatmap_csv(const HeatmapGrid& g);
HeatmapGrid parse_heatmap_csv(std::string_view text);
std::string emit_sweep_csv(const std::vector<SweepRow>& rows);

/// {"error": {"code", "message", ...}} with gaps, wall id or field context.
json error_to_json(const std::exception& e);
int exit_code_for(const std::exception& e);
int http_status_for(const std::exception& e);

}  // namespace lfom
