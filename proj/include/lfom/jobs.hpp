#pragma once

#include <vector>

#include "lfom/io.hpp"

namespace lfom {

/// Preset (default "1ghz-75") with "params" overrides applied.
ScenarioParams resolve_params(const json& request);
Layout resolve_layout(const json& request);

/// θ_l = -1, θ_r in {-0.4, 0, 0.4, 1}, D0 spread over [0.2, 2 R_L].
std::vector<ToyModel> protocol_toy_models(const ScenarioParams& p, int d0_points = 24);

/// Up to `count` probe points on a lattice over the layout where evaluation
/// succeeds, spread evenly.
std::vector<Vec2> default_probes(const Layout& layout, const ScenarioParams& p, int count,
                                 double margin = kDefaultMargin);

/// Shared by the CLI and the HTTP service.
/// request: {mode: radii|point|grid|sweep|validate, preset, params, layout,
///           probe: {x, y}, grid: {...}, sweep: {...}, validate: {...}, workers}
json run_job(const json& request);

}  // namespace lfom
