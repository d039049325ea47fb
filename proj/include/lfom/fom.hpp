#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "lfom/closedform.hpp"
#include "lfom/geometry.hpp"
#include "lfom/scenario.hpp"

namespace lfom {

struct SignalBreakdown {
  double p_o = 0.0;
  double i_o = 0.0;
  double p_l = 0.0;
  double i_l = 0.0;
  double p_n = 0.0;
  double i_n = 0.0;
};

struct FomResult {
  double g_i = 0.0;
  double g_p = 0.0;
  double gamma_o = 0.0;
  double gamma_b = 0.0;
};

FomResult fom_from_breakdown(const SignalBreakdown& s, double sigma2);

struct PointEvaluation {
  SignalBreakdown signals;
  FomResult fom;
  std::size_t tm_count = 0;
};

/// Sums the TM powers of an already decomposed probe; no enclosure check.
SignalBreakdown evaluate_decomposition(const TmDecomposition& d, const ScenarioParams& p);

/// Throws NotEnclosed, ProbeTooClose, or DomainError when the margin does not
/// exceed λ/4π.
PointEvaluation evaluate_point(const Layout& layout, Vec2 probe, const ScenarioParams& p,
                               double margin = kDefaultMargin);

enum class Averaging { Linear, Decibel };

struct GridOptions {
  double resolution = 0.25;
  double margin = kDefaultMargin;
  int workers = 0;  // 0: OpenMP default
  Averaging averaging = Averaging::Linear;
};

struct RoomAverage {
  std::string room;
  double g_i = 0.0;
  double g_p = 0.0;
  std::size_t cells = 0;
};

struct HeatmapGrid {
  Vec2 origin;  // lower-left corner of cell (0, 0)
  double cell = 0.0;
  std::size_t nx = 0;
  std::size_t ny = 0;
  std::vector<std::optional<FomResult>> cells;  // row-major, index j * nx + i
  std::vector<int> room_of;                     // index into rooms, -1 for none
  std::vector<std::string> rooms;
  std::vector<RoomAverage> room_averages;
  RoomAverage overall;
  Averaging averaging = Averaging::Linear;

  Vec2 center(std::size_t i, std::size_t j) const {
    return {origin.x + (static_cast<double>(i) + 0.5) * cell,
            origin.y + (static_cast<double>(j) + 0.5) * cell};
  }
  const std::optional<FomResult>& at(std::size_t i, std::size_t j) const {
    return cells[j * nx + i];
  }
};

HeatmapGrid evaluate_grid(const Layout& layout, const ScenarioParams& p,
                          const GridOptions& opt = {});
HeatmapGrid evaluate_grid_serial(const Layout& layout, const ScenarioParams& p,
                                 const GridOptions& opt = {});

/// Fills room_averages and overall from cells and room_of.
void compute_averages(HeatmapGrid& grid);

struct SweepOptions {
  int cells_per_short_side = 20;
  double margin = kDefaultMargin;
  int workers = 0;
  Averaging averaging = Averaging::Linear;
};

struct SweepRow {
  double area = 0.0;
  double aspect_ratio = 1.0;
  double width = 0.0;
  double height = 0.0;
  double avg_g_i = 0.0;
  double avg_g_p = 0.0;
  std::size_t cells = 0;
};

std::vector<SweepRow> sweep_rect(const std::vector<double>& areas,
                                 const std::vector<double>& aspect_ratios,
                                 const ScenarioParams& p, const SweepOptions& opt = {});

}  // namespace lfom
