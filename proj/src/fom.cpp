#include "lfom/fom.hpp"

#include <cmath>
#include <exception>
#include <sstream>

#include <omp.h>

#include "lfom/errors.hpp"

namespace lfom {
namespace {

void check_margin(double margin, const ScenarioParams& p) {
  if (!(margin > p.near_field_radius())) {
    std::ostringstream os;
    os << "margin " << margin << " m must exceed lambda/4pi = " << p.near_field_radius()
       << " m";
    throw DomainError(os.str());
  }
}

HeatmapGrid grid_skeleton(const Layout& layout, const GridOptions& opt) {
  if (!(opt.resolution > 0.0)) throw DomainError("grid resolution must be positive");
  if (layout.walls().empty()) throw DegenerateGeometry("layout has no walls");
  const auto b = layout.bounds();
  HeatmapGrid g;
  g.origin = b.min;
  g.cell = opt.resolution;
  g.nx = static_cast<std::size_t>(std::max(1.0, std::ceil(b.width() / opt.resolution - 1e-9)));
  g.ny = static_cast<std::size_t>(std::max(1.0, std::ceil(b.height() / opt.resolution - 1e-9)));
  g.cells.resize(g.nx * g.ny);
  g.room_of.assign(g.nx * g.ny, -1);
  g.averaging = opt.averaging;
  for (const auto& r : layout.rooms()) g.rooms.push_back(r.id);
  return g;
}

void fill_cell(HeatmapGrid& g, std::size_t k, const Layout& layout, const ScenarioParams& p,
               const GridOptions& opt) {
  const Vec2 c = g.center(k % g.nx, k / g.nx);
  if (auto room = point_in_room(layout, c)) {
    for (std::size_t r = 0; r < g.rooms.size(); ++r) {
      if (g.rooms[r] == *room) g.room_of[k] = static_cast<int>(r);
    }
  }
  try {
    g.cells[k] = evaluate_point(layout, c, p, opt.margin).fom;
  } catch (const ProbeTooClose&) {
  } catch (const NotEnclosed&) {
  }
}

}  // namespace

FomResult fom_from_breakdown(const SignalBreakdown& s, double sigma2) {
  FomResult f;
  const double p_b = s.p_l + s.p_n;
  const double i_b = s.i_l + s.i_n;
  f.g_i = (s.i_o + sigma2) / (i_b + sigma2);
  f.g_p = p_b / s.p_o;
  f.gamma_o = s.p_o / (s.i_o + sigma2);
  f.gamma_b = p_b / (i_b + sigma2);
  return f;
}

SignalBreakdown evaluate_decomposition(const TmDecomposition& d, const ScenarioParams& p) {
  const auto radii = coverage_radii(p);
  const auto os = open_space_powers(p);
  TmPowers sum;
  for (const auto& tm : d.tms) sum += tm_powers(tm, p, radii);
  return {os.p_o, os.i_o, sum.p_l, sum.i_l, sum.p_n, sum.i_n};
}

PointEvaluation evaluate_point(const Layout& layout, Vec2 probe, const ScenarioParams& p,
                               double margin) {
  check_margin(margin, p);
  const auto d = decompose(layout, probe, margin);
  if (!enclosure_check(d)) {
    std::ostringstream os;
    os << "probe (" << probe.x << ", " << probe.y << ") is not enclosed: "
       << 2.0 * kPi - d.covered << " rad of azimuth hit no wall";
    throw NotEnclosed(os.str(), d.gaps);
  }
  PointEvaluation out;
  out.signals = evaluate_decomposition(d, p);
  out.fom = fom_from_breakdown(out.signals, p.sigma2());
  out.tm_count = d.tms.size();
  return out;
}

void compute_averages(HeatmapGrid& g) {
  const bool db = g.averaging == Averaging::Decibel;
  auto term = [db](double v) { return db ? 10.0 * std::log10(v) : v; };
  auto finish = [db](double mean) { return db ? std::pow(10.0, mean / 10.0) : mean; };

  std::vector<double> si(g.rooms.size(), 0.0), sp(g.rooms.size(), 0.0);
  std::vector<std::size_t> n(g.rooms.size(), 0);
  double ti = 0.0, tp = 0.0;
  std::size_t tn = 0;
  for (std::size_t k = 0; k < g.cells.size(); ++k) {
    if (!g.cells[k]) continue;
    const double vi = term(g.cells[k]->g_i);
    const double vp = term(g.cells[k]->g_p);
    ti += vi;
    tp += vp;
    ++tn;
    if (g.room_of[k] >= 0) {
      const auto r = static_cast<std::size_t>(g.room_of[k]);
      si[r] += vi;
      sp[r] += vp;
      ++n[r];
    }
  }
  g.room_averages.clear();
  for (std::size_t r = 0; r < g.rooms.size(); ++r) {
    RoomAverage a{g.rooms[r], 0.0, 0.0, n[r]};
    if (n[r] > 0) {
      a.g_i = finish(si[r] / n[r]);
      a.g_p = finish(sp[r] / n[r]);
    }
    g.room_averages.push_back(a);
  }
  g.overall = {"all", 0.0, 0.0, tn};
  if (tn > 0) {
    g.overall.g_i = finish(ti / tn);
    g.overall.g_p = finish(tp / tn);
  }
}

HeatmapGrid evaluate_grid_serial(const Layout& layout, const ScenarioParams& p,
                                 const GridOptions& opt) {
  check_margin(opt.margin, p);
  auto g = grid_skeleton(layout, opt);
  for (std::size_t k = 0; k < g.cells.size(); ++k) fill_cell(g, k, layout, p, opt);
  compute_averages(g);
  return g;
}

HeatmapGrid evaluate_grid(const Layout& layout, const ScenarioParams& p,
                          const GridOptions& opt) {
  check_margin(opt.margin, p);
  auto g = grid_skeleton(layout, opt);
  const auto total = static_cast<long long>(g.cells.size());
  const int threads = opt.workers > 0 ? opt.workers : omp_get_max_threads();
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 8) num_threads(threads)
  for (long long k = 0; k < total; ++k) {
    try {
      fill_cell(g, static_cast<std::size_t>(k), layout, p, opt);
    } catch (...) {
#pragma omp critical(lfom_grid_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  compute_averages(g);
  return g;
}

std::vector<SweepRow> sweep_rect(const std::vector<double>& areas,
                                 const std::vector<double>& aspect_ratios,
                                 const ScenarioParams& p, const SweepOptions& opt) {
  if (opt.cells_per_short_side < 1) throw DomainError("cells_per_short_side must be >= 1");
  std::vector<SweepRow> rows;
  for (double ar : aspect_ratios) {
    if (!(ar >= 1.0)) throw DomainError("aspect ratio must be >= 1");
    for (double area : areas) {
      if (!(area > 0.0)) throw DomainError("area must be positive");
      SweepRow row;
      row.area = area;
      row.aspect_ratio = ar;
      row.width = std::sqrt(area * ar);
      row.height = std::sqrt(area / ar);
      GridOptions g;
      g.resolution = row.height / opt.cells_per_short_side;
      g.margin = opt.margin;
      g.workers = opt.workers;
      g.averaging = opt.averaging;
      const auto grid = evaluate_grid(rectangle_layout(row.width, row.height), p, g);
      row.avg_g_i = grid.overall.g_i;
      row.avg_g_p = grid.overall.g_p;
      row.cells = grid.overall.cells;
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace lfom
