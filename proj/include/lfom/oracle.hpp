#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "lfom/closedform.hpp"
#include "lfom/fom.hpp"
#include "lfom/geometry.hpp"
#include "lfom/quadrature.hpp"
#include "lfom/scenario.hpp"

namespace lfom {

enum class Region { PL, IL, PN, IN };

std::string_view to_string(Region r);

struct QuadratureSpec {
  double rel_tol = 1e-9;
  double abs_floor = 0.0;
  std::size_t max_subdivisions = 4000;
  double r_max = 0.0;  // 0: 10 * max(R_L, R_N, D0)
};

enum class PathModel { Open, Los, Nlos };

/// ∫_{r0}^{r1} P_T G(R) R dR in closed form; r1 may be +inf.
double radial_power(PathModel m, double r0, double r1, const ScenarioParams& p);

QuadResult quad_region(Region region, const ToyModel& tm, const ScenarioParams& p,
                       const QuadratureSpec& spec = {});

/// P_T G(R) R over the whole sector, LOS up to the wall and NLOS behind it.
QuadResult quad_sector_total(const ToyModel& tm, const ScenarioParams& p,
                             const QuadratureSpec& spec = {});

struct OpenSpaceQuad {
  QuadResult p_o;
  QuadResult i_o;
};

/// Numerical 2π ∫ P_T G_O(R) R dR split at R_O; the infinite part is mapped
/// with R = R_O / t.
OpenSpaceQuad quad_open_space(const ScenarioParams& p, double rel_tol = 1e-12);

struct McSpec {
  std::uint64_t samples = 10'000'000;
  double r_disc = 0.0;  // 0: max(3 R_N, 1.5 diameter)
  double r_core = -1.0;  // <0: nearest wall distance, 0: sample the whole disc
  std::uint64_t seed = 20240101;
  int workers = 0;
  std::uint64_t block = 1 << 16;
};

struct McEstimate {
  SignalBreakdown mean;
  SignalBreakdown stderr_;
  FomResult fom;
  double g_i_stderr = 0.0;
  double g_p_stderr = 0.0;
  std::uint64_t samples = 0;
  double r_disc = 0.0;
  std::uint64_t seed = 0;
};

std::uint64_t splitmix64(std::uint64_t x);

/// Disc sampling around the probe, LOS by segment intersection against the
/// walls, deterministic wall-free core and tails beyond R_disc. Identical results for any
/// worker count.
McEstimate mc_point(const Layout& layout, Vec2 probe, const ScenarioParams& p,
                    const McSpec& spec = {});
McEstimate mc_point_serial(const Layout& layout, Vec2 probe, const ScenarioParams& p,
                           const McSpec& spec = {});

using TmEvaluator =
    std::function<TmPowers(const ToyModel&, const ScenarioParams&, const CoverageRadii&)>;

struct ValidationOptions {
  QuadratureSpec quad;
  McSpec mc;
  bool run_mc = true;
  double quad_rel_tol = 1e-7;
  double quad_rel_tol_in = 1e-6;
  double z_max = 3.0;
  double margin = kDefaultMargin;
  TmEvaluator evaluator;  // empty: tm_powers
};

struct TmCheck {
  ToyModel tm;
  TmPowers closed;
  TmPowers oracle;
  TmPowers rel_dev;
};

struct McCheck {
  Vec2 probe;
  FomResult closed;
  McEstimate mc;
  double z_g_i = 0.0;
  double z_g_p = 0.0;
};

struct ValidationReport {
  std::vector<TmCheck> tms;
  std::vector<McCheck> probes;
  TmPowers max_rel_dev;
  double max_z = 0.0;
  bool quad_pass = true;
  bool mc_pass = true;
  double closed_seconds = 0.0;  // per probe
  double mc_seconds = 0.0;      // per probe
  double speedup = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t samples = 0;

  bool pass() const { return quad_pass && mc_pass; }
};

/// |a - b| / max(|b|, floor), the floor scaling with P_T (λ/4π)².
double relative_deviation(double closed, double oracle, const ScenarioParams& p);

ValidationReport validate_tms(const std::vector<ToyModel>& tms, const ScenarioParams& p,
                              const ValidationOptions& opt = {});

ValidationReport validate(const Layout& layout, const std::vector<Vec2>& probes,
                          const ScenarioParams& p, const ValidationOptions& opt = {});

}  // namespace lfom
