#pragma once

#include <optional>

#include "lfom/scenario.hpp"

namespace lfom {

/// One wall chord seen from the probe. Angles are measured from the
/// perpendicular foot; phi_perp is the global azimuth of that foot.
struct ToyModel {
  double d0 = 1.0;
  double theta_l = 0.0;
  double theta_r = 0.0;
  double phi_perp = 0.0;
};

struct TmPowers {
  double p_l = 0.0;
  double i_l = 0.0;
  double p_n = 0.0;
  double i_n = 0.0;

  TmPowers& operator+=(const TmPowers& o) {
    p_l += o.p_l;
    i_l += o.i_l;
    p_n += o.p_n;
    i_n += o.i_n;
    return *this;
  }
};

struct OpenSpacePowers {
  double p_o = 0.0;
  double i_o = 0.0;
};

enum class OpenSpaceBranch { Near, Far };

OpenSpacePowers open_space_powers(const ScenarioParams& p);
/// Evaluates one branch regardless of which one P_T/P_th selects.
OpenSpacePowers open_space_powers(const ScenarioParams& p,
                                  OpenSpaceBranch branch);

struct ThetaThresholds {
  std::optional<double> l1;  // arccos(D0 / R_L)
  std::optional<double> l2;  // arccos(D0)
  std::optional<double> n1;  // arccos(D0 / R_N)
  std::optional<double> n2;  // arccos(D0)
};

ThetaThresholds theta_thresholds(const ToyModel& tm, const CoverageRadii& radii);

double tm_p_l(const ToyModel& tm, const ScenarioParams& p, const CoverageRadii& radii);
double tm_i_l(const ToyModel& tm, const ScenarioParams& p, const CoverageRadii& radii);
double tm_p_n(const ToyModel& tm, const ScenarioParams& p, const CoverageRadii& radii);
double tm_i_n(const ToyModel& tm, const ScenarioParams& p, const CoverageRadii& radii);

TmPowers tm_powers(const ToyModel& tm, const ScenarioParams& p,
                   const CoverageRadii& radii);

}  // namespace lfom
