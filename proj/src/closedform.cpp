#include "lfom/closedform.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lfom/errors.hpp"
#include "lfom/specfun.hpp"

namespace lfom {
namespace {

void check_tm(const ToyModel& tm, const ScenarioParams& p) {
  if (!(tm.d0 > p.near_field_radius()) || !std::isfinite(tm.d0)) {
    std::ostringstream os;
    os << "D0 = " << tm.d0 << " m must exceed lambda/4pi = "
       << p.near_field_radius() << " m";
    throw DomainError(os.str());
  }
  if (!(tm.theta_l > -kPi / 2.0) || !(tm.theta_r < kPi / 2.0) ||
      !(tm.theta_l <= tm.theta_r)) {
    throw DomainError("toy model needs -pi/2 < theta_l <= theta_r < pi/2");
  }
}

std::optional<double> arccos_if(double x) {
  if (x > 1.0) return std::nullopt;
  return std::acos(x);
}

bool overlaps(const ToyModel& tm, double t) {
  return tm.theta_l < t && tm.theta_r > -t;
}

// Z1 over [θl, θr] ∩ [-t, t]
double z1_clipped(const ToyModel& tm, double t, double z3, double z5) {
  const double lo = std::max(tm.theta_l, -t);
  const double hi = std::min(tm.theta_r, t);
  if (!(lo < hi)) return 0.0;
  return z1_fn({lo, hi, z3, tm.d0, z5});
}

}  // namespace

OpenSpacePowers open_space_powers(const ScenarioParams& p) {
  return open_space_powers(
      p, p.open_space_far_regime() ? OpenSpaceBranch::Far : OpenSpaceBranch::Near);
}

OpenSpacePowers open_space_powers(const ScenarioParams& p, OpenSpaceBranch branch) {
  const double pt = p.p_t();
  const double pth = p.p_th();
  const double lam2 = p.lambda() * p.lambda();
  const double hh = p.h_t() * p.h_r();
  OpenSpacePowers out;
  if (branch == OpenSpaceBranch::Near) {
    out.i_o = pt * lam2 / (8.0 * kPi) *
              (0.5 + std::log(16.0 * std::sqrt(pth) * kPi * kPi * hh /
                              (std::sqrt(pt) * lam2)));
    out.p_o = pt * lam2 / (16.0 * kPi) * (1.0 + std::log(pt / pth));
  } else {
    out.i_o = kPi * std::sqrt(pth * pt) * hh;
    out.p_o = pt * lam2 / (16.0 * kPi) +
              pt * lam2 / (8.0 * kPi) * std::log(16.0 * kPi * kPi * hh / lam2) +
              pt * lam2 / (16.0 * kPi) - kPi * hh * std::sqrt(pt * pth);
  }
  return out;
}

ThetaThresholds theta_thresholds(const ToyModel& tm, const CoverageRadii& radii) {
  ThetaThresholds t;
  t.l1 = arccos_if(tm.d0 / radii.r_l);
  t.l2 = arccos_if(tm.d0);
  t.n1 = arccos_if(tm.d0 / radii.r_n);
  t.n2 = t.l2;
  return t;
}

double tm_p_l(const ToyModel& tm, const ScenarioParams& p, const CoverageRadii& radii) {
  check_tm(tm, p);
  if (tm.theta_l == tm.theta_r) return 0.0;
  const double c = p.p_t() * p.free_space_constant();
  const double nl1 = p.n_l() - 1.0;
  const double span = tm.theta_r - tm.theta_l;

  const double p1 = c * span * (0.5 - std::log(p.near_field_radius())) +
                    c * z0(tm.theta_l, tm.theta_r, 1.0, radii.r_l, nl1);
  if (tm.d0 >= radii.r_l) return p1;

  const auto th = theta_thresholds(tm, radii);
  const double l1 = *th.l1;
  auto p2 = [&] { return c * z1_clipped(tm, l1, radii.r_l, nl1); };

  if (tm.d0 >= 1.0) {
    return overlaps(tm, l1) ? p1 + p2() : p1;
  }
  const double l2 = *th.l2;
  if (overlaps(tm, l2)) {
    const double p3 = c * (z1_clipped(tm, l2, 1.0, 1.0) - z1_clipped(tm, l2, 1.0, nl1));
    return p1 + p2() + p3;
  }
  if (overlaps(tm, l1)) return p1 + p2();
  return p1;
}

double tm_i_l(const ToyModel& tm, const ScenarioParams& p, const CoverageRadii& radii) {
  check_tm(tm, p);
  if (tm.theta_l == tm.theta_r) return 0.0;
  const double c = p.p_t() * p.free_space_constant();
  const double nl1 = p.n_l() - 1.0;
  auto whole = [&] {
    return c * z1_fn({tm.theta_l, tm.theta_r, radii.r_l, tm.d0, nl1});
  };
  if (tm.d0 >= radii.r_l) return whole();

  const double l1 = *theta_thresholds(tm, radii).l1;
  if (tm.theta_r <= -l1 || tm.theta_l >= l1) return whole();

  double out = 0.0;
  if (tm.theta_l < -l1) out += c * z1_fn({tm.theta_l, -l1, radii.r_l, tm.d0, nl1});
  if (tm.theta_r > l1) out += c * z1_fn({l1, tm.theta_r, radii.r_l, tm.d0, nl1});
  return out;
}

double tm_p_n(const ToyModel& tm, const ScenarioParams& p, const CoverageRadii& radii) {
  check_tm(tm, p);
  if (tm.theta_l == tm.theta_r) return 0.0;
  if (tm.d0 >= radii.r_n) return 0.0;
  const double c = p.p_t() * p.free_space_constant();
  const double nn1 = p.n_n() - 1.0;
  const auto th = theta_thresholds(tm, radii);
  const double n1 = *th.n1;
  auto p1 = [&] { return -c * z1_clipped(tm, n1, radii.r_n, nn1); };

  if (tm.d0 >= 1.0) return overlaps(tm, n1) ? p1() : 0.0;

  const double n2 = *th.n2;
  if (overlaps(tm, n2)) {
    const double p2 = -c * z1_clipped(tm, n2, 1.0, 1.0) + c * z1_clipped(tm, n2, 1.0, nn1);
    return p1() + p2;
  }
  if (overlaps(tm, n1)) return p1();
  return 0.0;
}

double tm_i_n(const ToyModel& tm, const ScenarioParams& p, const CoverageRadii& radii) {
  check_tm(tm, p);
  if (tm.theta_l == tm.theta_r) return 0.0;
  const double c = p.p_t() * p.free_space_constant();
  const double nn1 = p.n_n() - 1.0;
  const double i1 = -c * z1_fn_far(tm.theta_l, tm.theta_r, tm.d0, nn1);
  if (tm.d0 >= radii.r_n) return i1;
  const double n1 = *theta_thresholds(tm, radii).n1;
  if (!overlaps(tm, n1)) return i1;
  return i1 + c * z1_clipped(tm, n1, radii.r_n, nn1);
}

TmPowers tm_powers(const ToyModel& tm, const ScenarioParams& p,
                   const CoverageRadii& radii) {
  return {tm_p_l(tm, p, radii), tm_i_l(tm, p, radii), tm_p_n(tm, p, radii),
          tm_i_n(tm, p, radii)};
}

}  // namespace lfom
