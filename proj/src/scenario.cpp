#include "lfom/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "lfom/errors.hpp"

namespace lfom {

double db_to_linear(double db) {
  if (db == -std::numeric_limits<double>::infinity()) return 0.0;
  return std::pow(10.0, db / 10.0);
}

double linear_to_db(double linear) {
  if (linear == 0.0) return -std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(linear);
}

ScenarioParams::ScenarioParams(const ScenarioConfig& config) : config_(config) {
  if (!(config.f_c_hz > 0.0) || !std::isfinite(config.f_c_hz)) {
    throw DomainError("carrier frequency must be positive");
  }
  lambda_ = kSpeedOfLight / config.f_c_hz;
  p_t_ = db_to_linear(config.p_t_dbw_m2);
  p_th_ = db_to_linear(config.p_th_dbw_m2);
  sigma2_ = db_to_linear(config.sigma2_dbw);
  validate();
}

void ScenarioParams::validate() const {
  auto fail = [](const std::string& what) { throw DomainError(what); };
  if (!(h_t() > 0.0) || !(h_r() > 0.0)) fail("antenna heights must be positive");
  if (!std::isfinite(p_t_) || !(p_t_ > 0.0)) fail("P_T must be a finite positive density");
  if (!std::isfinite(p_th_) || !(p_th_ > 0.0)) fail("P_th must be a finite positive density");
  if (!(sigma2_ >= 0.0) || !std::isfinite(sigma2_)) fail("noise power must be finite and non-negative");
  if (!(n_l() > 0.0)) fail("n_L must be positive");
  if (!(n_n() > 2.0)) fail("n_N must exceed 2 for a finite NLOS interference integral");
  if (!(near_field_radius() < 1.0)) {
    fail("carrier frequency too low: lambda/4pi must be below 1 m");
  }
  if (!(two_ray_breakpoint() > 1.0)) {
    fail("4 pi h_T h_R / lambda must exceed 1 m");
  }
  if (!(p_th_ < p_t_ * free_space_constant())) {
    std::ostringstream os;
    os << "P_th must be below P_T (lambda/4pi)^2 = "
       << linear_to_db(p_t_ * free_space_constant())
       << " dBW/m^2 so that all coverage radii exceed 1 m";
    fail(os.str());
  }
}

ScenarioParams ScenarioParams::with_power_scale(double k) const {
  if (!(k > 0.0)) throw DomainError("power scale must be positive");
  ScenarioParams out = *this;
  out.p_t_ *= k;
  out.p_th_ *= k;
  out.sigma2_ *= k;
  out.config_.p_t_dbw_m2 = linear_to_db(out.p_t_);
  out.config_.p_th_dbw_m2 = linear_to_db(out.p_th_);
  out.config_.sigma2_dbw = linear_to_db(out.sigma2_);
  out.validate();
  return out;
}

ScenarioParams ScenarioParams::with_noise(double sigma2_linear) const {
  ScenarioParams out = *this;
  out.sigma2_ = sigma2_linear;
  out.config_.sigma2_dbw = linear_to_db(sigma2_linear);
  out.validate();
  return out;
}

double ScenarioParams::open_space_regime_ratio() const noexcept {
  const double four_pi = 4.0 * kPi;
  const double hh = h_t() * h_r();
  return std::pow(four_pi, 4) * hh * hh / std::pow(lambda_, 4);
}

bool ScenarioParams::open_space_far_regime() const noexcept {
  return p_t_ / p_th_ >= open_space_regime_ratio();
}

double path_gain_open(double r, const ScenarioParams& p) {
  const double hh = p.h_t() * p.h_r();
  const double free_space = p.free_space_constant() / (r * r);
  const double two_ray = hh * hh / (r * r * r * r);
  return std::min({1.0, free_space, two_ray});
}

double path_gain_los(double r, const ScenarioParams& p) {
  if (r <= 1.0) return path_gain_open(r, p);
  return p.free_space_constant() * std::pow(r, -p.n_l());
}

double path_gain_nlos(double r, const ScenarioParams& p) {
  if (r <= 1.0) return path_gain_open(r, p);
  return p.free_space_constant() * std::pow(r, -p.n_n());
}

CoverageRadii coverage_radii(const ScenarioParams& p) {
  const double ratio = p.p_t() / p.p_th();
  CoverageRadii radii;
  if (!p.open_space_far_regime()) {
    radii.r_o = std::sqrt(ratio) * p.near_field_radius();
  } else {
    radii.r_o = std::pow(ratio, 0.25) * std::sqrt(p.h_t() * p.h_r());
  }
  radii.r_l = std::pow(ratio, 1.0 / p.n_l()) *
              std::pow(p.near_field_radius(), 2.0 / p.n_l());
  radii.r_n = std::pow(ratio, 1.0 / p.n_n()) *
              std::pow(p.near_field_radius(), 2.0 / p.n_n());
  return radii;
}

}  // namespace lfom
