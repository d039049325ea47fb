#pragma once

#include <string>

namespace lfom {

inline constexpr double kSpeedOfLight = 3.0e8;  // m/s
inline constexpr double kPi = 3.141592653589793238462643383279502884;

double db_to_linear(double db);
double linear_to_db(double linear);

/// Radio configuration as it appears in preset files: powers in dB.
/// `sigma2_dbw` may be -inf for a noiseless scenario.
struct ScenarioConfig {
  std::string name;
  double f_c_hz = 1.0e9;
  double p_t_dbw_m2 = -30.0;
  double p_th_dbw_m2 = -75.0;
  double sigma2_dbw = -93.0;
  double h_t_m = 1.2;
  double h_r_m = 1.2;
  double n_l = 1.73;
  double n_n = 3.19;
};

/// Validated radio parameters, linear units internally.
///
/// Construction enforces:
///  - f_c, h_T, h_R > 0
///  - P_th < P_T (λ/4π)², so every coverage radius exceeds 1 m
///  - n_N > 2 (the NLOS interference integral runs to infinity)
///  - 0 < n_L and λ/4π < 1 < 4π h_T h_R / λ, i.e. the free-space segment of
///    the open-space gain covers the whole (λ/4π, 1 m] interval
class ScenarioParams {
 public:
  explicit ScenarioParams(const ScenarioConfig& config);

  /// Same geometry and exponents with P_T, P_th and σ² all multiplied by `k`.
  ScenarioParams with_power_scale(double k) const;
  /// Same parameters with σ² replaced (linear watts).
  ScenarioParams with_noise(double sigma2_linear) const;

  const ScenarioConfig& config() const noexcept { return config_; }

  double f_c() const noexcept { return config_.f_c_hz; }
  double p_t() const noexcept { return p_t_; }
  double p_th() const noexcept { return p_th_; }
  double sigma2() const noexcept { return sigma2_; }
  double h_t() const noexcept { return config_.h_t_m; }
  double h_r() const noexcept { return config_.h_r_m; }
  double n_l() const noexcept { return config_.n_l; }
  double n_n() const noexcept { return config_.n_n; }
  double lambda() const noexcept { return lambda_; }

  /// λ/4π [m]: radius below which every path gain saturates at 1.
  double near_field_radius() const noexcept { return lambda_ / (4.0 * kPi); }
  /// (λ/4π)².
  double free_space_constant() const noexcept {
    return near_field_radius() * near_field_radius();
  }
  /// 4π h_T h_R / λ [m]: free-space / two-ray crossover distance.
  double two_ray_breakpoint() const noexcept {
    return 4.0 * kPi * h_t() * h_r() / lambda_;
  }
  /// (4π)⁴ (h_T h_R)² / λ⁴: the P_T/P_th ratio at which R_O reaches the
  /// two-ray breakpoint.
  double open_space_regime_ratio() const noexcept;
  /// True when P_T/P_th is at or beyond `open_space_regime_ratio()`.
  bool open_space_far_regime() const noexcept;

 private:
  ScenarioParams() = default;
  void validate() const;

  ScenarioConfig config_;
  double p_t_ = 0.0;
  double p_th_ = 0.0;
  double sigma2_ = 0.0;
  double lambda_ = 0.0;
};

struct CoverageRadii {
  double r_o = 0.0;
  double r_l = 0.0;
  double r_n = 0.0;
};

/// min{1, (λ/4π)² R⁻², (h_T h_R)² R⁻⁴}
double path_gain_open(double r, const ScenarioParams& p);
/// Open-space gain up to 1 m, (λ/4π)² R^-n_L beyond.
double path_gain_los(double r, const ScenarioParams& p);
/// Open-space gain up to 1 m, (λ/4π)² R^-n_N beyond.
double path_gain_nlos(double r, const ScenarioParams& p);

CoverageRadii coverage_radii(const ScenarioParams& p);

}  // namespace lfom
