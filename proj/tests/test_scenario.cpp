#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "lfom/errors.hpp"
#include "lfom/scenario.hpp"

using namespace lfom;

namespace {

ScenarioParams preset(double f, double pth) {
  ScenarioConfig c;
  c.f_c_hz = f;
  c.p_th_dbw_m2 = pth;
  return ScenarioParams(c);
}

}  // namespace

TEST_CASE("db conversions round trip") {
  for (double db : {-120.0, -93.0, -30.0, 0.0, 17.5}) CHECK(linear_to_db(db_to_linear(db)) == doctest::Approx(db).epsilon(1e-14));
  CHECK(db_to_linear(-std::numeric_limits<double>::infinity()) == 0.0);
  CHECK(db_to_linear(-30.0) == doctest::Approx(1e-3).epsilon(1e-15));
}

TEST_CASE("open space path gain branches") {
  auto p = preset(1e9, -75);
  CHECK(path_gain_open(0.0, p) == 1.0);
  CHECK(path_gain_open(0.5 * p.near_field_radius(), p) == 1.0);
  CHECK(path_gain_open(10.0, p) == doctest::Approx(5.6993165798814996437e-6).epsilon(1e-14));
  // fourth-power decay well beyond the breakpoint
  double r = 1e4;
  double slope = std::log(path_gain_open(2 * r, p) / path_gain_open(r, p)) / std::log(2.0);
  CHECK(slope == doctest::Approx(-4.0).epsilon(1e-12));
  double b = p.two_ray_breakpoint();
  CHECK(path_gain_open(b * (1 - 1e-12), p) == doctest::Approx(path_gain_open(b * (1 + 1e-12), p)).epsilon(1e-9));
}

TEST_CASE("LOS and NLOS gains follow open space inside one metre") {
  auto p = preset(28e9, -100);
  for (double r : {0.001, 0.01, 0.3, 0.999, 1.0}) {
    CHECK(path_gain_los(r, p) == path_gain_open(r, p));
    CHECK(path_gain_nlos(r, p) == path_gain_open(r, p));
  }
  double c = p.free_space_constant();
  CHECK(path_gain_los(2.0, p) == doctest::Approx(c * std::pow(2.0, -1.73)).epsilon(1e-14));
  CHECK(path_gain_nlos(2.0, p) == doctest::Approx(c * std::pow(2.0, -3.19)).epsilon(1e-14));
  CHECK(path_gain_los(1.0 + 1e-12, p) == doctest::Approx(path_gain_los(1.0, p)).epsilon(1e-9));
}

TEST_CASE("gain ordering for n_N >= n_L >= 2 inside the free-space segment") {
  ScenarioConfig cfg;
  cfg.n_l = 2.4;
  cfg.n_n = 3.19;
  ScenarioParams p(cfg);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 300; ++k) {
    double r = 1.0 + (p.two_ray_breakpoint() - 1.0) * u(rng);
    CHECK(path_gain_nlos(r, p) <= path_gain_los(r, p));
    CHECK(path_gain_los(r, p) <= path_gain_open(r, p));
    CHECK(path_gain_open(r, p) <= 1.0);
  }
}

TEST_CASE("coverage radii match the published values") {
  auto a = coverage_radii(preset(1e9, -75));
  CHECK(a.r_o == doctest::Approx(4.2).epsilon(0.02));
  CHECK(a.r_l == doctest::Approx(5.3).epsilon(0.02));
  CHECK(a.r_n == doctest::Approx(2.5).epsilon(0.02));
  auto b = coverage_radii(preset(28e9, -100));
  CHECK(b.r_o == doctest::Approx(2.7).epsilon(0.03));
  CHECK(b.r_l == doctest::Approx(3.2).epsilon(0.03));
  CHECK(b.r_n == doctest::Approx(1.9).epsilon(0.03));
  auto c = coverage_radii(preset(1e9, -100));
  CHECK(c.r_l == doctest::Approx(148).epsilon(0.01));
  CHECK(c.r_n == doctest::Approx(15).epsilon(0.01));
}

TEST_CASE("coverage radii against frozen high precision values") {
  struct Row {
    double f, pth, ro, rl, rn;
  };
  for (auto r : {Row{1e9, -75, 4.2453293745935095, 5.3199692519683259, 2.4755679593979527},
                 Row{28e9, -100, 2.6962077913118054, 3.1476088828550809, 1.8623650038052261},
                 Row{1e9, -100, 67.48095902284189, 148.25038415131458, 15.044366770720783},
                 Row{1e9, -90, 23.8732414637843, 39.170683101125969, 7.3096113934836992}}) {
    auto p = preset(r.f, r.pth);
    auto c = coverage_radii(p);
    CHECK(c.r_o == doctest::Approx(r.ro).epsilon(1e-13));
    CHECK(c.r_l == doctest::Approx(r.rl).epsilon(1e-13));
    CHECK(c.r_n == doctest::Approx(r.rn).epsilon(1e-13));
    CHECK(p.p_t() * path_gain_open(c.r_o, p) == doctest::Approx(p.p_th()).epsilon(1e-12));
    CHECK(p.p_t() * path_gain_los(c.r_l, p) == doctest::Approx(p.p_th()).epsilon(1e-12));
    CHECK(p.p_t() * path_gain_nlos(c.r_n, p) == doctest::Approx(p.p_th()).epsilon(1e-12));
  }
  CHECK(preset(1e9, -100).open_space_far_regime());
  CHECK_FALSE(preset(1e9, -75).open_space_far_regime());
}

TEST_CASE("parameter validation") {
  ScenarioConfig c;
  c.p_th_dbw_m2 = -30;
  CHECK_THROWS_AS(ScenarioParams{c}, DomainError);
  c = {};
  c.n_n = 2.0;
  CHECK_THROWS_AS(ScenarioParams{c}, DomainError);
  c = {};
  c.h_t_m = 0;
  CHECK_THROWS_AS(ScenarioParams{c}, DomainError);
  c = {};
  c.f_c_hz = -1;
  CHECK_THROWS_AS(ScenarioParams{c}, DomainError);
  c = {};
  c.sigma2_dbw = -std::numeric_limits<double>::infinity();
  CHECK(ScenarioParams(c).sigma2() == 0.0);
}

TEST_CASE("power scaling keeps radii") {
  auto p = preset(1e9, -90);
  auto q = p.with_power_scale(37.0);
  auto a = coverage_radii(p), b = coverage_radii(q);
  CHECK(b.r_o == doctest::Approx(a.r_o).epsilon(1e-14));
  CHECK(b.r_l == doctest::Approx(a.r_l).epsilon(1e-14));
  CHECK(q.sigma2() == doctest::Approx(37.0 * p.sigma2()).epsilon(1e-15));
}
