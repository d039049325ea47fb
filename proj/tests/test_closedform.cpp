#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <algorithm>
#include <cmath>
#include <vector>
#include <random>

#include "lfom/closedform.hpp"
#include "lfom/errors.hpp"
#include "lfom/oracle.hpp"

using namespace lfom;
using boost::math::quadrature::gauss_kronrod;

namespace {

ScenarioParams preset(double f, double pth) {
  ScenarioConfig c;
  c.f_c_hz = f;
  c.p_th_dbw_m2 = pth;
  return ScenarioParams(c);
}

double gk(const std::function<double(double)>& f, double a, double b) {
  return gauss_kronrod<double, 61>::integrate(f, a, b, 15, 1e-11);
}

// P_T G(R) R integrated numerically over [r0, r1], r1 possibly infinite
double radial_numeric(double n, double r0, double r1, const ScenarioParams& p) {
  if (!(r1 > r0)) return 0.0;
  auto g = [&](double r) {
    double v = r <= 1.0 ? path_gain_open(r, p) : p.free_space_constant() * std::pow(r, -n);
    return p.p_t() * v * r;
  };
  double sum = 0.0;
  double a = r0;
  for (double knot : {p.near_field_radius(), 1.0}) {
    if (knot > a && knot < r1) {
      sum += gk(g, a, knot);
      a = knot;
    }
  }
  if (std::isinf(r1)) return sum + gk([&](double t) { return t == 0 ? 0.0 : g(a / t) * a / (t * t); }, 0.0, 1.0);
  return sum + gk(g, a, r1);
}

TmPowers independent(const ToyModel& tm, const ScenarioParams& p) {
  auto radii = coverage_radii(p);
  std::vector<double> cuts{tm.theta_l};
  for (double r : {p.near_field_radius(), 1.0, radii.r_l, radii.r_n}) {
    if (tm.d0 >= r) continue;
    for (double t : {-std::acos(tm.d0 / r), std::acos(tm.d0 / r)})
      if (t > tm.theta_l && t < tm.theta_r) cuts.push_back(t);
  }
  cuts.push_back(tm.theta_r);
  std::sort(cuts.begin(), cuts.end());
  auto sector = [&](auto f) {
    double s = 0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) s += gk(f, cuts[i], cuts[i + 1]);
    return s;
  };
  TmPowers out;
  out.p_l = sector([&](double t) { return radial_numeric(p.n_l(), 0.0, std::min(radii.r_l, tm.d0 / std::cos(t)), p); });
  out.i_l = sector([&](double t) { return radial_numeric(p.n_l(), radii.r_l, tm.d0 / std::cos(t), p); });
  out.p_n = sector([&](double t) { return radial_numeric(p.n_n(), tm.d0 / std::cos(t), radii.r_n, p); });
  out.i_n = sector([&](double t) {
    return radial_numeric(p.n_n(), std::max(radii.r_n, tm.d0 / std::cos(t)), INFINITY, p);
  });
  return out;
}

double rel(double a, double b, const ScenarioParams& p) { return relative_deviation(a, b, p); }

struct Rng {
  std::mt19937_64 g{42};
  double uni(double a, double b) { return std::uniform_real_distribution<double>(a, b)(g); }
};

ToyModel random_tm(Rng& rng, const ScenarioParams& p) {
  auto radii = coverage_radii(p);
  ToyModel tm;
  double dmax = 2.5 * std::max(radii.r_l, radii.r_n);
  tm.d0 = rng.uni(1.05 * p.near_field_radius(), dmax);
  double a = rng.uni(-1.5, 1.5), b = rng.uni(-1.5, 1.5);
  tm.theta_l = std::min(a, b);
  tm.theta_r = std::max(a, b);
  return tm;
}

}  // namespace

TEST_CASE("closed form matches an independent 2D quadrature") {
  Rng rng;
  for (auto p : {preset(1e9, -75), preset(28e9, -100), preset(1e9, -90)}) {
    auto radii = coverage_radii(p);
    for (int k = 0; k < 20; ++k) {
      auto tm = random_tm(rng, p);
      tm.theta_l = std::max(tm.theta_l, -1.3);
      tm.theta_r = std::min(tm.theta_r, 1.3);
      auto c = tm_powers(tm, p, radii);
      auto o = independent(tm, p);
      INFO("d0=" << tm.d0 << " tl=" << tm.theta_l << " tr=" << tm.theta_r);
      CHECK(rel(c.p_l, o.p_l, p) < 1e-7);
      CHECK(rel(c.i_l, o.i_l, p) < 1e-7);
      CHECK(rel(c.p_n, o.p_n, p) < 1e-7);
      CHECK(rel(c.i_n, o.i_n, p) < 1e-6);
    }
  }
}

TEST_CASE("closed form matches region quadrature on 500 random toy models") {
  Rng rng;
  const ScenarioParams presets[] = {preset(1e9, -75), preset(28e9, -100), preset(1e9, -90), preset(1e9, -100)};
  int n = 0;
  for (int k = 0; k < 500; ++k) {
    const auto& p = presets[k % 4];
    auto radii = coverage_radii(p);
    auto tm = random_tm(rng, p);
    auto c = tm_powers(tm, p, radii);
    INFO("k=" << k << " d0=" << tm.d0 << " tl=" << tm.theta_l << " tr=" << tm.theta_r);
    CHECK(rel(c.p_l, quad_region(Region::PL, tm, p).value, p) < 1e-7);
    CHECK(rel(c.i_l, quad_region(Region::IL, tm, p).value, p) < 1e-7);
    CHECK(rel(c.p_n, quad_region(Region::PN, tm, p).value, p) < 1e-7);
    CHECK(rel(c.i_n, quad_region(Region::IN, tm, p).value, p) < 1e-6);
    ++n;
  }
  CHECK(n == 500);
}

TEST_CASE("regions partition the sector") {
  Rng rng;
  auto p = preset(1e9, -75);
  for (int k = 0; k < 50; ++k) {
    auto tm = random_tm(rng, p);
    double parts = 0;
    for (auto r : {Region::PL, Region::IL, Region::PN, Region::IN}) parts += quad_region(r, tm, p).value;
    // PN and IL overlap nothing; the LOS/NLOS split is at the wall
    double total = quad_sector_total(tm, p).value;
    auto radii = coverage_radii(p);
    (void)radii;
    CHECK(parts == doctest::Approx(total).epsilon(1e-8));
  }
}

TEST_CASE("continuity across case boundaries") {
  Rng rng;
  for (auto p : {preset(1e9, -75), preset(28e9, -100)}) {
    auto radii = coverage_radii(p);
    auto jump = [&](ToyModel lo, ToyModel hi) {
      auto a = tm_powers(lo, p, radii), b = tm_powers(hi, p, radii);
      // components vanish at their own boundaries, so measure against the toy model total
      double total = a.p_l + a.i_l + a.p_n + a.i_n;
      double m = 0;
      for (auto [x, y] : {std::pair{a.p_l, b.p_l}, {a.i_l, b.i_l}, {a.p_n, b.p_n}, {a.i_n, b.i_n}})
        m = std::max(m, std::abs(x - y) / total);
      return m;
    };
    for (int k = 0; k < 200; ++k) {
      double tl = rng.uni(-1.5, 0.0), tr = rng.uni(0.0, 1.5);
      double d = std::vector<double>{1.0, radii.r_l, radii.r_n}[k % 3];
      ToyModel lo{d * (1 - 1e-10), tl, tr, 0}, hi{d * (1 + 1e-10), tl, tr, 0};
      CHECK(jump(lo, hi) < 1e-6);
    }
    for (int k = 0; k < 200; ++k) {
      ToyModel tm{rng.uni(0.3, std::max(radii.r_l, radii.r_n)), -1.2, 0.0, 0};
      auto th = theta_thresholds(tm, radii);
      for (auto t : {th.l1, th.l2, th.n1, th.n2}) {
        if (!t || *t >= 1.5) continue;
        ToyModel a = tm, b = tm;
        a.theta_r = *t - 1e-10;
        b.theta_r = *t + 1e-10;
        CHECK(jump(a, b) < 1e-6);
        a = tm;
        b = tm;
        a.theta_l = -*t - 1e-10;
        b.theta_l = -*t + 1e-10;
        a.theta_r = b.theta_r = 1.2;
        CHECK(jump(a, b) < 1e-6);
      }
    }
  }
}

TEST_CASE("angular additivity and mirror symmetry of toy models") {
  Rng rng;
  auto p = preset(1e9, -75);
  auto radii = coverage_radii(p);
  for (int k = 0; k < 200; ++k) {
    auto tm = random_tm(rng, p);
    double mid = rng.uni(tm.theta_l, tm.theta_r);
    ToyModel a = tm, b = tm, m{tm.d0, -tm.theta_r, -tm.theta_l, 0};
    a.theta_r = mid;
    b.theta_l = mid;
    auto w = tm_powers(tm, p, radii), sa = tm_powers(a, p, radii), sb = tm_powers(b, p, radii), sm = tm_powers(m, p, radii);
    CHECK(rel(sa.p_l + sb.p_l, w.p_l, p) < 1e-10);
    CHECK(rel(sa.i_l + sb.i_l, w.i_l, p) < 1e-10);
    CHECK(rel(sa.p_n + sb.p_n, w.p_n, p) < 1e-10);
    CHECK(rel(sa.i_n + sb.i_n, w.i_n, p) < 1e-10);
    CHECK(rel(sm.p_l, w.p_l, p) < 1e-10);
    CHECK(rel(sm.i_l, w.i_l, p) < 1e-10);
    CHECK(rel(sm.p_n, w.p_n, p) < 1e-10);
    CHECK(rel(sm.i_n, w.i_n, p) < 1e-10);
  }
}

TEST_CASE("toy model special cases") {
  auto p = preset(1e9, -75);
  auto radii = coverage_radii(p);
  ToyModel empty{2.0, 0.3, 0.3, 0};
  auto e = tm_powers(empty, p, radii);
  CHECK(e.p_l == 0.0);
  CHECK(e.i_n == 0.0);
  // wall beyond every radius: a plain LOS disc sector
  ToyModel far{10.0, -0.7, 0.9, 0};
  auto f = tm_powers(far, p, radii);
  CHECK(f.p_n == 0.0);
  CHECK(f.p_l == doctest::Approx(1.6 * radial_power(PathModel::Los, 0.0, radii.r_l, p)).epsilon(1e-12));
  CHECK_THROWS_AS(tm_powers(ToyModel{0.5 * p.near_field_radius(), -0.1, 0.1, 0}, p, radii), DomainError);
  CHECK_THROWS_AS(tm_powers(ToyModel{1.0, 0.2, -0.1, 0}, p, radii), DomainError);
}

TEST_CASE("LOS powers grow and NLOS powers shrink with D0") {
  for (auto p : {preset(1e9, -75), preset(28e9, -100)}) {
    auto radii = coverage_radii(p);
    for (double tr : {-0.4, 0.0, 0.4, 1.0}) {
      TmPowers prev{};
      bool first = true;
      for (int k = 0; k < 40; ++k) {
        double d0 = 0.2 + k * (2 * radii.r_l - 0.2) / 39;
        auto c = tm_powers(ToyModel{d0, -1.0, tr, 0}, p, radii);
        if (!first) {
          CHECK(c.p_l >= prev.p_l * (1 - 1e-12));
          CHECK(c.i_l >= prev.i_l * (1 - 1e-12));
          CHECK(c.p_n <= prev.p_n * (1 + 1e-12));
          CHECK(c.i_n <= prev.i_n * (1 + 1e-12));
        }
        prev = c;
        first = false;
      }
    }
  }
}

TEST_CASE("open space powers") {
  auto a = open_space_powers(preset(1e9, -75));
  CHECK(a.p_o == doctest::Approx(2.0342925456419337e-5).epsilon(1e-12));
  CHECK(a.i_o == doctest::Approx(1.1293788669594842e-5).epsilon(1e-12));
  auto b = open_space_powers(preset(1e9, -100));
  CHECK(b.p_o == doctest::Approx(3.0206133415739541e-5).epsilon(1e-12));
  CHECK(b.i_o == doctest::Approx(1.4305807102746386e-6).epsilon(1e-12));

  for (double pth : {-65.0, -75.0, -80.0, -90.0, -100.0, -110.0}) {
    for (double f : {1e9, 28e9}) {
      if (f > 1e9 && pth > -95) continue;
      auto p = preset(f, pth);
      auto c = open_space_powers(p);
      auto q = quad_open_space(p);
      INFO("f=" << f << " pth=" << pth);
      CHECK(std::abs(c.p_o - q.p_o.value) <= 1e-9 * q.p_o.value);
      CHECK(std::abs(c.i_o - q.i_o.value) <= 1e-9 * q.i_o.value);
    }
  }
}

TEST_CASE("open space branches agree at the regime boundary") {
  for (double f : {1e9, 5e9, 28e9}) {
    ScenarioConfig cfg;
    cfg.f_c_hz = f;
    cfg.p_th_dbw_m2 = -120;
    ScenarioParams probe(cfg);
    cfg.p_th_dbw_m2 = cfg.p_t_dbw_m2 - linear_to_db(probe.open_space_regime_ratio());
    ScenarioParams p(cfg);
    auto n = open_space_powers(p, OpenSpaceBranch::Near);
    auto fa = open_space_powers(p, OpenSpaceBranch::Far);
    CHECK(std::abs(n.p_o - fa.p_o) <= 1e-9 * n.p_o);
    CHECK(std::abs(n.i_o - fa.i_o) <= 1e-9 * n.i_o);
  }
}
