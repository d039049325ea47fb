#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <algorithm>
#include <cmath>
#include <iomanip>
#include <random>
#include <vector>

#include "lfom/errors.hpp"
#include "lfom/scenario.hpp"
#include "lfom/specfun.hpp"

using namespace lfom;
using boost::math::quadrature::gauss_kronrod;

namespace {

double gk(const std::function<double(double)>& f, double a, double b) {
  return gauss_kronrod<double, 61>::integrate(f, a, b, 15, 1e-11);
}

// ∫ over θ of ∫_{z3}^{z4/cos θ} R^{-z5} dR, both levels numeric
double z1_nested(const Z1Args& a) {
  auto inner = [&](double t) {
    double w = a.z4 / std::cos(t);
    return gk([&](double r) { return std::pow(r, -a.z5); }, a.z3, w);
  };
  if (a.z1 < 0.0 && a.z2 > 0.0) return gk(inner, a.z1, 0.0) + gk(inner, 0.0, a.z2);
  return gk(inner, a.z1, a.z2);
}

double z0_nested(double z1, double z2, double z3, double z4, double z5) {
  return gk([&](double) { return gk([&](double r) { return std::pow(r, -z5); }, z3, z4); }, z1, z2);
}

double clausen_integral(double phi) {
  double x = std::remainder(phi, 2 * kPi);
  if (x == 0.0) return 0.0;
  double v = -boost::math::quadrature::tanh_sinh<double>().integrate(
      [](double t) { return t <= 0.0 ? 0.0 : std::log(std::abs(2 * std::sin(t / 2))); }, 0.0, std::abs(x));
  return x < 0 ? -v : v;
}

struct Rng {
  std::mt19937_64 g{20240101};
  double uni(double a, double b) { return std::uniform_real_distribution<double>(a, b)(g); }
};

}  // namespace

TEST_CASE("beta function") {
  CHECK(beta_fn(1, 1) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(beta_fn(0.5, 0.5) == doctest::Approx(kPi).epsilon(1e-14));
  CHECK(beta_fn(0.5, 0.365) == doctest::Approx(3.9329661321150663462).epsilon(1e-13));
  CHECK_THROWS_AS(beta_fn(0.0, 1.0), DomainError);
}

TEST_CASE("hypergeometric 2F1 on the unit interval") {
  CHECK(hyp2f1(1.095, 0.5, 2.095, 0.0) == 1.0);
  CHECK(hyp2f1(1.095, 0.5, 2.095, 0.25) == doctest::Approx(1.0752153132052505085).epsilon(1e-14));
  CHECK(hyp2f1(1.095, 0.5, 2.095, 0.999999) == doctest::Approx(2.0699791279509582671).epsilon(1e-12));
  CHECK(hyp2f1(0.365, 0.5, 1.365, 0.9) == doctest::Approx(1.2465731347855694407).epsilon(1e-13));
  CHECK(hyp2f1(-0.25, 0.5, 0.75, 0.95) == doctest::Approx(0.70419625541469340342).epsilon(1e-13));

  Rng rng;
  for (int k = 0; k < 200; ++k) {
    double z5 = rng.uni(-0.99, 3.0);
    if (std::abs(z5) < 1e-3) continue;
    double a = z5 / 2, b = 0.5, c = (z5 + 2) / 2;
    double z = rng.uni(0.0, 0.995);
    long double term = 1, sum = 1;
    for (int n = 0; n < 200000 && std::abs(term) > 1e-22L * std::abs(sum); ++n) {
      term *= (a + n) * (b + n) / ((c + n) * (n + 1.0L)) * z;
      sum += term;
    }
    double series = static_cast<double>(sum);
    INFO("a=" << std::setprecision(17) << a << " z=" << z);
    CHECK(hyp2f1(a, b, c, z) == doctest::Approx(series).epsilon(1e-11));
  }
}

TEST_CASE("Clausen function") {
  CHECK(im_li2_on_circle(0.0) == 0.0);
  CHECK(std::abs(im_li2_on_circle(kPi)) < 1e-15);
  CHECK(im_li2_on_circle(kPi / 2) == doctest::Approx(0.91596559417721901505).epsilon(1e-14));
  CHECK(im_li2_on_circle(1.0) == doctest::Approx(1.0139591323607685043).epsilon(1e-14));
  CHECK(im_li2_on_circle(2.5) == doctest::Approx(0.43359820323553277936).epsilon(1e-14));
  CHECK(im_li2_on_circle(-4.0) == doctest::Approx(0.5681439444298697808).epsilon(1e-14));
  CHECK(im_li2_on_circle(0.001) == doctest::Approx(0.0079077552928710260104).epsilon(1e-13));
  Rng rng;
  for (int k = 0; k < 200; ++k) {
    double phi = rng.uni(-7.0, 7.0);
    CHECK(im_li2_on_circle(phi) == doctest::Approx(clausen_integral(phi)).epsilon(1e-10).scale(1.0));
    CHECK(im_li2_on_circle(-phi) == -im_li2_on_circle(phi));
    CHECK(im_li2_on_circle(phi + 2 * kPi) == doctest::Approx(im_li2_on_circle(phi)).epsilon(1e-12).scale(1.0));
  }
}

TEST_CASE("Z0 closed form") {
  CHECK(z0(0, 1, 1, std::exp(1.0), 1) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(z0(0.2, 0.9, 2, 2, 1.7) == 0.0);
  Rng rng;
  for (int k = 0; k < 200; ++k) {
    double z1 = rng.uni(-1.5, 1.5), z2 = rng.uni(-1.5, 1.5);
    double z3 = rng.uni(0.05, 5), z4 = rng.uni(0.05, 5), z5 = rng.uni(-1.0, 3.5);
    if (k % 10 == 0) z5 = 1.0;
    CHECK(z0(z1, z2, z3, z4, z5) == doctest::Approx(z0_nested(z1, z2, z3, z4, z5)).epsilon(1e-8).scale(1.0));
  }
}

TEST_CASE("Z1 frozen values") {
  CHECK(z1_fn({0.3, 0.3, 1, 2, 0.73}) == 0.0);
  CHECK(z1_fn({0.0, kPi / 4, 1, 1, -1}) == doctest::Approx(0.5 - kPi / 8).epsilon(1e-14));
  CHECK(z1_fn({-0.3, 0.7, 1.5, 2.0, 0.73}) == doctest::Approx(0.41350162509734250365).epsilon(1e-12));
  CHECK(z1_fn({-1.2, 1.3, 0.5, 3.0, 2.19}) == doctest::Approx(4.3804534117694448777).epsilon(1e-12));
  CHECK(z1_fn({0.1, 0.9, 2, 1, 1}) == doctest::Approx(-0.42145271580428388023).epsilon(1e-12));
  CHECK(z1_fn({-0.5, 0.2, 1, 1, 0}) == doctest::Approx(0.02358492684616783754).epsilon(1e-12));
  CHECK(z1_fn({-1.0, 0.5, 1.0, 2.0, -0.5}) == doctest::Approx(2.6007756078788413778).epsilon(1e-12));
  CHECK(z1_fn({-0.7, 1.1, 0.8, 1.7, -1}) == doctest::Approx(3.4801844144934518716).epsilon(1e-12));
}

TEST_CASE("Z1 matches nested quadrature on random tuples") {
  Rng rng;
  const double special[] = {-1.0, 0.0, 1.0, 0.73, 2.19};
  int checked = 0;
  for (int k = 0; k < 250; ++k) {
    Z1Args a;
    a.z1 = rng.uni(-1.45, 1.45);
    a.z2 = rng.uni(-1.45, 1.45);
    if (a.z1 > a.z2) std::swap(a.z1, a.z2);
    a.z3 = rng.uni(0.05, 4);
    a.z4 = rng.uni(0.05, 4);
    a.z5 = k % 3 == 0 ? special[k / 3 % 5] : rng.uni(-0.99, 3.0);
    double oracle = z1_nested(a);
    double v = z1_fn(a);
    INFO("z1=" << a.z1 << " z2=" << a.z2 << " z3=" << a.z3 << " z4=" << a.z4 << " z5=" << a.z5);
    CHECK(v == doctest::Approx(oracle).epsilon(1e-8).scale(std::max(1.0, std::abs(oracle))));
    ++checked;
  }
  CHECK(checked >= 200);
}

TEST_CASE("Z1 additivity, mirror symmetry and continuity") {
  Rng rng;
  for (int k = 0; k < 250; ++k) {
    double t[3] = {rng.uni(-1.4, 1.4), rng.uni(-1.4, 1.4), rng.uni(-1.4, 1.4)};
    std::sort(t, t + 3);
    double z1 = t[0], zm = t[1], z2 = t[2];
    double z3 = rng.uni(0.1, 3), z4 = rng.uni(0.1, 3), z5 = rng.uni(-0.99, 3.0);
    if (k % 4 == 0) z5 = std::round(z5);
    double whole = z1_fn({z1, z2, z3, z4, z5});
    double split = z1_fn({z1, zm, z3, z4, z5}) + z1_fn({zm, z2, z3, z4, z5});
    double scale = std::max({1.0, std::abs(whole), std::abs(split)});
    CHECK(std::abs(whole - split) <= 1e-10 * scale);
    double mirror = z1_fn({-z2, -z1, z3, z4, z5});
    CHECK(std::abs(whole - mirror) <= 1e-10 * std::max(1.0, std::abs(whole)));
  }
  // crossing θ = 0 through the sign function
  for (double z5 : {-0.5, 0.4, 1.0, 2.19}) {
    double eps = 1e-9;
    double left = z1_fn({-0.6, -eps, 1, 1.3, z5});
    double right = z1_fn({-0.6, eps, 1, 1.3, z5});
    double at = z1_fn({-0.6, 0.0, 1, 1.3, z5});
    CHECK(std::abs(left - at) < 1e-8);
    CHECK(std::abs(right - at) < 1e-8);
  }
  // snapping to the special exponents is continuous
  for (double s : {-1.0, 0.0, 1.0}) {
    double a = z1_fn({-0.8, 1.0, 0.7, 1.5, s});
    double b = z1_fn({-0.8, 1.0, 0.7, 1.5, s + 1e-7});
    CHECK(std::abs(a - b) < 1e-5 * std::max(1.0, std::abs(a)));
  }
}

TEST_CASE("far Z1 is the z3 -> infinity limit") {
  Rng rng;
  for (int k = 0; k < 200; ++k) {
    double z1 = rng.uni(-1.4, 1.4), z2 = rng.uni(-1.4, 1.4), z4 = rng.uni(0.1, 3), z5 = rng.uni(1.2, 3.5);
    if (z1 > z2) std::swap(z1, z2);
    auto inner = [&](double t) {
      double w = z4 / std::cos(t);
      return -std::pow(w, 1 - z5) / (z5 - 1);
    };
    double oracle = gk(inner, z1, z2);
    CHECK(z1_fn_far(z1, z2, z4, z5) == doctest::Approx(oracle).epsilon(1e-9).scale(1.0));
  }
  CHECK_THROWS_AS(z1_fn_far(0, 1, 1, 0.9), DomainError);
}

TEST_CASE("Z1 domain guards") {
  CHECK_THROWS_AS(z1_fn({0.0, kPi / 2, 1, 1, 2}), NumericalGuardError);
  CHECK_THROWS_AS(z1_fn({0.0, 1.0, -1, 1, 2}), DomainError);
  CHECK_THROWS_AS(z1_fn({0.0, 1.0, 1, 1, -1.5}), DomainError);
}
