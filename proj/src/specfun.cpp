#include "lfom/specfun.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include "lfom/errors.hpp"
#include "lfom/scenario.hpp"

namespace lfom {
namespace {

double sgn(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

// Gamma-ratio beta, continued to negative non-integer arguments.
double beta_continued(double x, double y) {
  return std::tgamma(x) * std::tgamma(y) / std::tgamma(x + y);
}

double gauss_series(double a, double b, double c, double z) {
  double term = 1.0;
  double sum = 1.0;
  for (int k = 0; k < 10000; ++k) {
    term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * z;
    sum += term;
    if (std::abs(term) <= 1e-17 * std::abs(sum) || term == 0.0) return sum;
  }
  throw NonConvergence("hypergeometric series did not converge");
}

bool near_integer(double x) { return std::abs(x - std::round(x)) < 1e-12; }

// |B_2k| / (2k)! = 2 zeta(2k) / (2 pi)^{2k}
constexpr std::array<double, 10> kZetaEven = {
    1.6449340668482264, 1.0823232337111382, 1.0173430619844491,
    1.0040773561979443, 1.0009945751278181, 1.0002460865533080,
    1.0000612481350587, 1.0000152822594086, 1.0000038172932650,
    1.0000009539620339};

double zeta_even(int k) {
  if (k <= static_cast<int>(kZetaEven.size())) return kZetaEven[k - 1];
  const double s = 2.0 * k;
  return 1.0 + std::pow(2.0, -s) + std::pow(3.0, -s) + std::pow(4.0, -s);
}

void check_angles(double z1, double z2, double guard) {
  const double lim = kPi / 2.0 - guard;
  if (!(std::abs(z1) < lim) || !(std::abs(z2) < lim)) {
    std::ostringstream os;
    os << "angle within " << guard << " rad of +-pi/2 (z1=" << z1
       << ", z2=" << z2 << ")";
    throw NumericalGuardError(os.str());
  }
}

void check_z1_domain(const Z1Args& a) {
  if (!std::isfinite(a.z1) || !std::isfinite(a.z2) || !(a.z1 <= a.z2)) {
    throw DomainError("Z1 requires z1 <= z2");
  }
  if (!(a.z3 > 0.0) || !(a.z4 > 0.0)) {
    throw DomainError("Z1 requires positive radii");
  }
  if (!(a.z5 >= -1.0 - kExponentSnap) || !std::isfinite(a.z5)) {
    throw DomainError("Z1 requires z5 >= -1");
  }
}

// sgn(θ) cos^{z5}(θ) 2F1(z5/2, 1/2; (z5+2)/2; cos²θ)
double hyp_term(double theta, double z5) {
  if (theta == 0.0) return 0.0;
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return sgn(theta) * std::pow(c, z5) *
         hyp2f1(z5 / 2.0, 0.5, (z5 + 2.0) / 2.0, c * c, s * s);
}

// Parts of the general case without the z3 term.
double z1_general_outer(double z1, double z2, double z4, double z5) {
  const double s = 1.0 - z5;
  const double z4s = std::pow(z4, s);
  const double b = beta_continued(0.5, z5 / 2.0);
  return b * (sgn(z2) - sgn(z1)) * z4s / (2.0 * s) +
         z4s / (s * z5) * (hyp_term(z1, z5) - hyp_term(z2, z5));
}

}  // namespace

double beta_fn(double x, double y) {
  if (!(x > 0.0) || !(y > 0.0)) throw DomainError("beta_fn needs x, y > 0");
  return std::exp(std::lgamma(x) + std::lgamma(y) - std::lgamma(x + y));
}

double hyp2f1(double a, double b, double c, double z) {
  return hyp2f1(a, b, c, z, 1.0 - z);
}

double hyp2f1(double a, double b, double c, double z, double one_minus_z) {
  if (!(z >= 0.0) || !(z <= 1.0) || !(one_minus_z > 0.0)) {
    throw DomainError("hyp2f1 needs 0 <= z < 1");
  }
  if (!(c > 0.0)) throw DomainError("hyp2f1 needs c > 0");
  if (z <= 0.75) return gauss_series(a, b, c, z);

  const double d = c - a - b;
  if (!(d > 0.0) || near_integer(d)) {
    throw DomainError("hyp2f1 near z = 1 needs non-integer c - a - b > 0");
  }
  const double w = one_minus_z;
  const double g1 = std::tgamma(c) * std::tgamma(d) /
                    (std::tgamma(c - a) * std::tgamma(c - b));
  const double g2 = std::tgamma(c) * std::tgamma(-d) /
                    (std::tgamma(a) * std::tgamma(b));
  return g1 * gauss_series(a, b, 1.0 - d, w) +
         std::pow(w, d) * g2 * gauss_series(c - a, c - b, d + 1.0, w);
}

double im_li2_on_circle(double phi) {
  double t = std::remainder(phi, 2.0 * kPi);
  if (t == 0.0) return 0.0;
  const double sign = t < 0.0 ? -1.0 : 1.0;
  t = std::abs(t);

  // Cl2(t) = t - t ln t + Σ |B_2k| t^{2k+1} / (2k (2k+1)!)
  const double r = t / (2.0 * kPi);
  const double r2 = r * r;
  double sum = t - t * std::log(t);
  double pw = 1.0;
  for (int k = 1; k < 200; ++k) {
    pw *= r2;
    const double term =
        2.0 * zeta_even(k) * pw * t / (2.0 * k * (2.0 * k + 1.0));
    sum += term;
    if (term < 1e-18 * std::abs(sum)) break;
  }
  return sign * sum;
}

double z0(double z1, double z2, double z3, double z4, double z5) {
  if (std::abs(z5 - 1.0) <= kExponentSnap) return (z2 - z1) * std::log(z4 / z3);
  const double s = 1.0 - z5;
  return (z2 - z1) * (std::pow(z4, s) - std::pow(z3, s)) / s;
}

double z1_fn(const Z1Args& args, double guard) {
  check_z1_domain(args);
  const auto [z1, z2, z3, z4, z5] = args;
  if (z1 == z2) return 0.0;
  check_angles(z1, z2, guard);

  if (std::abs(z5 + 1.0) <= kExponentSnap) {
    return z4 * z4 * (std::tan(z2) - std::tan(z1)) / 2.0 +
           (z1 - z2) * z3 * z3 / 2.0;
  }
  if (std::abs(z5) <= kExponentSnap) {
    // ln(tan + sec) == asinh(tan)
    return z4 * (std::asinh(std::tan(z2)) - std::asinh(std::tan(z1))) +
           (z1 - z2) * z3;
  }
  if (std::abs(z5 - 1.0) <= kExponentSnap) {
    return (z2 - z1) * std::log(2.0 * z4 / z3) +
           (im_li2_on_circle(2.0 * z2 + kPi) -
            im_li2_on_circle(2.0 * z1 + kPi)) /
               2.0;
  }
  const double s = 1.0 - z5;
  return z1_general_outer(z1, z2, z4, z5) + (z1 - z2) * std::pow(z3, s) / s;
}

double z1_fn_far(double z1, double z2, double z4, double z5, double guard) {
  check_z1_domain({z1, z2, 1.0, z4, z5});
  if (!(z5 > 1.0 + kExponentSnap)) {
    throw DomainError("far-limit Z1 needs z5 > 1");
  }
  if (z1 == z2) return 0.0;
  check_angles(z1, z2, guard);
  return z1_general_outer(z1, z2, z4, z5);
}

}  // namespace lfom
