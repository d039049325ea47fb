#pragma once

namespace lfom {

inline constexpr double kAngleGuard = 1e-9;
// |z5 - k| below this uses the dedicated k = -1, 0, 1 branch
inline constexpr double kExponentSnap = 1e-12;

double beta_fn(double x, double y);

/// Gauss hypergeometric 2F1(a, b; c; z) on 0 <= z < 1.
/// Needs c - a - b > 0 and non-integer once z > 0.75.
double hyp2f1(double a, double b, double c, double z);

/// Same, with 1 - z supplied separately so callers near z = 1 keep precision.
double hyp2f1(double a, double b, double c, double z, double one_minus_z);

/// Clausen Cl2(phi) = Im Li2(e^{i phi}).
double im_li2_on_circle(double phi);

double z0(double z1, double z2, double z3, double z4, double z5);

struct Z1Args {
  double z1 = 0.0;
  double z2 = 0.0;
  double z3 = 1.0;
  double z4 = 1.0;
  double z5 = 0.0;
};

/// ∫_{z1}^{z2} ∫_{z3}^{z4/cos θ} R^{-z5} dR dθ
double z1_fn(const Z1Args& args, double guard = kAngleGuard);

/// ∫_{z1}^{z2} ∫_{z4/cos θ}^{∞} R^{-z5} dR dθ taken with a minus sign, i.e. the
/// z3 -> ∞ limit of z1_fn. Requires z5 > 1.
double z1_fn_far(double z1, double z2, double z4, double z5,
                 double guard = kAngleGuard);

}  // namespace lfom
