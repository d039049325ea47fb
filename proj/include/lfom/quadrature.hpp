#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace lfom {

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
  std::size_t subdivisions = 0;
};

struct GkRule {
  double value = 0.0;
  double error = 0.0;
};

/// Single 21-point Gauss-Kronrod panel; error is |K21 - G10|.
GkRule gauss_kronrod21(const std::function<double(double)>& f, double a, double b);

/// Globally adaptive G10/K21 on [a, b], splitting first at `breakpoints`.
/// Stops when the summed error is below max(abs_tol, rel_tol * |value|);
/// throws NonConvergence after `max_subdivisions` bisections.
QuadResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                              double rel_tol, double abs_tol = 0.0,
                              std::size_t max_subdivisions = 2000,
                              const std::vector<double>& breakpoints = {});

}  // namespace lfom
