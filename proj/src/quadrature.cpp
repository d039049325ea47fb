#include "lfom/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <sstream>

#include "lfom/errors.hpp"

namespace lfom {
namespace {

constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};

constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208931829560, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};

// Gauss weights at kXgk[1], [3], [5], [7], [9]
constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Panel {
  double a, b;
  GkRule rule;
  bool operator<(const Panel& o) const { return rule.error < o.rule.error; }
};

}  // namespace

GkRule gauss_kronrod21(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double k = kWgk[10] * fc;
  double g = 0.0;
  for (int i = 0; i < 10; ++i) {
    const double dx = h * kXgk[i];
    const double s = f(c - dx) + f(c + dx);
    k += kWgk[i] * s;
    if (i % 2 == 1) g += kWg[i / 2] * s;
  }
  return {k * h, std::abs((k - g) * h)};
}

QuadResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                              double rel_tol, double abs_tol, std::size_t max_subdivisions,
                              const std::vector<double>& breakpoints) {
  QuadResult out;
  if (a == b) return out;
  double sign = 1.0;
  if (b < a) {
    std::swap(a, b);
    sign = -1.0;
  }
  std::vector<double> cuts{a};
  for (double x : breakpoints)
    if (x > a && x < b) cuts.push_back(x);
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::priority_queue<Panel> heap;
  double value = 0.0;
  double error = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    Panel p{cuts[i], cuts[i + 1], gauss_kronrod21(f, cuts[i], cuts[i + 1])};
    value += p.rule.value;
    error += p.rule.error;
    heap.push(p);
  }

  std::size_t splits = 0;
  while (error > std::max(abs_tol, rel_tol * std::abs(value))) {
    if (splits >= max_subdivisions) {
      std::ostringstream os;
      os << "adaptive quadrature on [" << a << ", " << b << "] stalled at error " << error
         << " after " << splits << " subdivisions";
      throw NonConvergence(os.str());
    }
    const Panel worst = heap.top();
    heap.pop();
    const double m = 0.5 * (worst.a + worst.b);
    if (!(m > worst.a && m < worst.b)) {
      throw NonConvergence("adaptive quadrature reached floating-point resolution");
    }
    Panel l{worst.a, m, gauss_kronrod21(f, worst.a, m)};
    Panel r{m, worst.b, gauss_kronrod21(f, m, worst.b)};
    value += l.rule.value + r.rule.value - worst.rule.value;
    error += l.rule.error + r.rule.error - worst.rule.error;
    heap.push(l);
    heap.push(r);
    ++splits;
  }

  // re-sum to shed drift from the running updates
  value = 0.0;
  error = 0.0;
  while (!heap.empty()) {
    value += heap.top().rule.value;
    error += heap.top().rule.error;
    heap.pop();
  }
  out.value = sign * value;
  out.error = error;
  out.subdivisions = splits;
  return out;
}

}  // namespace lfom
