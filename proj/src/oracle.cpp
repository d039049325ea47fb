#include "lfom/oracle.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include <omp.h>

#include "lfom/errors.hpp"

namespace lfom {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// ∫_x^y R^k dR
double power_integral(double k, double x, double y) {
  if (!(y > x)) return 0.0;
  if (k == -1.0) return std::log(y / x);
  if (std::isinf(y)) return -std::pow(x, k + 1.0) / (k + 1.0);
  return (std::pow(y, k + 1.0) - std::pow(x, k + 1.0)) / (k + 1.0);
}

struct Piece {
  double lo, hi, coef, k;
};

std::array<Piece, 3> pieces(PathModel m, const ScenarioParams& p) {
  const double a = p.near_field_radius();
  const double c = p.free_space_constant();
  switch (m) {
    case PathModel::Open: {
      const double b = p.two_ray_breakpoint();
      const double hh = p.h_t() * p.h_r();
      return {{{0.0, a, 1.0, 1.0}, {a, b, c, -1.0}, {b, kInf, hh * hh, -3.0}}};
    }
    case PathModel::Los:
      return {{{0.0, a, 1.0, 1.0}, {a, 1.0, c, -1.0}, {1.0, kInf, c, 1.0 - p.n_l()}}};
    case PathModel::Nlos:
      break;
  }
  return {{{0.0, a, 1.0, 1.0}, {a, 1.0, c, -1.0}, {1.0, kInf, c, 1.0 - p.n_n()}}};
}

std::vector<double> theta_breaks(const ToyModel& tm, const ScenarioParams& p) {
  const auto radii = coverage_radii(p);
  std::vector<double> out;
  for (double r : {p.near_field_radius(), 1.0, p.two_ray_breakpoint(), radii.r_l, radii.r_n}) {
    if (tm.d0 < r) {
      const double t = std::acos(tm.d0 / r);
      out.push_back(-t);
      out.push_back(t);
    }
  }
  return out;
}

struct Neumaier {
  double sum = 0.0;
  double comp = 0.0;
  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + comp; }
};

enum Acc {
  kPo, kIo, kPl, kIl, kPn, kIn,
  kPo2, kIo2, kPl2, kIl2, kPn2, kIn2,
  kA, kA2, kB, kB2, kAPo, kBIo,
  kAccCount
};

using BlockSums = std::array<Neumaier, kAccCount>;

struct McSetup {
  double r_disc;
  double r_core;
  double nearest_wall;
  CoverageRadii radii;
};

McSetup mc_setup(const Layout& layout, Vec2 probe, const ScenarioParams& p, const McSpec& spec) {
  if (spec.samples < 2) throw DomainError("Monte Carlo needs at least 2 samples");
  if (spec.block == 0) throw DomainError("Monte Carlo block size must be positive");
  McSetup s;
  s.radii = coverage_radii(p);
  double farthest = 0.0;
  s.nearest_wall = kInf;
  for (const auto& w : layout.walls()) {
    farthest = std::max({farthest, norm(w.a - probe), norm(w.b - probe)});
    s.nearest_wall = std::min(s.nearest_wall, distance_to_segment(probe, w));
  }
  s.r_disc = spec.r_disc > 0.0 ? spec.r_disc
                               : std::max(3.0 * s.radii.r_n, 1.5 * layout.diameter());
  if (s.r_disc < farthest) {
    std::ostringstream os;
    os << "R_disc = " << s.r_disc << " m does not contain the layout (farthest wall point "
       << farthest << " m)";
    throw DomainError(os.str());
  }
  s.r_core = std::min(spec.r_core < 0.0 ? s.nearest_wall : spec.r_core, s.r_disc);
  return s;
}

BlockSums mc_block(const Layout& layout, Vec2 probe, const ScenarioParams& p,
                   const McSpec& spec, const McSetup& s, std::uint64_t block) {
  const std::uint64_t first = block * spec.block;
  const std::uint64_t count = std::min<std::uint64_t>(spec.block, spec.samples - first);
  std::mt19937_64 gen(splitmix64(splitmix64(spec.seed) + block));
  auto uniform = [&gen] { return static_cast<double>(gen() >> 11) * 0x1.0p-53; };

  const double pt = p.p_t();
  const double core2 = s.r_core * s.r_core;
  const double span2 = s.r_disc * s.r_disc - core2;
  BlockSums acc{};
  std::array<double, 6> v{};
  for (std::uint64_t k = 0; k < count; ++k) {
    const double r = std::sqrt(core2 + span2 * uniform());
    const double phi = 2.0 * kPi * uniform();
    v.fill(0.0);

    const double go = pt * path_gain_open(r, p);
    (r < s.radii.r_o ? v[kPo] : v[kIo]) = go;

    bool los = true;
    if (r >= s.nearest_wall) {
      const Vec2 q{probe.x + r * std::cos(phi), probe.y + r * std::sin(phi)};
      los = !segment_blocked(layout, probe, q);
    }
    if (los) {
      (r < s.radii.r_l ? v[kPl] : v[kIl]) = pt * path_gain_los(r, p);
    } else {
      (r < s.radii.r_n ? v[kPn] : v[kIn]) = pt * path_gain_nlos(r, p);
    }
    for (int i = 0; i < 6; ++i) {
      acc[i].add(v[i]);
      acc[i + 6].add(v[i] * v[i]);
    }
    const double a = v[kPl] + v[kPn];
    const double b = v[kIl] + v[kIn];
    acc[kA].add(a);
    acc[kA2].add(a * a);
    acc[kB].add(b);
    acc[kB2].add(b * b);
    acc[kAPo].add(a * v[kPo]);
    acc[kBIo].add(b * v[kIo]);
  }
  return acc;
}

McEstimate mc_finish(const std::vector<BlockSums>& blocks, const ScenarioParams& p,
                     const McSpec& spec, const McSetup& s) {
  std::array<double, kAccCount> tot{};
  for (int i = 0; i < kAccCount; ++i) {
    Neumaier n;
    for (const auto& b : blocks) n.add(b[i].value());
    tot[i] = n.value();
  }
  const double n = static_cast<double>(spec.samples);
  const double area = kPi * (s.r_disc * s.r_disc - s.r_core * s.r_core);
  auto mean = [&](int i) { return tot[i] / n; };
  auto cov = [&](int xy, int x, int y) { return (tot[xy] - tot[x] * tot[y] / n) / (n - 1.0); };
  auto se = [&](int i) { return area * std::sqrt(std::max(0.0, cov(i + 6, i, i)) / n); };

  const double rd = s.r_disc;
  const double t_po = 2.0 * kPi * radial_power(PathModel::Open, rd, std::max(rd, s.radii.r_o), p);
  const double t_io = 2.0 * kPi * radial_power(PathModel::Open, std::max(rd, s.radii.r_o), kInf, p);
  const double t_pn = 2.0 * kPi * radial_power(PathModel::Nlos, rd, std::max(rd, s.radii.r_n), p);
  const double t_in = 2.0 * kPi * radial_power(PathModel::Nlos, std::max(rd, s.radii.r_n), kInf, p);
  const double rc = s.r_core;
  const double c_po = 2.0 * kPi * radial_power(PathModel::Open, 0.0, std::min(rc, s.radii.r_o), p);
  const double c_io = 2.0 * kPi * radial_power(PathModel::Open, std::min(rc, s.radii.r_o), rc, p);
  const double c_pl = 2.0 * kPi * radial_power(PathModel::Los, 0.0, std::min(rc, s.radii.r_l), p);
  const double c_il = 2.0 * kPi * radial_power(PathModel::Los, std::min(rc, s.radii.r_l), rc, p);

  McEstimate e;
  e.samples = spec.samples;
  e.r_disc = s.r_disc;
  e.seed = spec.seed;
  e.mean = {area * mean(kPo) + t_po + c_po, area * mean(kIo) + t_io + c_io,
            area * mean(kPl) + c_pl,        area * mean(kIl) + c_il,
            area * mean(kPn) + t_pn,        area * mean(kIn) + t_in};
  e.stderr_ = {se(kPo), se(kIo), se(kPl), se(kIl), se(kPn), se(kIn)};
  e.fom = fom_from_breakdown(e.mean, p.sigma2());

  // delta method for a ratio of two correlated sample means
  auto ratio_se = [&](double g, double y, int ix, int iy, int ixy, int ix2, int iy2) {
    const double vx = cov(ix2, ix, ix);
    const double vy = cov(iy2, iy, iy);
    const double cxy = cov(ixy, ix, iy);
    const double var = area * area / (n * y * y) * (vx - 2.0 * g * cxy + g * g * vy);
    return std::sqrt(std::max(0.0, var));
  };
  const double sigma2 = p.sigma2();
  const double y_i = e.mean.i_l + e.mean.i_n + sigma2;
  e.g_i_stderr = ratio_se(e.fom.g_i, y_i, kIo, kB, kBIo, kIo2, kB2);
  e.g_p_stderr = ratio_se(e.fom.g_p, e.mean.p_o, kA, kPo, kAPo, kA2, kPo2);
  return e;
}

std::uint64_t block_count(const McSpec& spec) {
  return (spec.samples + spec.block - 1) / spec.block;
}

template <class F>
double seconds_of(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

std::string_view to_string(Region r) {
  switch (r) {
    case Region::PL:
      return "PL";
    case Region::IL:
      return "IL";
    case Region::PN:
      return "PN";
    case Region::IN:
      break;
  }
  return "IN";
}

double radial_power(PathModel m, double r0, double r1, const ScenarioParams& p) {
  if (!(r1 > r0)) return 0.0;
  double sum = 0.0;
  for (const auto& pc : pieces(m, p)) {
    const double lo = std::max(r0, pc.lo);
    const double hi = std::min(r1, pc.hi);
    if (hi > lo) sum += pc.coef * power_integral(pc.k, lo, hi);
  }
  return p.p_t() * sum;
}

QuadResult quad_region(Region region, const ToyModel& tm, const ScenarioParams& p,
                       const QuadratureSpec& spec) {
  if (!(tm.theta_l > -kPi / 2.0) || !(tm.theta_r < kPi / 2.0) || tm.theta_l > tm.theta_r) {
    throw DomainError("toy model needs -pi/2 < theta_l <= theta_r < pi/2");
  }
  if (tm.theta_l == tm.theta_r) return {};
  const auto radii = coverage_radii(p);
  const double r_max =
      spec.r_max > 0.0 ? spec.r_max : 10.0 * std::max({radii.r_l, radii.r_n, tm.d0});

  auto f = [&](double theta) {
    const double w = tm.d0 / std::cos(theta);
    switch (region) {
      case Region::PL:
        return radial_power(PathModel::Los, 0.0, std::min(radii.r_l, w), p);
      case Region::IL:
        return radial_power(PathModel::Los, radii.r_l, w, p);
      case Region::PN:
        return radial_power(PathModel::Nlos, w, radii.r_n, p);
      case Region::IN:
        break;
    }
    const double lo = std::max(radii.r_n, w);
    if (lo >= r_max) return radial_power(PathModel::Nlos, lo, kInf, p);
    return radial_power(PathModel::Nlos, lo, r_max, p) +
           radial_power(PathModel::Nlos, r_max, kInf, p);
  };
  return integrate_adaptive(f, tm.theta_l, tm.theta_r, spec.rel_tol, spec.abs_floor,
                            spec.max_subdivisions, theta_breaks(tm, p));
}

QuadResult quad_sector_total(const ToyModel& tm, const ScenarioParams& p,
                             const QuadratureSpec& spec) {
  if (tm.theta_l == tm.theta_r) return {};
  auto f = [&](double theta) {
    const double w = tm.d0 / std::cos(theta);
    return radial_power(PathModel::Los, 0.0, w, p) + radial_power(PathModel::Nlos, w, kInf, p);
  };
  return integrate_adaptive(f, tm.theta_l, tm.theta_r, spec.rel_tol, spec.abs_floor,
                            spec.max_subdivisions, theta_breaks(tm, p));
}

OpenSpaceQuad quad_open_space(const ScenarioParams& p, double rel_tol) {
  const double r_o = coverage_radii(p).r_o;
  const double a = p.near_field_radius();
  const double b = p.two_ray_breakpoint();
  const double pt = p.p_t();
  OpenSpaceQuad out;

  auto inner = [&](double r) { return 2.0 * kPi * pt * path_gain_open(r, p) * r; };
  out.p_o = integrate_adaptive(inner, 0.0, r_o, rel_tol, 0.0, 4000, {a, b});

  auto outer = [&](double t) {
    if (t == 0.0) return 0.0;
    const double r = r_o / t;
    return 2.0 * kPi * pt * path_gain_open(r, p) * r * r_o / (t * t);
  };
  out.i_o = integrate_adaptive(outer, 0.0, 1.0, rel_tol, 0.0, 4000, {r_o / b, r_o / a});
  return out;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

McEstimate mc_point_serial(const Layout& layout, Vec2 probe, const ScenarioParams& p,
                           const McSpec& spec) {
  const auto s = mc_setup(layout, probe, p, spec);
  const std::uint64_t nb = block_count(spec);
  std::vector<BlockSums> blocks(nb);
  for (std::uint64_t b = 0; b < nb; ++b) blocks[b] = mc_block(layout, probe, p, spec, s, b);
  return mc_finish(blocks, p, spec, s);
}

McEstimate mc_point(const Layout& layout, Vec2 probe, const ScenarioParams& p,
                    const McSpec& spec) {
  const auto s = mc_setup(layout, probe, p, spec);
  const auto nb = static_cast<long long>(block_count(spec));
  std::vector<BlockSums> blocks(static_cast<std::size_t>(nb));
  const int threads = spec.workers > 0 ? spec.workers : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (long long b = 0; b < nb; ++b) {
    blocks[static_cast<std::size_t>(b)] =
        mc_block(layout, probe, p, spec, s, static_cast<std::uint64_t>(b));
  }
  return mc_finish(blocks, p, spec, s);
}

double relative_deviation(double closed, double oracle, const ScenarioParams& p) {
  const double floor = 1e-14 * p.p_t() * p.free_space_constant();
  return std::abs(closed - oracle) / std::max(std::abs(oracle), floor);
}

namespace {

double z_score(double closed, double mc, double se) {
  const double d = std::abs(closed - mc);
  if (se > 0.0) return d / se;
  return d == 0.0 ? 0.0 : kInf;
}

}  // namespace

ValidationReport validate_tms(const std::vector<ToyModel>& tms, const ScenarioParams& p,
                              const ValidationOptions& opt) {
  const TmEvaluator eval = opt.evaluator ? opt.evaluator : TmEvaluator(tm_powers);
  const auto radii = coverage_radii(p);
  ValidationReport rep;
  for (const auto& tm : tms) {
    TmCheck c;
    c.tm = tm;
    c.closed = eval(tm, p, radii);
    c.oracle = {quad_region(Region::PL, tm, p, opt.quad).value,
                quad_region(Region::IL, tm, p, opt.quad).value,
                quad_region(Region::PN, tm, p, opt.quad).value,
                quad_region(Region::IN, tm, p, opt.quad).value};
    c.rel_dev = {relative_deviation(c.closed.p_l, c.oracle.p_l, p),
                 relative_deviation(c.closed.i_l, c.oracle.i_l, p),
                 relative_deviation(c.closed.p_n, c.oracle.p_n, p),
                 relative_deviation(c.closed.i_n, c.oracle.i_n, p)};
    auto& m = rep.max_rel_dev;
    m.p_l = std::max(m.p_l, c.rel_dev.p_l);
    m.i_l = std::max(m.i_l, c.rel_dev.i_l);
    m.p_n = std::max(m.p_n, c.rel_dev.p_n);
    m.i_n = std::max(m.i_n, c.rel_dev.i_n);
    rep.tms.push_back(c);
  }
  const auto& m = rep.max_rel_dev;
  rep.quad_pass = m.p_l <= opt.quad_rel_tol && m.i_l <= opt.quad_rel_tol &&
                  m.p_n <= opt.quad_rel_tol && m.i_n <= opt.quad_rel_tol_in;
  return rep;
}

ValidationReport validate(const Layout& layout, const std::vector<Vec2>& probes,
                          const ScenarioParams& p, const ValidationOptions& opt) {
  const TmEvaluator eval = opt.evaluator ? opt.evaluator : TmEvaluator(tm_powers);
  const auto radii = coverage_radii(p);
  const auto os = open_space_powers(p);

  std::vector<ToyModel> all;
  std::vector<FomResult> closed;
  double closed_total = 0.0;
  for (const auto& probe : probes) {
    TmDecomposition d;
    SignalBreakdown s;
    const double dt = seconds_of([&] {
      d = decompose(layout, probe, opt.margin);
      if (!enclosure_check(d)) {
        throw NotEnclosed("validation probe is not enclosed", d.gaps);
      }
      TmPowers sum;
      for (const auto& tm : d.tms) sum += eval(tm, p, radii);
      s = {os.p_o, os.i_o, sum.p_l, sum.i_l, sum.p_n, sum.i_n};
    });
    closed_total += dt;
    closed.push_back(fom_from_breakdown(s, p.sigma2()));
    all.insert(all.end(), d.tms.begin(), d.tms.end());
  }

  auto rep = validate_tms(all, p, opt);
  rep.seed = opt.mc.seed;
  rep.samples = opt.mc.samples;
  if (!probes.empty()) rep.closed_seconds = closed_total / probes.size();
  if (!opt.run_mc || probes.empty()) return rep;

  double mc_total = 0.0;
  for (std::size_t i = 0; i < probes.size(); ++i) {
    McCheck c;
    c.probe = probes[i];
    c.closed = closed[i];
    mc_total += seconds_of([&] { c.mc = mc_point(layout, probes[i], p, opt.mc); });
    c.z_g_i = z_score(c.closed.g_i, c.mc.fom.g_i, c.mc.g_i_stderr);
    c.z_g_p = z_score(c.closed.g_p, c.mc.fom.g_p, c.mc.g_p_stderr);
    rep.max_z = std::max({rep.max_z, c.z_g_i, c.z_g_p});
    rep.probes.push_back(c);
  }
  rep.mc_seconds = mc_total / probes.size();
  rep.speedup = rep.closed_seconds > 0.0 ? rep.mc_seconds / rep.closed_seconds : 0.0;
  rep.mc_pass = rep.max_z <= opt.z_max;
  return rep;
}

}  // namespace lfom
