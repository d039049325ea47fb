#include "lfom/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "lfom/scenario.hpp"

namespace lfom {
namespace {

constexpr double kTwoPi = 2.0 * kPi;
constexpr double kMinInterval = 1e-12;

double azimuth(Vec2 v) {
  double a = std::atan2(v.y, v.x);
  if (a < 0.0) a += kTwoPi;
  if (a >= kTwoPi) a -= kTwoPi;
  return a;
}

double wrap_pi(double a) {
  a = std::remainder(a, kTwoPi);
  return a;
}

// Ray p + t d against segment a..b; returns t when hit.
std::optional<double> ray_segment(Vec2 p, Vec2 d, const WallSegment& w) {
  const Vec2 e = w.b - w.a;
  const double denom = cross(d, e);
  if (std::abs(denom) <= 1e-15 * norm(e) * norm(d)) return std::nullopt;
  const Vec2 ap = w.a - p;
  const double t = cross(ap, e) / denom;
  const double u = cross(ap, d) / denom;
  if (t <= 0.0 || u < 0.0 || u > 1.0) return std::nullopt;
  return t;
}

std::optional<Vec2> segment_intersection(const WallSegment& s, const WallSegment& w) {
  const Vec2 r = s.b - s.a;
  const Vec2 q = w.b - w.a;
  const double denom = cross(r, q);
  if (denom == 0.0) return std::nullopt;
  const Vec2 ap = w.a - s.a;
  const double t = cross(ap, q) / denom;
  const double u = cross(ap, r) / denom;
  if (t < 0.0 || t > 1.0 || u < 0.0 || u > 1.0) return std::nullopt;
  return s.a + t * r;
}

bool segments_cross(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
  auto orient = [](Vec2 p, Vec2 q, Vec2 r) { return cross(q - p, r - p); };
  const double o1 = orient(a, b, c);
  const double o2 = orient(a, b, d);
  const double o3 = orient(c, d, a);
  const double o4 = orient(c, d, b);
  return ((o1 > 0) != (o2 > 0)) && ((o3 > 0) != (o4 > 0)) && o1 != 0 && o2 != 0 &&
         o3 != 0 && o4 != 0;
}

}  // namespace

double norm(Vec2 a) { return std::hypot(a.x, a.y); }

Layout::Layout(std::vector<WallSegment> walls, std::vector<Room> rooms, std::string name)
    : walls_(std::move(walls)), rooms_(std::move(rooms)), name_(std::move(name)) {
  for (const auto& w : walls_) {
    if (!std::isfinite(w.a.x) || !std::isfinite(w.a.y) || !std::isfinite(w.b.x) ||
        !std::isfinite(w.b.y)) {
      throw DegenerateGeometry("wall '" + w.id + "' has non-finite coordinates");
    }
    if (norm(w.b - w.a) == 0.0) {
      throw DegenerateGeometry("wall '" + w.id + "' has zero length");
    }
  }
  for (const auto& r : rooms_) {
    const auto& v = r.vertices;
    const std::size_t n = v.size();
    if (n < 3) throw DegenerateGeometry("room '" + r.id + "' needs at least 3 vertices");
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (j == i + 1 || (i == 0 && j == n - 1)) continue;
        if (segments_cross(v[i], v[(i + 1) % n], v[j], v[(j + 1) % n])) {
          throw DegenerateGeometry("room '" + r.id + "' is self-intersecting");
        }
      }
    }
  }
}

Bounds Layout::bounds() const {
  constexpr double inf = std::numeric_limits<double>::infinity();
  Bounds b{{inf, inf}, {-inf, -inf}};
  auto grow = [&](Vec2 p) {
    b.min.x = std::min(b.min.x, p.x);
    b.min.y = std::min(b.min.y, p.y);
    b.max.x = std::max(b.max.x, p.x);
    b.max.y = std::max(b.max.y, p.y);
  };
  for (const auto& w : walls_) {
    grow(w.a);
    grow(w.b);
  }
  for (const auto& r : rooms_)
    for (auto p : r.vertices) grow(p);
  if (walls_.empty() && rooms_.empty()) return Bounds{};
  return b;
}

double Layout::diameter() const {
  const auto b = bounds();
  return std::hypot(b.width(), b.height());
}

double distance_to_segment(Vec2 p, const WallSegment& w) {
  const Vec2 e = w.b - w.a;
  const double t = std::clamp(dot(p - w.a, e) / dot(e, e), 0.0, 1.0);
  return norm(p - (w.a + t * e));
}

std::optional<RayHit> cast_ray(const Layout& layout, Vec2 origin, double phi) {
  const Vec2 d{std::cos(phi), std::sin(phi)};
  std::optional<RayHit> best;
  const auto& walls = layout.walls();
  for (std::size_t i = 0; i < walls.size(); ++i) {
    const auto t = ray_segment(origin, d, walls[i]);
    if (t && (!best || *t < best->distance)) best = RayHit{i, *t};
  }
  return best;
}

bool segment_blocked(const Layout& layout, Vec2 p, Vec2 q) {
  const Vec2 r = q - p;
  for (const auto& w : layout.walls()) {
    const Vec2 s = w.b - w.a;
    const double denom = cross(r, s);
    if (denom == 0.0) continue;
    const Vec2 ap = w.a - p;
    const double t = cross(ap, s) / denom;
    const double u = cross(ap, r) / denom;
    if (t > 0.0 && t <= 1.0 && u >= 0.0 && u <= 1.0) return true;
  }
  return false;
}

TmDecomposition decompose(const Layout& layout, Vec2 probe, double margin) {
  const auto& walls = layout.walls();
  for (const auto& w : walls) {
    const double dist = distance_to_segment(probe, w);
    if (dist < margin) {
      std::ostringstream os;
      os << "probe (" << probe.x << ", " << probe.y << ") is " << dist
         << " m from wall '" << w.id << "', margin is " << margin << " m";
      throw ProbeTooClose(os.str(), w.id, dist);
    }
  }

  std::vector<double> events{0.0, kTwoPi};
  for (std::size_t i = 0; i < walls.size(); ++i) {
    events.push_back(azimuth(walls[i].a - probe));
    events.push_back(azimuth(walls[i].b - probe));
    for (std::size_t j = i + 1; j < walls.size(); ++j) {
      if (auto x = segment_intersection(walls[i], walls[j])) {
        events.push_back(azimuth(*x - probe));
      }
    }
  }
  std::sort(events.begin(), events.end());
  events.erase(std::unique(events.begin(), events.end()), events.end());

  // owner per elementary interval, merged where the owner repeats
  struct Span {
    double begin, end;
    std::optional<std::size_t> wall;
  };
  std::vector<Span> spans;
  for (std::size_t k = 0; k + 1 < events.size(); ++k) {
    const double a = events[k];
    const double b = events[k + 1];
    if (b - a <= 0.0) continue;
    const auto hit = cast_ray(layout, probe, 0.5 * (a + b));
    std::optional<std::size_t> owner;
    if (hit) owner = hit->wall;
    if (!spans.empty() && spans.back().wall == owner && spans.back().end == a) {
      spans.back().end = b;
    } else {
      spans.push_back({a, b, owner});
    }
  }

  TmDecomposition out;
  for (const auto& s : spans) {
    if (!s.wall) {
      out.gaps.push_back({s.begin, s.end});
      continue;
    }
    if (s.end - s.begin < kMinInterval) continue;
    const auto& w = walls[*s.wall];
    const Vec2 e = w.b - w.a;
    const Vec2 foot = w.a + (dot(probe - w.a, e) / dot(e, e)) * e;
    const double d0 = norm(foot - probe);
    if (d0 < margin) {
      std::ostringstream os;
      os << "probe (" << probe.x << ", " << probe.y << ") is " << d0
         << " m from the line of wall '" << w.id << "', margin is " << margin << " m";
      throw ProbeTooClose(os.str(), w.id, d0);
    }
    const double phi = azimuth(foot - probe);
    ToyModel tm;
    tm.d0 = d0;
    tm.phi_perp = phi;
    tm.theta_l = wrap_pi(s.begin - phi);
    tm.theta_r = tm.theta_l + (s.end - s.begin);
    if (!(tm.theta_l > -kPi / 2.0) || !(tm.theta_r < kPi / 2.0)) {
      throw DegenerateGeometry("wall '" + w.id + "' seen outside +-pi/2 of its normal");
    }
    out.tms.push_back(tm);
    out.wall_of.push_back(*s.wall);
    out.covered += s.end - s.begin;
  }
  return out;
}

bool enclosure_check(const TmDecomposition& d) {
  return std::abs(d.covered - kTwoPi) <= 1e-9;
}

std::optional<std::string> point_in_room(const Layout& layout, Vec2 probe) {
  for (const auto& room : layout.rooms()) {
    const auto& v = room.vertices;
    const std::size_t n = v.size();
    bool inside = false;
    bool on_edge = false;
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
      const WallSegment edge{v[j], v[i], {}};
      if (distance_to_segment(probe, edge) <= 1e-12) {
        on_edge = true;
        break;
      }
      if ((v[i].y > probe.y) != (v[j].y > probe.y)) {
        const double x = v[j].x + (probe.y - v[j].y) * (v[i].x - v[j].x) / (v[i].y - v[j].y);
        if (probe.x < x) inside = !inside;
      }
    }
    if (on_edge) return std::nullopt;
    if (inside) return room.id;
  }
  return std::nullopt;
}

Layout rectangle_layout(double width, double height, Vec2 origin) {
  const Vec2 p0 = origin;
  const Vec2 p1 = origin + Vec2{width, 0.0};
  const Vec2 p2 = origin + Vec2{width, height};
  const Vec2 p3 = origin + Vec2{0.0, height};
  return Layout({{p0, p1, "s"}, {p1, p2, "e"}, {p2, p3, "n"}, {p3, p0, "w"}},
                {{"room", {p0, p1, p2, p3}}}, "rectangle");
}

Layout regular_polygon_layout(int sides, double circumradius, Vec2 center) {
  if (sides < 3) throw DegenerateGeometry("polygon needs at least 3 sides");
  std::vector<Vec2> v;
  for (int k = 0; k < sides; ++k) {
    const double a = kTwoPi * k / sides;
    v.push_back(center + Vec2{circumradius * std::cos(a), circumradius * std::sin(a)});
  }
  std::vector<WallSegment> walls;
  for (int k = 0; k < sides; ++k) {
    walls.push_back({v[k], v[(k + 1) % sides], "w" + std::to_string(k)});
  }
  return Layout(std::move(walls), {{"room", v}}, "polygon");
}

}  // namespace lfom
