#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "lfom/closedform.hpp"
#include "lfom/errors.hpp"

namespace lfom {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double k, Vec2 a) { return {k * a.x, k * a.y}; }
  friend bool operator==(const Vec2&, const Vec2&) = default;
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
double norm(Vec2 a);

struct WallSegment {
  Vec2 a;
  Vec2 b;
  std::string id;
};

struct Room {
  std::string id;
  std::vector<Vec2> vertices;
};

struct Bounds {
  Vec2 min;
  Vec2 max;
  double width() const { return max.x - min.x; }
  double height() const { return max.y - min.y; }
};

class Layout {
 public:
  Layout() = default;
  /// Throws DegenerateGeometry on zero-length walls, rooms with fewer than
  /// three vertices or self-intersecting room loops.
  Layout(std::vector<WallSegment> walls, std::vector<Room> rooms = {},
         std::string name = {});

  const std::vector<WallSegment>& walls() const noexcept { return walls_; }
  const std::vector<Room>& rooms() const noexcept { return rooms_; }
  const std::string& name() const noexcept { return name_; }
  Bounds bounds() const;
  /// Bounding-box diagonal.
  double diameter() const;

 private:
  std::vector<WallSegment> walls_;
  std::vector<Room> rooms_;
  std::string name_;
};

struct TmDecomposition {
  std::vector<ToyModel> tms;
  std::vector<std::size_t> wall_of;  // wall index per TM
  double covered = 0.0;
  std::vector<AngleInterval> gaps;
};

inline constexpr double kDefaultMargin = 0.05;

TmDecomposition decompose(const Layout& layout, Vec2 probe,
                          double margin = kDefaultMargin);

bool enclosure_check(const TmDecomposition& d);

std::optional<std::string> point_in_room(const Layout& layout, Vec2 probe);

struct RayHit {
  std::size_t wall = 0;
  double distance = 0.0;
};

/// Nearest wall hit by the ray from `origin` at global azimuth `phi`.
/// Ties go to the lower wall index.
std::optional<RayHit> cast_ray(const Layout& layout, Vec2 origin, double phi);

/// True when the segment p -> q crosses or touches any wall.
bool segment_blocked(const Layout& layout, Vec2 p, Vec2 q);

double distance_to_segment(Vec2 p, const WallSegment& w);

Layout rectangle_layout(double width, double height, Vec2 origin = {});
Layout regular_polygon_layout(int sides, double circumradius, Vec2 center = {});

}  // namespace lfom
