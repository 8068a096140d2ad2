#pragma once

// Translation surfaces presented as axis-parallel rectangles whose sides
// are cut into segments and glued in pairs by translations.

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pkflat/exact_field.hpp"

namespace pkflat {

enum class Side { Bottom, Right, Top, Left };

std::string_view to_string(Side side);

struct Vec2 {
  QN x;
  QN y;

  friend Vec2 operator+(const Vec2& a, const Vec2& b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(const Vec2& a, const Vec2& b) { return {a.x - b.x, a.y - b.y}; }
  friend bool operator==(const Vec2&, const Vec2&) = default;
};

struct Rectangle {
  std::string id;
  QN width;
  QN height;
  /// Optional drawing position of the lower-left corner.
  std::optional<Vec2> placement;

  friend bool operator==(const Rectangle&, const Rectangle&) = default;
};

struct BoundarySegment {
  std::size_t rect = 0;
  Side side = Side::Bottom;
  QN start;
  QN end;

  QN length() const { return end - start; }
  friend bool operator==(const BoundarySegment&, const BoundarySegment&) = default;
};

/// A translation identifying two boundary segments. After validation
/// `from` is always the top (resp. right) segment and `to` the bottom
/// (resp. left) one.
struct Gluing {
  BoundarySegment from;
  BoundarySegment to;

  bool horizontal() const { return from.side == Side::Top || from.side == Side::Bottom; }
  friend bool operator==(const Gluing&, const Gluing&) = default;
};

/// Raw, unchecked input.
struct RectangleComplex {
  long field = 0;
  std::vector<Rectangle> rectangles;
  std::vector<Gluing> gluings;

  friend bool operator==(const RectangleComplex&, const RectangleComplex&) = default;
};

/// Angular sector of a rectangle at a boundary point that is a corner or
/// an endpoint of a glued segment. Corners span a quarter turn, side
/// points a half turn.
enum class SectorKind { BottomLeft, BottomRight, TopRight, TopLeft, Bottom, Right, Top, Left };

struct Incidence {
  std::size_t rect = 0;
  SectorKind kind = SectorKind::BottomLeft;
  QN offset;  // position along the side for side sectors, 0 for corners

  int quarter_turns() const { return kind >= SectorKind::Bottom ? 2 : 1; }
};

struct VertexClass {
  /// Incidence indices in counterclockwise walk order.
  std::vector<std::size_t> members;
  int cone_multiple = 1;  // cone angle is 2*pi*cone_multiple

  bool singular() const { return cone_multiple > 1; }
};

/// A segment of a rectangle side together with the gluing it belongs to.
struct SideSegment {
  QN start;
  QN end;
  std::size_t gluing = 0;
};

struct SurfacePoint {
  std::size_t rect = 0;
  QN x;
  QN y;
};

/// Identity of a point of the surface: vertex points are named by their
/// class, other points by a canonical (rect, x, y) representative.
struct PointKey {
  bool vertex = false;
  std::size_t index = 0;  // vertex class or rectangle
  QN x;
  QN y;

  friend bool operator==(const PointKey& a, const PointKey& b) {
    return a.vertex == b.vertex && a.index == b.index && a.x == b.x && a.y == b.y;
  }
  friend bool operator<(const PointKey& a, const PointKey& b);
};

class ValidatedSurface {
 public:
  long field() const { return field_; }
  const std::vector<Rectangle>& rectangles() const { return rectangles_; }
  const Rectangle& rectangle(std::size_t i) const { return rectangles_.at(i); }
  const std::vector<Gluing>& gluings() const { return gluings_; }
  const std::vector<Incidence>& incidences() const { return incidences_; }
  const std::vector<VertexClass>& vertex_classes() const { return classes_; }
  /// Vertex class of each incidence.
  std::size_t class_of(std::size_t incidence) const { return class_of_.at(incidence); }

  /// Segments of one side, sorted by start.
  std::span<const SideSegment> side(std::size_t rect, Side s) const;
  QN side_length(std::size_t rect, Side s) const;

  /// The segment of the side starting (resp. ending) at `offset`.
  const SideSegment& segment_starting_at(std::size_t rect, Side s, const QN& offset) const;
  const SideSegment& segment_ending_at(std::size_t rect, Side s, const QN& offset) const;
  /// The segment whose half-open range [start, end) contains offset.
  const SideSegment& segment_containing(std::size_t rect, Side s, const QN& offset) const;
  /// The glued partner of a segment.
  const BoundarySegment& partner(const SideSegment& seg, std::size_t rect, Side s) const;

  /// Incidence located at (x, y) of `rect`, if that point is a corner or
  /// a segment endpoint.
  std::optional<std::size_t> incidence_at(std::size_t rect, const QN& x, const QN& y) const;
  /// Vertex class at the point, if it is a vertex.
  std::optional<std::size_t> vertex_at(std::size_t rect, const QN& x, const QN& y) const;
  Vec2 incidence_position(std::size_t incidence) const;

  /// Throws PointOutsideRectangle when p is not in the closed rectangle.
  void check_point(const SurfacePoint& p) const;
  PointKey canonical(const SurfacePoint& p) const;

 private:
  friend ValidatedSurface validate(RectangleComplex raw);

  long field_ = 0;
  std::vector<Rectangle> rectangles_;
  std::vector<Gluing> gluings_;
  std::vector<std::array<std::vector<SideSegment>, 4>> sides_;
  std::vector<Incidence> incidences_;
  std::vector<std::vector<std::size_t>> incidences_by_rect_;
  std::vector<VertexClass> classes_;
  std::vector<std::size_t> class_of_;
};

/// Checks every structural condition and runs the vertex census.
/// Throws InvalidRectangle, UnknownRectangle, InvalidSegment,
/// BadOrientation, LengthMismatch, Overlap, Gap or Disconnected.
ValidatedSurface validate(RectangleComplex raw);

/// Partition of incidences into vertex classes, found by walking
/// counterclockwise around each vertex across glued segments.
std::vector<VertexClass> vertex_census(const ValidatedSurface& s);

struct SurfaceInvariants {
  int genus = 0;
  int euler = 0;
  QN area;
  /// Cone multiples of the singular classes, ascending.
  std::vector<int> singular_profile;
};

/// Euler characteristic V - E + F of the induced cell complex, genus, area
/// and singular profile. Throws InternalInconsistency if the cone angles
/// disagree with the Euler characteristic.
SurfaceInvariants invariants(const ValidatedSurface& s);

struct Period {
  QN h;
  QN v;
  friend bool operator==(const Period&, const Period&) = default;
};

struct PeriodData {
  std::vector<Period> generators;

  std::vector<QN> horizontal() const;
  std::vector<QN> vertical() const;
};

/// One period per edge outside a BFS spanning tree of the 1-skeleton
/// (vertices are vertex classes, edges are gluings), rooted at `root`.
PeriodData period_group(const ValidatedSurface& s, std::size_t root = 0);

/// Lower-left corner of every rectangle in a development of the surface
/// into the plane along a BFS tree of gluings from rectangle `root`.
std::vector<Vec2> development(const ValidatedSurface& s, std::size_t root = 0);

/// Drawing positions: the document placements when every rectangle has
/// one, otherwise the development.
std::vector<Vec2> drawing_positions(const ValidatedSurface& s);

}  // namespace pkflat
