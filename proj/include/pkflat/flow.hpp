#pragma once

// Vertical (north) and horizontal (east) straight-line flow on a rectangle
// surface, first returns to a horizontal transversal and the resulting
// strip decomposition.

#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

#include "pkflat/exact_field.hpp"
#include "pkflat/rect_surface.hpp"

namespace pkflat {

enum class Direction { North, East };

struct HitSingularity {
  QN distance;
  std::size_t vertex_class = 0;
};

using TraceResult = std::variant<SurfacePoint, HitSingularity>;

/// Follows the straight trajectory from p for exactly `distance`.
/// Regular vertices are passed through; singular ones stop the trace.
TraceResult flow_trace(const ValidatedSurface& s, const SurfacePoint& p, Direction direction, const QN& distance);

/// Horizontal arc [start, end) at height `height` inside a rectangle.
struct TransversalArc {
  std::size_t rect = 0;
  QN height;
  QN start;
  QN end;
};

/// Arcs laid end to end; a point on arc i at horizontal position x has
/// parameter (length of arcs before i) + (x - start).
struct Transversal {
  std::vector<TransversalArc> arcs;

  QN length() const;
};

/// Bottom boundary of the drawing: every bottom segment whose glued top
/// segment is not drawn directly beneath it, in rectangle order. Every
/// upward leaf leaves the drawing through a top side and lands on it.
Transversal bottom_transversal(const ValidatedSurface& s);

/// Throws InvalidTransversal for empty, out-of-range or overlapping arcs.
void check_transversal(const ValidatedSurface& s, const Transversal& t);

struct ReturnPiece {
  QN start;  // domain [start, end) in transversal parameters
  QN end;
  QN image_offset;  // image is [start + offset, end + offset)
  QN return_height;
};

struct ReturnMap {
  QN length;
  std::vector<ReturnPiece> pieces;  // sorted by start
  /// Parameters whose northward leaf meets a singular vertex first.
  std::vector<QN> breakpoints;
};

/// Default crossing budget: 16 * (number of rectangles)^2.
std::size_t default_max_crossings(const ValidatedSurface& s);

/// First-return map of the north flow. Throws NoReturn when some interval
/// crosses more than `max_crossings` rectangle tops without returning.
ReturnMap first_return(const ValidatedSurface& s, const Transversal& t, std::optional<std::size_t> max_crossings = {});

/// Axis-parallel piece of a strip inside one rectangle.
struct StripPatch {
  std::size_t rect = 0;
  QN x0, x1, y0, y1;
};

struct Strip {
  QN width;
  QN height;
  QN source_start, source_end;
  QN target_start, target_end;
  std::vector<StripPatch> patches;
};

struct StripDecomposition {
  std::vector<Strip> strips;

  QN area() const;
};

/// One strip per return piece. Throws InvalidTransversal when the strips
/// cover less than the whole surface (some leaves never meet t).
StripDecomposition strip_decomposition(const ValidatedSurface& s, const Transversal& t,
                                       std::optional<std::size_t> max_crossings = {});

}  // namespace pkflat
