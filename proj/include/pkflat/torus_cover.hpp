#pragma once

// Deciding whether a rectangle surface ramifiedly covers a flat torus, and
// building the covering map when it does.

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "pkflat/exact_field.hpp"
#include "pkflat/rect_surface.hpp"

namespace pkflat {

struct DiscretenessVerdict {
  bool discrete = true;
  /// Positive generator of the group; absent when trivial or non-discrete.
  std::optional<QN> generator;
  /// Two incommensurable members, present iff non-discrete.
  std::optional<std::pair<QN, QN>> witness;

  bool trivial() const { return discrete && !generator; }
};

/// Discreteness of the subgroup of R generated by `gens`.
DiscretenessVerdict discreteness(std::span<const QN> gens);

/// The rectangular lattice h*Z + i*v*Z.
struct Lattice {
  QN h;
  QN v;

  QN covolume() const { return h * v; }
  friend bool operator==(const Lattice&, const Lattice&) = default;
};

struct Ramification {
  std::size_t vertex_class = 0;
  int local_degree = 1;
};

struct CoveringDescription {
  Lattice lattice;
  mpz_class degree;
  std::vector<Ramification> ramification;  // every vertex class
  SurfacePoint base_point;                 // maps to 0 in C / lattice
  std::vector<Vec2> placement;             // lower-left corners of the development
};

enum class Axis { Horizontal, Vertical };

struct NotACover {
  Axis axis = Axis::Horizontal;
  /// Period group trivial in this direction.
  bool degenerate = false;
  std::optional<std::pair<QN, QN>> witness;
};

using CoverVerdict = std::variant<CoveringDescription, NotACover>;

CoverVerdict decide_torus_cover(const ValidatedSurface& s);

struct TorusPoint {
  QN x;  // in [0, h)
  QN y;  // in [0, v)
  friend bool operator==(const TorusPoint&, const TorusPoint&) = default;
};

/// Reduces (x, y) into the fundamental domain [0, h) x [0, v).
TorusPoint reduce(const Lattice& lattice, const QN& x, const QN& y);

/// Image of p under the developing map, anchored at the base point.
TorusPoint develop(const ValidatedSurface& s, const CoveringDescription& cover, const SurfacePoint& p);

/// Points of the surface lying over t, counted once each.
std::vector<PointKey> fiber(const ValidatedSurface& s, const CoveringDescription& cover, const TorusPoint& t);
std::size_t fiber_count(const ValidatedSurface& s, const CoveringDescription& cover, const TorusPoint& t);

}  // namespace pkflat
