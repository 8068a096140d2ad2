#pragma once

// Complex surfaces built from flat curves: products of rectangle surfaces,
// and branch-curve configurations on a product of two flat tori.

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "pkflat/errors.hpp"
#include "pkflat/exact_field.hpp"
#include "pkflat/rect_surface.hpp"
#include "pkflat/torus_cover.hpp"

namespace pkflat {

// ---------------------------------------------------------------- products

struct ProductVerdict {
  bool covers = false;
  std::optional<std::pair<Lattice, Lattice>> lattices;
  std::optional<mpz_class> degree;
  /// 0 or 1: the first factor that does not cover a torus.
  std::optional<std::size_t> failing_factor;
  std::optional<NotACover> failure;
};

/// X1 x X2 covers a 4-torus exactly when both factors cover 2-tori.
ProductVerdict product_cover_decision(const ValidatedSurface& c1, const ValidatedSurface& c2);

// ------------------------------------------------------------- branch data

/// Rank-2 lattice in C spanned by two complex numbers.
struct LatticeBasis {
  Vec2 w1;
  Vec2 w2;

  friend bool operator==(const LatticeBasis&, const LatticeBasis&) = default;
};

/// C/L1 x C/L2. Only L1 = L2 (possibly with different bases) is supported.
struct FlatTorus2 {
  LatticeBasis first;
  LatticeBasis second;

  friend bool operator==(const FlatTorus2&, const FlatTorus2&) = default;
};

/// Unit-square factors.
FlatTorus2 square_torus2();

/// Throws DegenerateLattice for dependent generators and UnsupportedTorus
/// when the factor lattices differ.
void check_torus(const FlatTorus2& t);

/// The curve {(z, w) : q*z - p*w = offset} with cone angle 2*pi*order
/// around it in the cover.
struct BranchCurve {
  long p = 0;
  long q = 1;
  Vec2 offset;
  long order = 2;

  friend bool operator==(const BranchCurve&, const BranchCurve&) = default;
};

/// A point of the torus in coordinates of the first lattice basis, each in
/// [0, 1): z = z1*w1 + z2*w2 and w = w1_*w1 + w2_*w2.
struct TorusCoords {
  QN z1, z2, w1, w2;

  friend bool operator==(const TorusCoords&, const TorusCoords&) = default;
};

std::string to_string(const TorusCoords& x);

struct CurveRelation {
  bool parallel = false;
  /// Sorted lexicographically.
  std::vector<TorusCoords> intersections;
};

CurveRelation curve_relations(const BranchCurve& a, const BranchCurve& b, const FlatTorus2& t);

/// True when x satisfies the equation of c.
bool on_curve(const FlatTorus2& t, const BranchCurve& c, const TorusCoords& x);

struct BranchConfig {
  FlatTorus2 torus;
  std::vector<BranchCurve> curves;
  /// Intersections of curves i < j, in (0,1), (0,2), ..., (1,2), ... order.
  std::vector<std::vector<TorusCoords>> pairwise;
};

class TripleIntersectionError : public Error {
 public:
  TripleIntersectionError(std::array<std::size_t, 3> curves, TorusCoords point);

  const std::array<std::size_t, 3>& curves() const noexcept { return curves_; }
  const TorusCoords& point() const noexcept { return point_; }

 private:
  std::array<std::size_t, 3> curves_;
  TorusCoords point_;
};

/// Throws NonPrimitiveDirection, InvalidOrder, ParallelCoincident or
/// TripleIntersectionError.
BranchConfig validate_branch_config(const FlatTorus2& t, std::vector<BranchCurve> curves);

/// Projective class [p : q] with the first nonzero entry positive.
struct ProjectiveDirection {
  long p = 0;
  long q = 1;

  friend bool operator==(const ProjectiveDirection&, const ProjectiveDirection&) = default;
};

struct DirectionCensus {
  std::vector<ProjectiveDirection> directions;  // in order of first appearance
};

DirectionCensus direction_census(std::span<const BranchCurve> curves);
DirectionCensus direction_census(const BranchConfig& config);

enum class Classification { ProductOfCurves, NotProduct, Unknown };

std::string_view to_string(Classification c);

struct ClassifyResult {
  Classification verdict = Classification::Unknown;
  std::string rule;
  DirectionCensus census;
};

ClassifyResult classify(const BranchConfig& config);

// ------------------------------------------------------------ local models

enum class CubeFace { Z1Low, Z1High, Z2Low, Z2High };

std::string_view to_string(CubeFace f);

struct Cube {
  long k = 0;  // in Z/2m, sector of arg z1
  long l = 0;  // in Z/2n, sector of arg z2
};

struct CubeGluing {
  std::size_t a = 0;
  CubeFace face_a = CubeFace::Z1High;
  std::size_t b = 0;
  CubeFace face_b = CubeFace::Z1Low;
};

/// Neighbourhood of a point where branch curves of orders m and n cross:
/// cube (k, l) has index k*2n + l.
struct LocalModel {
  long m = 1;
  long n = 1;
  std::vector<Cube> cubes;
  std::vector<CubeGluing> schedule;

  std::size_t index(long k, long l) const;
};

/// Throws InvalidOrder unless m, n >= 1.
LocalModel local_model(long m, long n);

struct LocalModelAudit {
  std::size_t cube_count = 0;
  bool faces_glued_once = false;
  bool z1_cycle_closes = false;  // 2m steps around arg z1 return every cube
  bool z2_cycle_closes = false;
  long angle_z1 = 0;  // total angle in units of 2*pi
  long angle_z2 = 0;

  bool ok() const { return faces_glued_once && z1_cycle_closes && z2_cycle_closes; }
};

LocalModelAudit audit(const LocalModel& model);

// ----------------------------------------------------------------- isogeny

/// The linear form coef_z*z + coef_w*w, first nonzero coefficient positive.
struct LinearForm {
  long coef_z = 0;
  long coef_w = 0;

  friend bool operator==(const LinearForm&, const LinearForm&) = default;
};

std::string to_string(const LinearForm& f);

struct IsogenySplit {
  LinearForm first;
  LinearForm second;
  /// Index of the image of the period lattice, det^2.
  mpz_class index;
};

struct ParallelCurves {};

std::variant<IsogenySplit, ParallelCurves> isogeny_split(const FlatTorus2& t, const BranchCurve& a,
                                                         const BranchCurve& b);

}  // namespace pkflat
