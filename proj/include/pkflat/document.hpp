#pragma once

// Text documents for rectangle surfaces and branch-curve configurations.
//
// Surface documents:
//
//   # comment
//   [field]
//   d = 5
//   [rect A]
//   width = 1/1
//   height = 1/2+1/2*s
//   at = 0/1 0/1          (optional drawing position)
//   [glue]
//   A top 0/1 1/1 = A bottom 0/1 1/1
//
// Branch documents use [field], an optional [torus] section with keys
// z1, z2, w1, w2 (each "re im", the generators of the two factor lattices)
// and one [curve] section per curve with keys dir = p q, offset = re im
// and order = n.

#include <string>
#include <string_view>
#include <vector>

#include "pkflat/pk_surface.hpp"
#include "pkflat/rect_surface.hpp"

namespace pkflat {

/// Throws ParseError (with line and column) or FieldError.
RectangleComplex parse_surface(std::string_view text);
std::string serialize_surface(const RectangleComplex& c);

struct BranchDocument {
  long field = 0;
  FlatTorus2 torus = square_torus2();
  std::vector<BranchCurve> curves;

  friend bool operator==(const BranchDocument&, const BranchDocument&) = default;
};

BranchDocument parse_branch(std::string_view text);
std::string serialize_branch(const BranchDocument& doc);

}  // namespace pkflat
