#pragma once

// Deterministic SVG drawings of surfaces, strip decompositions and covers.

#include <string>

#include "pkflat/flow.hpp"
#include "pkflat/rect_surface.hpp"
#include "pkflat/torus_cover.hpp"

namespace pkflat {

/// Rectangles at their drawing positions, glued segments in matching
/// colours, one filled dot per singular vertex class (other corners of the
/// same class drawn hollow).
std::string render_surface_svg(const ValidatedSurface& s);

/// The surface outline with one translucent group per strip.
std::string render_strips_svg(const ValidatedSurface& s, const StripDecomposition& strips);

/// The development used by the cover over the lattice grid, with the
/// fundamental domain shaded.
std::string render_cover_svg(const ValidatedSurface& s, const CoveringDescription& cover);

}  // namespace pkflat
