#include "pkflat/flow.hpp"

#include <algorithm>
#include <map>

namespace pkflat {

// --------------------------------------------------------------- tracing

namespace {

// Orientation-agnostic view of a rectangle for a flow direction: `along`
// is the coordinate that increases with time, `across` the other one.
struct FlowFrame {
  const ValidatedSurface& s;
  bool north;

  Side exit() const { return north ? Side::Top : Side::Right; }
  Side low_side() const { return north ? Side::Left : Side::Bottom; }
  Side high_side() const { return north ? Side::Right : Side::Top; }
  QN extent(std::size_t r) const { return north ? s.rectangle(r).height : s.rectangle(r).width; }
  QN span(std::size_t r) const { return north ? s.rectangle(r).width : s.rectangle(r).height; }
  QN along(const SurfacePoint& p) const { return north ? p.y : p.x; }
  QN across(const SurfacePoint& p) const { return north ? p.x : p.y; }
  SurfacePoint point(std::size_t r, const QN& across, const QN& along) const {
    return north ? SurfacePoint{r, across, along} : SurfacePoint{r, along, across};
  }
  std::optional<std::size_t> singular_at(std::size_t r, const QN& across, const QN& along) const {
    const SurfacePoint p = point(r, across, along);
    auto v = s.vertex_at(p.rect, p.x, p.y);
    if (v && s.vertex_classes()[*v].singular()) return v;
    return std::nullopt;
  }
};

}  // namespace

TraceResult flow_trace(const ValidatedSurface& s, const SurfacePoint& p, Direction direction, const QN& distance) {
  s.check_point(p);
  if (distance.sign() < 0) throw Error(ErrorKind::UsageError, "flow distance must be non-negative");
  const FlowFrame f{s, direction == Direction::North};

  std::size_t rect = p.rect;
  QN across = f.across(p);
  QN along = f.along(p);
  QN travelled(0);
  if (distance.sign() > 0) {
    if (auto v = f.singular_at(rect, across, along)) return HitSingularity{QN(0), *v};
  }

  for (;;) {
    const QN remaining = distance - travelled;
    const QN extent = f.extent(rect);
    const QN stop = std::min(along + remaining, extent);
    // A leaf running along a vertical (resp. horizontal) side can meet
    // vertices in the middle of that side.
    if (across.is_zero() || across == f.span(rect)) {
      const Side side = across.is_zero() ? f.low_side() : f.high_side();
      const auto segs = s.side(rect, side);
      for (std::size_t i = 1; i < segs.size(); ++i) {
        const QN& at = segs[i].start;
        if (at > along && at <= stop) {
          if (auto v = f.singular_at(rect, across, at)) return HitSingularity{travelled + (at - along), *v};
        }
      }
    }
    if (along + remaining < extent) return f.point(rect, across, along + remaining);

    travelled += extent - along;
    if (auto v = f.singular_at(rect, across, extent)) return HitSingularity{travelled, *v};
    const SideSegment& seg = across < f.span(rect) ? s.segment_containing(rect, f.exit(), across)
                                                   : s.segment_ending_at(rect, f.exit(), across);
    const BoundarySegment& next = s.partner(seg, rect, f.exit());
    across = across - seg.start + next.start;
    along = QN(0);
    rect = next.rect;
    if (travelled == distance) return f.point(rect, across, along);
  }
}

// ------------------------------------------------------------ transversal

QN Transversal::length() const {
  QN total(0);
  for (const TransversalArc& a : arcs) total += a.end - a.start;
  return total;
}

Transversal bottom_transversal(const ValidatedSurface& s) {
  const std::vector<Vec2> at = drawing_positions(s);
  Transversal t;
  for (std::size_t r = 0; r < s.rectangles().size(); ++r) {
    for (const SideSegment& seg : s.side(r, Side::Bottom)) {
      const BoundarySegment& top = s.partner(seg, r, Side::Bottom);
      const bool stacked = at[r].x + seg.start == at[top.rect].x + top.start &&
                           at[r].y == at[top.rect].y + s.rectangle(top.rect).height;
      if (stacked) continue;
      if (!t.arcs.empty() && t.arcs.back().rect == r && t.arcs.back().end == seg.start) {
        t.arcs.back().end = seg.end;
      } else {
        t.arcs.push_back({r, QN(0), seg.start, seg.end});
      }
    }
  }
  return t;
}

void check_transversal(const ValidatedSurface& s, const Transversal& t) {
  if (t.arcs.empty()) throw Error(ErrorKind::InvalidTransversal, "transversal has no arcs");
  for (std::size_t i = 0; i < t.arcs.size(); ++i) {
    const TransversalArc& a = t.arcs[i];
    if (a.rect >= s.rectangles().size())
      throw Error(ErrorKind::InvalidTransversal, "arc refers to rectangle #" + std::to_string(a.rect));
    const Rectangle& r = s.rectangle(a.rect);
    if (a.start.sign() < 0 || a.start >= a.end || a.end > r.width || a.height.sign() < 0 || a.height >= r.height)
      throw Error(ErrorKind::InvalidTransversal, "arc [" + a.start.str() + ", " + a.end.str() + "] at height " +
                                                     a.height.str() + " does not lie in rectangle " + r.id);
    for (std::size_t j = 0; j < i; ++j) {
      const TransversalArc& b = t.arcs[j];
      if (b.rect == a.rect && b.height == a.height && a.start < b.end && b.start < a.end)
        throw Error(ErrorKind::InvalidTransversal, "arcs overlap in rectangle " + r.id);
    }
  }
}

std::size_t default_max_crossings(const ValidatedSurface& s) {
  const std::size_t n = s.rectangles().size();
  return 16 * n * n;
}

// ------------------------------------------------------------ first return

namespace {

struct PatchRef {
  std::size_t rect;
  QN shift;  // x = u + shift for the domain parameter u
  QN y0, y1;
};

struct TracedPiece {
  ReturnPiece piece;
  std::vector<StripPatch> patches;
};

struct Fragment {
  QN u0, u1;
  std::size_t rect;
  QN y;
  QN shift;
  QN height;  // accumulated flow time
  std::size_t crossings;
  bool inclusive;  // arcs at exactly height y count as a return
  std::vector<PatchRef> patches;
};

struct Traced {
  QN length;
  std::vector<TracedPiece> pieces;
  std::vector<QN> breakpoints;
};

std::vector<StripPatch> realize(const std::vector<PatchRef>& refs, const QN& u0, const QN& u1) {
  std::vector<StripPatch> out;
  out.reserve(refs.size());
  for (const PatchRef& p : refs) out.push_back({p.rect, u0 + p.shift, u1 + p.shift, p.y0, p.y1});
  return out;
}

Traced trace_returns(const ValidatedSurface& s, const Transversal& t, std::optional<std::size_t> max_crossings) {
  check_transversal(s, t);
  const std::size_t budget = max_crossings.value_or(default_max_crossings(s));

  std::vector<QN> arc_offset;
  std::vector<std::vector<std::size_t>> arcs_in(s.rectangles().size());
  QN running(0);
  for (std::size_t i = 0; i < t.arcs.size(); ++i) {
    arc_offset.push_back(running);
    running += t.arcs[i].end - t.arcs[i].start;
    arcs_in[t.arcs[i].rect].push_back(i);
  }

  Traced out;
  out.length = running;
  auto singular = [&](std::size_t r, const QN& x, const QN& y) {
    auto v = s.vertex_at(r, x, y);
    return v && s.vertex_classes()[*v].singular();
  };
  // Vertices on the left side of r strictly between its corners, in [lo, hi].
  auto left_side_hits = [&](std::size_t r, const QN& lo, const QN& hi) {
    const auto segs = s.side(r, Side::Left);
    for (std::size_t i = 1; i < segs.size(); ++i) {
      if (segs[i].start >= lo && segs[i].start <= hi && singular(r, QN(0), segs[i].start)) return true;
    }
    return false;
  };

  std::vector<Fragment> work;
  for (std::size_t i = 0; i < t.arcs.size(); ++i) {
    const TransversalArc& a = t.arcs[i];
    for (const Incidence& inc : s.incidences()) {
      if (inc.rect != a.rect) continue;
      const Vec2 at = s.incidence_position(&inc - s.incidences().data());
      if (at.y == a.height && at.x >= a.start && at.x < a.end && singular(a.rect, at.x, at.y))
        out.breakpoints.push_back(arc_offset[i] + (at.x - a.start));
    }
    work.push_back({arc_offset[i], arc_offset[i] + (a.end - a.start), a.rect, a.height, a.start - arc_offset[i], QN(0),
                    0, false, {}});
  }

  while (!work.empty()) {
    Fragment f = std::move(work.back());
    work.pop_back();
    const std::size_t r = f.rect;
    const Rectangle& rect = s.rectangle(r);

    std::map<QN, std::vector<std::size_t>> levels;
    for (std::size_t ai : arcs_in[r]) {
      const QN& h = t.arcs[ai].height;
      if (h > f.y || (f.inclusive && h == f.y)) levels[h].push_back(ai);
    }

    std::vector<std::pair<QN, QN>> open{{f.u0, f.u1}};
    for (const auto& [level, arcs] : levels) {
      std::vector<std::pair<QN, QN>> still_open;
      for (const auto& [a, b] : open) {
        const QN xa = a + f.shift, xb = b + f.shift;
        std::vector<QN> cuts{xa, xb};
        for (std::size_t ai : arcs) {
          for (const QN& c : {t.arcs[ai].start, t.arcs[ai].end})
            if (c > xa && c < xb) cuts.push_back(c);
        }
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
        for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
          const QN& xs = cuts[k];
          const QN& xe = cuts[k + 1];
          const auto hit = std::find_if(arcs.begin(), arcs.end(), [&](std::size_t ai) {
            return t.arcs[ai].start <= xs && xs < t.arcs[ai].end;
          });
          if (hit == arcs.end()) {
            still_open.emplace_back(xs - f.shift, xe - f.shift);
            continue;
          }
          const TransversalArc& arc = t.arcs[*hit];
          const QN u0 = xs - f.shift, u1 = xe - f.shift;
          if (xs.is_zero() && left_side_hits(r, f.y, level)) out.breakpoints.push_back(u0);
          std::vector<PatchRef> patches = f.patches;
          if (level > f.y) patches.push_back({r, f.shift, f.y, level});
          out.pieces.push_back({{u0, u1, arc_offset[*hit] - arc.start + f.shift, f.height + (level - f.y)},
                                realize(patches, u0, u1)});
        }
      }
      open = std::move(still_open);
      if (open.empty()) break;
    }

    for (const auto& [a, b] : open) {
      const QN xa = a + f.shift, xb = b + f.shift;
      if (xa.is_zero() && left_side_hits(r, f.y, rect.height)) out.breakpoints.push_back(a);
      std::vector<PatchRef> patches = f.patches;
      patches.push_back({r, f.shift, f.y, rect.height});
      for (const SideSegment& seg : s.side(r, Side::Top)) {
        if (seg.end <= xa || seg.start >= xb) continue;
        if (seg.start >= xa && singular(r, seg.start, rect.height)) out.breakpoints.push_back(seg.start - f.shift);
        if (f.crossings + 1 > budget)
          throw Error(ErrorKind::NoReturn, "leaves from [" + a.str() + ", " + b.str() + ") do not return within " +
                                               std::to_string(budget) + " crossings");
        const BoundarySegment& below = s.partner(seg, r, Side::Top);
        const QN lo = std::max(xa, seg.start), hi = std::min(xb, seg.end);
        work.push_back({lo - f.shift, hi - f.shift, below.rect, QN(0), f.shift - seg.start + below.start,
                        f.height + (rect.height - f.y), f.crossings + 1, true, patches});
      }
    }
  }

  std::sort(out.breakpoints.begin(), out.breakpoints.end());
  out.breakpoints.erase(std::unique(out.breakpoints.begin(), out.breakpoints.end()), out.breakpoints.end());
  std::sort(out.pieces.begin(), out.pieces.end(),
            [](const TracedPiece& x, const TracedPiece& y) { return x.piece.start < y.piece.start; });

  // Adjacent pieces split only at a regular vertex move together.
  std::vector<TracedPiece> merged;
  for (TracedPiece& p : out.pieces) {
    if (!merged.empty()) {
      ReturnPiece& last = merged.back().piece;
      const bool singular_cut = std::binary_search(out.breakpoints.begin(), out.breakpoints.end(), p.piece.start);
      if (last.end == p.piece.start && last.image_offset == p.piece.image_offset &&
          last.return_height == p.piece.return_height && !singular_cut) {
        last.end = p.piece.end;
        auto& patches = merged.back().patches;
        patches.insert(patches.end(), p.patches.begin(), p.patches.end());
        continue;
      }
    }
    merged.push_back(std::move(p));
  }
  out.pieces = std::move(merged);
  return out;
}

// Joins patches that abut horizontally inside the same rectangle.
std::vector<StripPatch> tidy(std::vector<StripPatch> patches) {
  std::sort(patches.begin(), patches.end(), [](const StripPatch& a, const StripPatch& b) {
    if (a.rect != b.rect) return a.rect < b.rect;
    if (a.y0 != b.y0) return a.y0 < b.y0;
    if (a.y1 != b.y1) return a.y1 < b.y1;
    return a.x0 < b.x0;
  });
  std::vector<StripPatch> out;
  for (StripPatch& p : patches) {
    if (!out.empty()) {
      StripPatch& last = out.back();
      if (last.rect == p.rect && last.y0 == p.y0 && last.y1 == p.y1 && last.x1 == p.x0) {
        last.x1 = p.x1;
        continue;
      }
    }
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace

ReturnMap first_return(const ValidatedSurface& s, const Transversal& t, std::optional<std::size_t> max_crossings) {
  Traced traced = trace_returns(s, t, max_crossings);
  ReturnMap out;
  out.length = traced.length;
  out.breakpoints = std::move(traced.breakpoints);
  for (TracedPiece& p : traced.pieces) out.pieces.push_back(std::move(p.piece));
  return out;
}

QN StripDecomposition::area() const {
  QN total(0);
  for (const Strip& s : strips) total += s.width * s.height;
  return total;
}

StripDecomposition strip_decomposition(const ValidatedSurface& s, const Transversal& t,
                                       std::optional<std::size_t> max_crossings) {
  Traced traced = trace_returns(s, t, max_crossings);
  StripDecomposition out;
  for (TracedPiece& p : traced.pieces) {
    const ReturnPiece& r = p.piece;
    out.strips.push_back({r.end - r.start, r.return_height, r.start, r.end, r.start + r.image_offset,
                          r.end + r.image_offset, tidy(std::move(p.patches))});
  }
  const QN expected = invariants(s).area;
  if (out.area() < expected)
    throw Error(ErrorKind::InvalidTransversal, "some vertical leaves miss the transversal: strips cover area " +
                                                   out.area().str() + " of " + expected.str());
  if (out.area() != expected)
    throw Error(ErrorKind::InternalInconsistency,
                "strips cover area " + out.area().str() + " but the surface has area " + expected.str());
  return out;
}

}  // namespace pkflat
