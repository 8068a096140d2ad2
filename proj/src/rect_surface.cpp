#include "pkflat/rect_surface.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

namespace pkflat {

std::string_view to_string(Side side) {
  switch (side) {
    case Side::Bottom: return "bottom";
    case Side::Right: return "right";
    case Side::Top: return "top";
    case Side::Left: return "left";
  }
  return "?";
}

bool operator<(const PointKey& a, const PointKey& b) {
  if (a.vertex != b.vertex) return a.vertex;
  if (a.index != b.index) return a.index < b.index;
  if (a.x != b.x) return a.x < b.x;
  return a.y < b.y;
}

namespace {

bool horizontal_side(Side s) { return s == Side::Top || s == Side::Bottom; }

std::string describe(const RectangleComplex& raw, const BoundarySegment& seg) {
  const std::string id = seg.rect < raw.rectangles.size() ? raw.rectangles[seg.rect].id : "#" + std::to_string(seg.rect);
  return id + " " + std::string(to_string(seg.side)) + " [" + seg.start.str() + ", " + seg.end.str() + "]";
}

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t i) {
    while (parent_[i] != i) i = parent_[i] = parent_[parent_[i]];
    return i;
  }
  void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

// ------------------------------------------------------------ side queries

std::span<const SideSegment> ValidatedSurface::side(std::size_t rect, Side s) const {
  return sides_.at(rect)[static_cast<int>(s)];
}

QN ValidatedSurface::side_length(std::size_t rect, Side s) const {
  const Rectangle& r = rectangles_.at(rect);
  return horizontal_side(s) ? r.width : r.height;
}

const SideSegment& ValidatedSurface::segment_starting_at(std::size_t rect, Side s, const QN& offset) const {
  for (const SideSegment& seg : side(rect, s))
    if (seg.start == offset) return seg;
  throw Error(ErrorKind::InternalInconsistency, "no segment starts at " + offset.str());
}

const SideSegment& ValidatedSurface::segment_ending_at(std::size_t rect, Side s, const QN& offset) const {
  for (const SideSegment& seg : side(rect, s))
    if (seg.end == offset) return seg;
  throw Error(ErrorKind::InternalInconsistency, "no segment ends at " + offset.str());
}

const SideSegment& ValidatedSurface::segment_containing(std::size_t rect, Side s, const QN& offset) const {
  for (const SideSegment& seg : side(rect, s))
    if (seg.start <= offset && offset < seg.end) return seg;
  throw Error(ErrorKind::InternalInconsistency, "offset " + offset.str() + " outside side");
}

const BoundarySegment& ValidatedSurface::partner(const SideSegment& seg, std::size_t rect, Side s) const {
  const Gluing& g = gluings_.at(seg.gluing);
  if (g.from.rect == rect && g.from.side == s && g.from.start == seg.start) return g.to;
  return g.from;
}

std::optional<std::size_t> ValidatedSurface::incidence_at(std::size_t rect, const QN& x, const QN& y) const {
  const Rectangle& r = rectangles_.at(rect);
  SectorKind kind;
  QN offset;
  const bool left = x.is_zero(), right = x == r.width, bottom = y.is_zero(), top = y == r.height;
  if (bottom && left) kind = SectorKind::BottomLeft;
  else if (bottom && right) kind = SectorKind::BottomRight;
  else if (top && right) kind = SectorKind::TopRight;
  else if (top && left) kind = SectorKind::TopLeft;
  else if (bottom) kind = SectorKind::Bottom, offset = x;
  else if (top) kind = SectorKind::Top, offset = x;
  else if (left) kind = SectorKind::Left, offset = y;
  else if (right) kind = SectorKind::Right, offset = y;
  else return std::nullopt;
  for (std::size_t i : incidences_by_rect_.at(rect)) {
    const Incidence& inc = incidences_[i];
    if (inc.kind == kind && inc.offset == offset) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> ValidatedSurface::vertex_at(std::size_t rect, const QN& x, const QN& y) const {
  if (auto inc = incidence_at(rect, x, y)) return class_of_.at(*inc);
  return std::nullopt;
}

Vec2 ValidatedSurface::incidence_position(std::size_t incidence) const {
  const Incidence& inc = incidences_.at(incidence);
  const Rectangle& r = rectangles_.at(inc.rect);
  switch (inc.kind) {
    case SectorKind::BottomLeft: return {QN(0), QN(0)};
    case SectorKind::BottomRight: return {r.width, QN(0)};
    case SectorKind::TopRight: return {r.width, r.height};
    case SectorKind::TopLeft: return {QN(0), r.height};
    case SectorKind::Bottom: return {inc.offset, QN(0)};
    case SectorKind::Right: return {r.width, inc.offset};
    case SectorKind::Top: return {inc.offset, r.height};
    case SectorKind::Left: return {QN(0), inc.offset};
  }
  return {};
}

void ValidatedSurface::check_point(const SurfacePoint& p) const {
  if (p.rect >= rectangles_.size())
    throw Error(ErrorKind::PointOutsideRectangle, "no rectangle #" + std::to_string(p.rect));
  const Rectangle& r = rectangles_[p.rect];
  if (p.x.sign() < 0 || p.y.sign() < 0 || p.x > r.width || p.y > r.height)
    throw Error(ErrorKind::PointOutsideRectangle,
                "(" + p.x.str() + ", " + p.y.str() + ") is outside rectangle " + r.id);
}

PointKey ValidatedSurface::canonical(const SurfacePoint& p) const {
  check_point(p);
  if (auto v = vertex_at(p.rect, p.x, p.y)) return {true, *v, QN(0), QN(0)};
  const Rectangle& r = rectangles_[p.rect];
  Side s;
  QN offset;
  if (p.y.is_zero()) s = Side::Bottom, offset = p.x;
  else if (p.y == r.height) s = Side::Top, offset = p.x;
  else if (p.x.is_zero()) s = Side::Left, offset = p.y;
  else if (p.x == r.width) s = Side::Right, offset = p.y;
  else return {false, p.rect, p.x, p.y};

  const SideSegment& seg = segment_containing(p.rect, s, offset);
  const BoundarySegment& other = partner(seg, p.rect, s);
  const QN moved = offset - seg.start + other.start;
  const Rectangle& o = rectangles_[other.rect];
  PointKey mine{false, p.rect, p.x, p.y};
  PointKey theirs{false, other.rect, QN(0), QN(0)};
  switch (other.side) {
    case Side::Bottom: theirs.x = moved; theirs.y = QN(0); break;
    case Side::Top: theirs.x = moved; theirs.y = o.height; break;
    case Side::Left: theirs.x = QN(0); theirs.y = moved; break;
    case Side::Right: theirs.x = o.width; theirs.y = moved; break;
  }
  return theirs < mine ? theirs : mine;
}

// -------------------------------------------------------------- validation

ValidatedSurface validate(RectangleComplex raw) {
  if (raw.field != 0) check_field(raw.field);
  if (raw.rectangles.empty()) throw Error(ErrorKind::InvalidRectangle, "surface has no rectangles");

  auto check_number = [&](const QN& value) {
    if (value.field() != 0 && value.field() != raw.field)
      throw Error(ErrorKind::MixedFields, value.str() + " does not belong to the declared field");
  };

  for (const Rectangle& r : raw.rectangles) {
    check_number(r.width);
    check_number(r.height);
    if (r.width.sign() <= 0 || r.height.sign() <= 0)
      throw Error(ErrorKind::InvalidRectangle, "rectangle " + r.id + " must have positive width and height");
  }

  const std::size_t n = raw.rectangles.size();
  std::vector<Gluing> gluings;
  gluings.reserve(raw.gluings.size());
  for (Gluing g : raw.gluings) {
    for (const BoundarySegment* seg : {&g.from, &g.to}) {
      if (seg->rect >= n) throw Error(ErrorKind::UnknownRectangle, "gluing refers to rectangle #" + std::to_string(seg->rect));
      check_number(seg->start);
      check_number(seg->end);
      const Rectangle& r = raw.rectangles[seg->rect];
      const QN& length = horizontal_side(seg->side) ? r.width : r.height;
      if (seg->start.sign() < 0 || seg->start >= seg->end || seg->end > length)
        throw Error(ErrorKind::InvalidSegment, describe(raw, *seg) + " is not a proper subsegment of its side");
    }
    if (g.from.side == Side::Bottom || g.from.side == Side::Left) std::swap(g.from, g.to);
    const bool horizontal = g.from.side == Side::Top && g.to.side == Side::Bottom;
    const bool vertical = g.from.side == Side::Right && g.to.side == Side::Left;
    if (!horizontal && !vertical)
      throw Error(ErrorKind::BadOrientation,
                  describe(raw, g.from) + " cannot be glued to " + describe(raw, g.to) + " by a translation");
    if (g.from.length() != g.to.length())
      throw Error(ErrorKind::LengthMismatch, describe(raw, g.from) + " has length " + g.from.length().str() + " but " +
                                                 describe(raw, g.to) + " has length " + g.to.length().str());
    gluings.push_back(std::move(g));
  }

  ValidatedSurface s;
  s.field_ = raw.field;
  s.sides_.resize(n);
  for (std::size_t gi = 0; gi < gluings.size(); ++gi) {
    for (const BoundarySegment* seg : {&gluings[gi].from, &gluings[gi].to})
      s.sides_[seg->rect][static_cast<int>(seg->side)].push_back({seg->start, seg->end, gi});
  }
  for (std::size_t r = 0; r < n; ++r) {
    for (Side side : {Side::Bottom, Side::Right, Side::Top, Side::Left}) {
      auto& segs = s.sides_[r][static_cast<int>(side)];
      std::sort(segs.begin(), segs.end(), [](const SideSegment& a, const SideSegment& b) { return a.start < b.start; });
      const Rectangle& rect = raw.rectangles[r];
      const QN length = horizontal_side(side) ? rect.width : rect.height;
      const std::string where = rect.id + " " + std::string(to_string(side));
      QN covered(0);
      for (const SideSegment& seg : segs) {
        if (seg.start < covered)
          throw Error(ErrorKind::Overlap, where + ": segments overlap on [" + seg.start.str() + ", " +
                                              std::min(covered, seg.end).str() + "]");
        if (seg.start > covered)
          throw Error(ErrorKind::Gap, where + ": [" + covered.str() + ", " + seg.start.str() + "] is not glued");
        covered = seg.end;
      }
      if (covered != length)
        throw Error(ErrorKind::Gap, where + ": [" + covered.str() + ", " + length.str() + "] is not glued");
    }
  }

  DisjointSets components(n);
  for (const Gluing& g : gluings) components.unite(g.from.rect, g.to.rect);
  for (std::size_t r = 1; r < n; ++r) {
    if (components.find(r) != components.find(0))
      throw Error(ErrorKind::Disconnected,
                  "rectangle " + raw.rectangles[r].id + " is not connected to " + raw.rectangles[0].id);
  }

  s.rectangles_ = std::move(raw.rectangles);
  s.gluings_ = std::move(gluings);

  s.incidences_by_rect_.resize(n);
  for (std::size_t r = 0; r < n; ++r) {
    auto add = [&](SectorKind kind, QN offset) {
      s.incidences_by_rect_[r].push_back(s.incidences_.size());
      s.incidences_.push_back({r, kind, std::move(offset)});
    };
    for (SectorKind corner : {SectorKind::BottomLeft, SectorKind::BottomRight, SectorKind::TopRight, SectorKind::TopLeft})
      add(corner, QN(0));
    const std::array<std::pair<Side, SectorKind>, 4> side_kinds{{{Side::Bottom, SectorKind::Bottom},
                                                                 {Side::Right, SectorKind::Right},
                                                                 {Side::Top, SectorKind::Top},
                                                                 {Side::Left, SectorKind::Left}}};
    for (auto [side, kind] : side_kinds) {
      const auto& segs = s.sides_[r][static_cast<int>(side)];
      for (std::size_t i = 1; i < segs.size(); ++i) add(kind, segs[i].start);
    }
  }

  s.classes_ = vertex_census(s);
  s.class_of_.assign(s.incidences_.size(), 0);
  for (std::size_t c = 0; c < s.classes_.size(); ++c)
    for (std::size_t m : s.classes_[c].members) s.class_of_[m] = c;
  return s;
}

// ------------------------------------------------------------ vertex walk

namespace {

// Sector met next when turning counterclockwise out of `index` across the
// glued segment along its counterclockwise boundary ray.
std::size_t next_sector(const ValidatedSurface& s, std::size_t index) {
  const Incidence& inc = s.incidences()[index];
  const Rectangle& r = s.rectangle(inc.rect);
  std::optional<std::size_t> next;
  switch (inc.kind) {
    case SectorKind::BottomLeft:
    case SectorKind::Left: {  // ray points north along the left side
      const QN y = inc.kind == SectorKind::Left ? inc.offset : QN(0);
      const BoundarySegment& p = s.partner(s.segment_starting_at(inc.rect, Side::Left, y), inc.rect, Side::Left);
      next = s.incidence_at(p.rect, s.rectangle(p.rect).width, p.start);
      break;
    }
    case SectorKind::BottomRight:
    case SectorKind::Bottom: {  // west along the bottom
      const QN x = inc.kind == SectorKind::Bottom ? inc.offset : r.width;
      const BoundarySegment& p = s.partner(s.segment_ending_at(inc.rect, Side::Bottom, x), inc.rect, Side::Bottom);
      next = s.incidence_at(p.rect, p.end, s.rectangle(p.rect).height);
      break;
    }
    case SectorKind::TopRight:
    case SectorKind::Right: {  // south along the right side
      const QN y = inc.kind == SectorKind::Right ? inc.offset : r.height;
      const BoundarySegment& p = s.partner(s.segment_ending_at(inc.rect, Side::Right, y), inc.rect, Side::Right);
      next = s.incidence_at(p.rect, QN(0), p.end);
      break;
    }
    case SectorKind::TopLeft:
    case SectorKind::Top: {  // east along the top
      const QN x = inc.kind == SectorKind::Top ? inc.offset : QN(0);
      const BoundarySegment& p = s.partner(s.segment_starting_at(inc.rect, Side::Top, x), inc.rect, Side::Top);
      next = s.incidence_at(p.rect, p.start, QN(0));
      break;
    }
  }
  if (!next) throw Error(ErrorKind::InternalInconsistency, "vertex walk left the incidence set");
  return *next;
}

}  // namespace

std::vector<VertexClass> vertex_census(const ValidatedSurface& s) {
  const std::size_t count = s.incidences().size();
  std::vector<bool> seen(count, false);
  std::vector<VertexClass> classes;
  for (std::size_t start = 0; start < count; ++start) {
    if (seen[start]) continue;
    VertexClass vc;
    int quarters = 0;
    std::size_t current = start;
    do {
      if (seen[current]) throw Error(ErrorKind::InternalInconsistency, "vertex walk does not close up");
      seen[current] = true;
      vc.members.push_back(current);
      quarters += s.incidences()[current].quarter_turns();
      current = next_sector(s, current);
    } while (current != start);
    if (quarters % 4 != 0)
      throw Error(ErrorKind::InternalInconsistency, "cone angle is not a multiple of 2 pi");
    vc.cone_multiple = quarters / 4;
    classes.push_back(std::move(vc));
  }
  return classes;
}

// -------------------------------------------------------------- invariants

SurfaceInvariants invariants(const ValidatedSurface& s) {
  SurfaceInvariants out;
  const int v = static_cast<int>(s.vertex_classes().size());
  const int e = static_cast<int>(s.gluings().size());
  const int f = static_cast<int>(s.rectangles().size());
  out.euler = v - e + f;
  if (out.euler % 2 != 0 || out.euler > 2)
    throw Error(ErrorKind::InternalInconsistency, "Euler characteristic " + std::to_string(out.euler) + " is not that of a closed orientable surface");
  out.genus = (2 - out.euler) / 2;

  int excess = 0;
  for (const VertexClass& vc : s.vertex_classes()) {
    excess += vc.cone_multiple - 1;
    if (vc.singular()) out.singular_profile.push_back(vc.cone_multiple);
  }
  std::sort(out.singular_profile.begin(), out.singular_profile.end());
  if (excess != 2 * out.genus - 2)
    throw Error(ErrorKind::InternalInconsistency, "cone excess " + std::to_string(excess) +
                                                      " disagrees with genus " + std::to_string(out.genus));

  for (const Rectangle& r : s.rectangles()) out.area += r.width * r.height;
  return out;
}

// ----------------------------------------------------------------- periods

std::vector<QN> PeriodData::horizontal() const {
  std::vector<QN> out;
  out.reserve(generators.size());
  for (const Period& p : generators) out.push_back(p.h);
  return out;
}

std::vector<QN> PeriodData::vertical() const {
  std::vector<QN> out;
  out.reserve(generators.size());
  for (const Period& p : generators) out.push_back(p.v);
  return out;
}

PeriodData period_group(const ValidatedSurface& s, std::size_t root) {
  struct Edge {
    std::size_t tail, head;
    Period holonomy;
  };
  std::vector<Edge> edges;
  for (const Gluing& g : s.gluings()) {
    const BoundarySegment& seg = g.from;
    const Rectangle& r = s.rectangle(seg.rect);
    if (g.horizontal()) {
      edges.push_back({*s.vertex_at(seg.rect, seg.start, r.height), *s.vertex_at(seg.rect, seg.end, r.height),
                       {seg.length(), QN(0)}});
    } else {
      edges.push_back({*s.vertex_at(seg.rect, r.width, seg.start), *s.vertex_at(seg.rect, r.width, seg.end),
                       {QN(0), seg.length()}});
    }
  }

  const std::size_t vertices = s.vertex_classes().size();
  std::vector<std::vector<std::size_t>> adjacent(vertices);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    adjacent[edges[i].tail].push_back(i);
    adjacent[edges[i].head].push_back(i);
  }

  std::vector<std::optional<Period>> potential(vertices);
  std::vector<bool> tree_edge(edges.size(), false);
  potential.at(root) = Period{QN(0), QN(0)};
  std::queue<std::size_t> frontier;
  frontier.push(root);
  while (!frontier.empty()) {
    const std::size_t u = frontier.front();
    frontier.pop();
    for (std::size_t ei : adjacent[u]) {
      const Edge& e = edges[ei];
      const bool forward = e.tail == u;
      const std::size_t w = forward ? e.head : e.tail;
      if (potential[w]) continue;
      const Period& pu = *potential[u];
      potential[w] = forward ? Period{pu.h + e.holonomy.h, pu.v + e.holonomy.v}
                             : Period{pu.h - e.holonomy.h, pu.v - e.holonomy.v};
      tree_edge[ei] = true;
      frontier.push(w);
    }
  }

  PeriodData out;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (tree_edge[i]) continue;
    const Edge& e = edges[i];
    const Period& pt = *potential[e.tail];
    const Period& ph = *potential[e.head];
    out.generators.push_back({pt.h + e.holonomy.h - ph.h, pt.v + e.holonomy.v - ph.v});
  }
  return out;
}

// -------------------------------------------------------------- placement

std::vector<Vec2> development(const ValidatedSurface& s, std::size_t root) {
  const std::size_t n = s.rectangles().size();
  std::vector<std::vector<std::size_t>> by_rect(n);
  for (std::size_t i = 0; i < s.gluings().size(); ++i) {
    by_rect[s.gluings()[i].from.rect].push_back(i);
    by_rect[s.gluings()[i].to.rect].push_back(i);
  }
  std::vector<std::optional<Vec2>> pos(n);
  pos.at(root) = Vec2{QN(0), QN(0)};
  std::queue<std::size_t> frontier;
  frontier.push(root);
  while (!frontier.empty()) {
    const std::size_t a = frontier.front();
    frontier.pop();
    for (std::size_t gi : by_rect[a]) {
      const Gluing& g = s.gluings()[gi];
      const Rectangle& lower = s.rectangle(g.from.rect);
      // Offset of the `to` rectangle relative to the `from` rectangle.
      const Vec2 step = g.horizontal() ? Vec2{g.from.start - g.to.start, lower.height}
                                       : Vec2{lower.width, g.from.start - g.to.start};
      if (g.from.rect == a && !pos[g.to.rect]) {
        pos[g.to.rect] = *pos[a] + step;
        frontier.push(g.to.rect);
      } else if (g.to.rect == a && !pos[g.from.rect]) {
        pos[g.from.rect] = *pos[a] - step;
        frontier.push(g.from.rect);
      }
    }
  }
  std::vector<Vec2> out;
  out.reserve(n);
  for (auto& p : pos) out.push_back(*p);
  return out;
}

std::vector<Vec2> drawing_positions(const ValidatedSurface& s) {
  const auto& rects = s.rectangles();
  if (std::all_of(rects.begin(), rects.end(), [](const Rectangle& r) { return r.placement.has_value(); })) {
    std::vector<Vec2> out;
    for (const Rectangle& r : rects) out.push_back(*r.placement);
    return out;
  }
  return development(s);
}

}  // namespace pkflat
