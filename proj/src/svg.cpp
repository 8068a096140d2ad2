#include "pkflat/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace pkflat {

namespace {

constexpr std::array<const char*, 12> kPalette = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
                                                  "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#393b79", "#637939"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v + 0.0);
  return std::string(buf) == "-0" ? "0" : buf;
}

// World coordinates (y up) to SVG coordinates (y down).
class Canvas {
 public:
  Canvas(double min_x, double min_y, double max_x, double max_y) : min_x_(min_x), max_y_(max_y) {
    const double extent = std::max({max_x - min_x, max_y - min_y, 1e-9});
    scale_ = 480.0 / extent;
    width_ = 2 * kMargin + (max_x - min_x) * scale_;
    height_ = 2 * kMargin + (max_y - min_y) * scale_;
  }

  double x(double wx) const { return kMargin + (wx - min_x_) * scale_; }
  double y(double wy) const { return kMargin + (max_y_ - wy) * scale_; }
  double len(double w) const { return w * scale_; }

  std::string open() const {
    return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
           num(width_) + "\" height=\"" + num(height_) + "\" viewBox=\"0 0 " + num(width_) + " " + num(height_) + "\">\n";
  }

  std::string rect(double x0, double y0, double w, double h, const std::string& attrs) const {
    return "<rect x=\"" + num(x(x0)) + "\" y=\"" + num(y(y0 + h)) + "\" width=\"" + num(len(w)) + "\" height=\"" +
           num(len(h)) + "\" " + attrs + "/>\n";
  }

  std::string line(double x0, double y0, double x1, double y1, const std::string& attrs) const {
    return "<line x1=\"" + num(x(x0)) + "\" y1=\"" + num(y(y0)) + "\" x2=\"" + num(x(x1)) + "\" y2=\"" + num(y(y1)) +
           "\" " + attrs + "/>\n";
  }

  std::string circle(double cx, double cy, const std::string& attrs) const {
    return "<circle cx=\"" + num(x(cx)) + "\" cy=\"" + num(y(cy)) + "\" r=\"5\" " + attrs + "/>\n";
  }

  std::string text(double cx, double cy, const std::string& body) const {
    return "<text x=\"" + num(x(cx)) + "\" y=\"" + num(y(cy)) +
           "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">" + body + "</text>\n";
  }

 private:
  static constexpr double kMargin = 20.0;
  double min_x_, max_y_;
  double scale_ = 1, width_ = 0, height_ = 0;
};

struct Box {
  double x0, y0, x1, y1;
};

Box bounds(const ValidatedSurface& s, const std::vector<Vec2>& at) {
  Box b{0, 0, 0, 0};
  for (std::size_t r = 0; r < at.size(); ++r) {
    const double x = at[r].x.to_double(), y = at[r].y.to_double();
    const double w = s.rectangle(r).width.to_double(), h = s.rectangle(r).height.to_double();
    if (r == 0) b = {x, y, x + w, y + h};
    b = {std::min(b.x0, x), std::min(b.y0, y), std::max(b.x1, x + w), std::max(b.y1, y + h)};
  }
  return b;
}

std::array<double, 4> segment_ends(const ValidatedSurface& s, const std::vector<Vec2>& at, const BoundarySegment& g) {
  const double x = at[g.rect].x.to_double(), y = at[g.rect].y.to_double();
  const double w = s.rectangle(g.rect).width.to_double(), h = s.rectangle(g.rect).height.to_double();
  const double a = g.start.to_double(), b = g.end.to_double();
  switch (g.side) {
    case Side::Bottom: return {x + a, y, x + b, y};
    case Side::Top: return {x + a, y + h, x + b, y + h};
    case Side::Left: return {x, y + a, x, y + b};
    case Side::Right: return {x + w, y + a, x + w, y + b};
  }
  return {0, 0, 0, 0};
}

std::string outlines(const ValidatedSurface& s, const std::vector<Vec2>& at, const Canvas& c, const char* fill) {
  std::string out;
  for (std::size_t r = 0; r < at.size(); ++r) {
    const Rectangle& rect = s.rectangle(r);
    out += c.rect(at[r].x.to_double(), at[r].y.to_double(), rect.width.to_double(), rect.height.to_double(),
                  std::string("class=\"rect\" fill=\"") + fill + "\" stroke=\"#333333\" stroke-width=\"1\"");
    out += c.text(at[r].x.to_double() + rect.width.to_double() / 2, at[r].y.to_double() + rect.height.to_double() / 2,
                  rect.id);
  }
  return out;
}

}  // namespace

std::string render_surface_svg(const ValidatedSurface& s) {
  const std::vector<Vec2> at = drawing_positions(s);
  const Box b = bounds(s, at);
  const Canvas c(b.x0, b.y0, b.x1, b.y1);
  std::string out = c.open();
  out += outlines(s, at, c, "#f4f4f4");
  for (std::size_t g = 0; g < s.gluings().size(); ++g) {
    const std::string attrs = "class=\"glue\" data-gluing=\"" + std::to_string(g) + "\" stroke=\"" +
                              kPalette[g % kPalette.size()] + "\" stroke-width=\"3\"";
    for (const BoundarySegment* seg : {&s.gluings()[g].from, &s.gluings()[g].to}) {
      const auto e = segment_ends(s, at, *seg);
      out += c.line(e[0], e[1], e[2], e[3], attrs);
    }
  }
  for (std::size_t v = 0; v < s.vertex_classes().size(); ++v) {
    const VertexClass& cls = s.vertex_classes()[v];
    if (!cls.singular()) continue;
    std::vector<Vec2> drawn;
    for (std::size_t i = 0; i < cls.members.size(); ++i) {
      const std::size_t inc = cls.members[i];
      const Vec2 p = at[s.incidences()[inc].rect] + s.incidence_position(inc);
      if (std::find(drawn.begin(), drawn.end(), p) != drawn.end()) continue;
      drawn.push_back(p);
      const std::string attrs = i == 0 ? "class=\"singular\" fill=\"#000000\""
                                       : "class=\"singular-copy\" fill=\"none\" stroke=\"#000000\"";
      out += c.circle(p.x.to_double(), p.y.to_double(), attrs + " data-class=\"" + std::to_string(v) + "\"");
    }
  }
  out += "</svg>\n";
  return out;
}

std::string render_strips_svg(const ValidatedSurface& s, const StripDecomposition& strips) {
  const std::vector<Vec2> at = drawing_positions(s);
  const Box b = bounds(s, at);
  const Canvas c(b.x0, b.y0, b.x1, b.y1);
  std::string out = c.open();
  out += outlines(s, at, c, "#ffffff");
  for (std::size_t i = 0; i < strips.strips.size(); ++i) {
    out += "<g class=\"strip\" data-strip=\"" + std::to_string(i) + "\" fill=\"" + kPalette[i % kPalette.size()] +
           "\" fill-opacity=\"0.35\" stroke=\"none\">\n";
    for (const StripPatch& p : strips.strips[i].patches) {
      out += c.rect(at[p.rect].x.to_double() + p.x0.to_double(), at[p.rect].y.to_double() + p.y0.to_double(),
                    (p.x1 - p.x0).to_double(), (p.y1 - p.y0).to_double(), "class=\"patch\"");
    }
    out += "</g>\n";
  }
  out += "</svg>\n";
  return out;
}

std::string render_cover_svg(const ValidatedSurface& s, const CoveringDescription& cover) {
  const std::vector<Vec2>& at = cover.placement;
  Box b = bounds(s, at);
  const double h = cover.lattice.h.to_double(), v = cover.lattice.v.to_double();
  b = {std::min(b.x0, 0.0), std::min(b.y0, 0.0), std::max(b.x1, h), std::max(b.y1, v)};
  const Canvas c(b.x0, b.y0, b.x1, b.y1);
  std::string out = c.open();
  out += c.rect(0, 0, h, v, "class=\"fundamental-domain\" fill=\"#ffd54f\" fill-opacity=\"0.5\" stroke=\"none\"");
  out += outlines(s, at, c, "none");
  const std::string grid = "class=\"lattice\" stroke=\"#888888\" stroke-dasharray=\"4 3\"";
  for (double k = std::ceil(b.x0 / h); k * h <= b.x1 + 1e-12; k += 1) out += c.line(k * h, b.y0, k * h, b.y1, grid);
  for (double k = std::ceil(b.y0 / v); k * v <= b.y1 + 1e-12; k += 1) out += c.line(b.x0, k * v, b.x1, k * v, grid);
  out += c.circle(0, 0, "class=\"base-point\" fill=\"#d62728\"");
  out += c.text((b.x0 + b.x1) / 2, b.y0, "degree " + cover.degree.get_str());
  out += "</svg>\n";
  return out;
}

}  // namespace pkflat
