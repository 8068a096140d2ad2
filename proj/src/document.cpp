#include "pkflat/document.hpp"

#include <charconv>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <sstream>

namespace pkflat {

namespace {

struct Token {
  std::string_view text;
  std::size_t column = 0;
};

struct Line {
  std::size_t number = 0;
  std::size_t indent = 0;  // column of the first token
  std::string_view body;   // without comment and surrounding blanks
  std::vector<Token> tokens;
};

bool blank(char c) { return c == ' ' || c == '\t' || c == '\r'; }

std::vector<Line> lex(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  while (!text.empty() || number == 0) {
    ++number;
    const auto nl = text.find('\n');
    std::string_view raw = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);

    Line line{number, 0, {}, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && blank(raw[i])) ++i;
      const std::size_t begin = i;
      while (i < raw.size() && !blank(raw[i])) ++i;
      if (i > begin) line.tokens.push_back({raw.substr(begin, i - begin), begin + 1});
    }
    if (!line.tokens.empty()) {
      line.indent = line.tokens.front().column;
      const Token& last = line.tokens.back();
      line.body = raw.substr(line.indent - 1, last.column - line.indent + last.text.size());
      out.push_back(std::move(line));
    }
    if (nl == std::string_view::npos) break;
  }
  return out;
}

[[noreturn]] void fail(const Line& line, std::size_t column, const std::string& message) {
  throw Error(ErrorKind::ParseError, message, line.number, column);
}

QN number(const Token& t, const Line& line, long field) {
  try {
    return QN::parse(t.text, field);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::ParseError && e.kind() != ErrorKind::DivisionByZero) throw;
    std::string why = e.what();
    why = why.substr(why.find(": ") + 2);
    fail(line, t.column, "bad number literal: " + why);
  }
}

long integer(const Token& t, const Line& line) {
  long value = 0;
  const char* first = t.text.data();
  const char* last = first + t.text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) fail(line, t.column, "expected an integer, got '" + std::string(t.text) + "'");
  return value;
}

struct Header {
  std::string name;
  std::vector<Token> args;
};

std::optional<Header> header(const Line& line) {
  if (line.body.front() != '[') return std::nullopt;
  if (line.body.back() != ']') fail(line, line.indent + line.body.size(), "expected ']' closing the section header");
  Header h;
  std::string_view inner = line.body.substr(1, line.body.size() - 2);
  std::size_t i = 0;
  while (i < inner.size()) {
    while (i < inner.size() && blank(inner[i])) ++i;
    const std::size_t begin = i;
    while (i < inner.size() && !blank(inner[i])) ++i;
    if (i > begin) h.args.push_back({inner.substr(begin, i - begin), line.indent + 1 + begin});
  }
  if (h.args.empty()) fail(line, line.indent, "empty section header");
  h.name = std::string(h.args.front().text);
  h.args.erase(h.args.begin());
  return h;
}

// `key = v1 v2 ...`; returns the value tokens after checking the count.
std::span<const Token> values(const Line& line, std::size_t count) {
  if (line.tokens.size() < 2 || line.tokens[1].text != "=") {
    const std::size_t col = line.tokens.size() < 2 ? line.indent + line.body.size() : line.tokens[1].column;
    fail(line, col, "expected '=' after '" + std::string(line.tokens[0].text) + "'");
  }
  if (line.tokens.size() != 2 + count) {
    const std::size_t col = line.tokens.size() < 2 + count ? line.indent + line.body.size() : line.tokens[2 + count].column;
    fail(line, col, "'" + std::string(line.tokens[0].text) + "' takes " + std::to_string(count) + " value(s)");
  }
  return std::span<const Token>(line.tokens).subspan(2);
}

// Tracks keys already given in the current section.
class KeySet {
 public:
  void reset() { seen_.clear(); }
  void add(const Line& line, std::initializer_list<std::string_view> allowed) {
    const Token& key = line.tokens.front();
    bool known = false;
    for (std::string_view a : allowed) known = known || a == key.text;
    if (!known) fail(line, key.column, "unknown key '" + std::string(key.text) + "'");
    if (!seen_.emplace(std::string(key.text)).second)
      fail(line, key.column, "duplicate key '" + std::string(key.text) + "'");
  }
  bool has(const std::string& key) const { return seen_.count(key) != 0; }

 private:
  std::set<std::string> seen_;
};

long parse_field_line(const Line& line, KeySet& keys) {
  keys.add(line, {"d"});
  const Token& t = values(line, 1)[0];
  const long d = integer(t, line);
  try {
    check_field(d);
  } catch (const Error& e) {
    throw Error(ErrorKind::FieldError, "d = " + std::to_string(d) + " is not a squarefree integer >= 2", line.number,
                t.column);
  }
  return d;
}

std::optional<Side> side_named(std::string_view name) {
  for (Side s : {Side::Bottom, Side::Right, Side::Top, Side::Left})
    if (to_string(s) == name) return s;
  return std::nullopt;
}

std::string vec(const Vec2& v) { return v.x.str() + " " + v.y.str(); }

}  // namespace

RectangleComplex parse_surface(std::string_view text) {
  enum class Section { None, Field, Rect, Glue };
  RectangleComplex out;
  Section section = Section::None;
  bool field_done = false, body_started = false;
  std::map<std::string, std::size_t, std::less<>> ids;
  std::vector<const Line*> glue_lines;
  KeySet keys;
  const Line* rect_header = nullptr;

  const std::vector<Line> lines = lex(text);
  auto close_rect = [&]() {
    if (section != Section::Rect) return;
    for (const char* key : {"width", "height"}) {
      if (!keys.has(key)) fail(*rect_header, rect_header->indent, "rectangle " + out.rectangles.back().id + " has no " + key);
    }
  };

  for (const Line& line : lines) {
    if (auto h = header(line)) {
      close_rect();
      keys.reset();
      if (h->name == "field") {
        if (field_done || body_started) fail(line, line.indent, "[field] must appear once, before any other section");
        if (!h->args.empty()) fail(line, h->args[0].column, "[field] takes no arguments");
        section = Section::Field;
        field_done = true;
      } else if (h->name == "rect") {
        if (h->args.size() != 1) fail(line, line.indent, "expected '[rect <id>]'");
        const std::string id(h->args[0].text);
        if (!ids.emplace(id, out.rectangles.size()).second)
          fail(line, h->args[0].column, "duplicate rectangle id '" + id + "'");
        out.rectangles.push_back({id, QN(0), QN(0), std::nullopt});
        section = Section::Rect;
        rect_header = &line;
        body_started = true;
      } else if (h->name == "glue") {
        if (!h->args.empty()) fail(line, h->args[0].column, "[glue] takes no arguments");
        section = Section::Glue;
        body_started = true;
      } else {
        fail(line, line.indent + 1, "unknown section '" + h->name + "'");
      }
      continue;
    }
    switch (section) {
      case Section::None:
        fail(line, line.indent, "expected a section header");
      case Section::Field:
        out.field = parse_field_line(line, keys);
        break;
      case Section::Rect: {
        keys.add(line, {"width", "height", "at"});
        Rectangle& r = out.rectangles.back();
        const std::string_view key = line.tokens[0].text;
        if (key == "at") {
          const auto v = values(line, 2);
          r.placement = Vec2{number(v[0], line, out.field), number(v[1], line, out.field)};
        } else {
          const QN x = number(values(line, 1)[0], line, out.field);
          (key == "width" ? r.width : r.height) = x;
        }
        break;
      }
      case Section::Glue:
        glue_lines.push_back(&line);
        break;
    }
  }
  close_rect();

  for (const Line* line : glue_lines) {
    const auto& t = line->tokens;
    if (t.size() != 9 || t[4].text != "=")
      fail(*line, line->indent, "expected '<id> <side> <start> <end> = <id> <side> <start> <end>'");
    auto segment = [&](std::size_t at) {
      const auto it = ids.find(t[at].text);
      if (it == ids.end())
        throw Error(ErrorKind::UnknownRectangle, "no rectangle '" + std::string(t[at].text) + "'", line->number,
                    t[at].column);
      const auto side = side_named(t[at + 1].text);
      if (!side) fail(*line, t[at + 1].column, "expected bottom, right, top or left");
      return BoundarySegment{it->second, *side, number(t[at + 2], *line, out.field), number(t[at + 3], *line, out.field)};
    };
    out.gluings.push_back({segment(0), segment(5)});
  }
  return out;
}

std::string serialize_surface(const RectangleComplex& c) {
  std::ostringstream out;
  if (c.field != 0) out << "[field]\nd = " << c.field << "\n\n";
  for (const Rectangle& r : c.rectangles) {
    out << "[rect " << r.id << "]\nwidth = " << r.width.str() << "\nheight = " << r.height.str() << "\n";
    if (r.placement) out << "at = " << vec(*r.placement) << "\n";
    out << "\n";
  }
  out << "[glue]\n";
  auto segment = [&](const BoundarySegment& s) {
    return c.rectangles.at(s.rect).id + " " + std::string(to_string(s.side)) + " " + s.start.str() + " " + s.end.str();
  };
  for (const Gluing& g : c.gluings) out << segment(g.from) << " = " << segment(g.to) << "\n";
  return out.str();
}

BranchDocument parse_branch(std::string_view text) {
  enum class Section { None, Field, Torus, Curve };
  BranchDocument out;
  Section section = Section::None;
  bool field_done = false, body_started = false;
  KeySet keys;
  const Line* section_header = nullptr;

  auto close = [&]() {
    if (section == Section::Torus) {
      for (const char* key : {"z1", "z2", "w1", "w2"})
        if (!keys.has(key)) fail(*section_header, section_header->indent, std::string("[torus] has no ") + key);
    } else if (section == Section::Curve) {
      for (const char* key : {"dir", "order"})
        if (!keys.has(key)) fail(*section_header, section_header->indent, std::string("[curve] has no ") + key);
    }
  };

  const std::vector<Line> lines = lex(text);
  bool torus_done = false;
  for (const Line& line : lines) {
    if (auto h = header(line)) {
      close();
      keys.reset();
      if (!h->args.empty()) fail(line, h->args[0].column, "[" + h->name + "] takes no arguments");
      section_header = &line;
      if (h->name == "field") {
        if (field_done || body_started) fail(line, line.indent, "[field] must appear once, before any other section");
        section = Section::Field;
        field_done = true;
      } else if (h->name == "torus") {
        if (torus_done) fail(line, line.indent, "duplicate [torus] section");
        section = Section::Torus;
        torus_done = body_started = true;
      } else if (h->name == "curve") {
        out.curves.push_back({0, 1, {QN(0), QN(0)}, 2});
        section = Section::Curve;
        body_started = true;
      } else {
        fail(line, line.indent + 1, "unknown section '" + h->name + "'");
      }
      continue;
    }
    switch (section) {
      case Section::None:
        fail(line, line.indent, "expected a section header");
      case Section::Field:
        out.field = parse_field_line(line, keys);
        break;
      case Section::Torus: {
        keys.add(line, {"z1", "z2", "w1", "w2"});
        const auto v = values(line, 2);
        const Vec2 g{number(v[0], line, out.field), number(v[1], line, out.field)};
        const std::string_view key = line.tokens[0].text;
        (key == "z1"   ? out.torus.first.w1
         : key == "z2" ? out.torus.first.w2
         : key == "w1" ? out.torus.second.w1
                       : out.torus.second.w2) = g;
        break;
      }
      case Section::Curve: {
        keys.add(line, {"dir", "offset", "order"});
        BranchCurve& c = out.curves.back();
        const std::string_view key = line.tokens[0].text;
        if (key == "dir") {
          const auto v = values(line, 2);
          c.p = integer(v[0], line);
          c.q = integer(v[1], line);
        } else if (key == "offset") {
          const auto v = values(line, 2);
          c.offset = {number(v[0], line, out.field), number(v[1], line, out.field)};
        } else {
          c.order = integer(values(line, 1)[0], line);
        }
        break;
      }
    }
  }
  close();
  return out;
}

std::string serialize_branch(const BranchDocument& doc) {
  std::ostringstream out;
  if (doc.field != 0) out << "[field]\nd = " << doc.field << "\n\n";
  out << "[torus]\nz1 = " << vec(doc.torus.first.w1) << "\nz2 = " << vec(doc.torus.first.w2)
      << "\nw1 = " << vec(doc.torus.second.w1) << "\nw2 = " << vec(doc.torus.second.w2) << "\n";
  for (const BranchCurve& c : doc.curves) {
    out << "\n[curve]\ndir = " << c.p << " " << c.q << "\noffset = " << vec(c.offset) << "\norder = " << c.order << "\n";
  }
  return out.str();
}

}  // namespace pkflat
