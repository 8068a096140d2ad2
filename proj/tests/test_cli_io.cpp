#include <doctest.h>

#include <filesystem>
#include <random>
#include <regex>
#include <sstream>

#include "pkflat/cli.hpp"
#include "pkflat/document.hpp"
#include "pkflat/report.hpp"
#include "pkflat/svg.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"

using namespace pkflat;
using namespace pkflat::testing;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto at = text.find(needle); at != std::string::npos; at = text.find(needle, at + 1)) ++n;
  return n;
}

Error parse_error(const std::string& text) {
  try {
    parse_surface(text);
  } catch (const Error& e) {
    return e;
  }
  FAIL("parsed");
  return Error(ErrorKind::InternalInconsistency, "");
}

const char* kTorus = "[rect A]\nwidth = 1/1\nheight = 1/1\n[glue]\nA top 0/1 1/1 = A bottom 0/1 1/1\n"
                     "A right 0/1 1/1 = A left 0/1 1/1\n";

}  // namespace

TEST_CASE("surface documents") {
  const RectangleComplex c = parse_surface(kTorus);
  CHECK(c.rectangles.size() == 1);
  CHECK(c.gluings.size() == 2);
  CHECK(c.field == 0);

  const RectangleComplex commented = parse_surface(std::string("# a torus\n\n") + kTorus + "# end\n");
  CHECK(commented == c);

  const RectangleComplex golden = parse_surface(read_data("golden_L.surf"));
  CHECK(golden.field == 5);
  CHECK(invariants(validate(golden)).area.str() == "0/1+1/1*s");
}

TEST_CASE("parse errors carry positions") {
  const Error zero = parse_error("[rect A]\nwidth = 1/0\nheight = 1/1\n");
  CHECK(zero.kind() == ErrorKind::ParseError);
  CHECK(zero.line() == 2);
  CHECK(zero.column() == 9);

  CHECK(parse_error("[rect A]\nwidth = 1/1\nheight = 1/1\n[rect A]\nwidth = 1/1\nheight = 1/1\n").line() == 4);
  CHECK(parse_error("[rect A]\nwidth = 1/1\ndepth = 1/1\n").column() == 1);
  CHECK(parse_error("[rect A]\nwidth = 1/1\n").line() == 1);
  CHECK(parse_error("[rect A]\nwidth 1/1\nheight = 1/1\n").kind() == ErrorKind::ParseError);
  CHECK(parse_error("[rect A]\nwidth = 1/1 2/1\nheight = 1/1\n").kind() == ErrorKind::ParseError);
  CHECK(parse_error("[rect A]\nwidth = 1/2+1/2*s\nheight = 1/1\n").kind() == ErrorKind::ParseError);
  CHECK(parse_error("[rect A]\nwidth = 1/1\nheight = 1/1\n[field]\nd = 5\n").line() == 4);
  CHECK(parse_error("width = 1/1\n").kind() == ErrorKind::ParseError);
  CHECK(parse_error("[box A]\n").kind() == ErrorKind::ParseError);
  CHECK(parse_error("[rect A]\nwidth = 1/1\nheight = 1/1\n[glue]\nA up 0/1 1/1 = A bottom 0/1 1/1\n").column() == 3);
  CHECK(parse_error("[field]\nd = 8\n").kind() == ErrorKind::FieldError);
  CHECK(parse_error("[rect A]\nwidth = 1/1\nheight = 1/1\n[glue]\nA top 0/1 1/1 = B bottom 0/1 1/1\n").kind() ==
        ErrorKind::UnknownRectangle);
}

TEST_CASE("documents round-trip") {
  for (const char* name : {"square_torus.surf", "two_square_torus.surf", "L3.surf", "golden_L.surf"}) {
    CAPTURE(name);
    const RectangleComplex c = parse_surface(read_data(name));
    CHECK(parse_surface(serialize_surface(c)) == c);
    CHECK(serialize_surface(parse_surface(serialize_surface(c))) == serialize_surface(c));
  }
  for (const char* name : {"three_lines.branch", "three_lines_offset.branch", "two_lines.branch",
                           "four_directions.branch"}) {
    CAPTURE(name);
    const BranchDocument d = parse_branch(read_data(name));
    CHECK(parse_branch(serialize_branch(d)) == d);
  }
  std::mt19937_64 rng(31);
  for (int i = 0; i < 30; ++i) {
    const Shape shape = random_shape(rng, i % 2 == 0);
    for (const RectangleComplex& c : {build(shape), irrational_variant(shape, 0)}) {
      CHECK(parse_surface(serialize_surface(c)) == c);
    }
  }
}

TEST_CASE("branch documents") {
  const BranchDocument d = parse_branch(read_data("three_lines_offset.branch"));
  CHECK(d.curves.size() == 3);
  CHECK(d.curves[2].order == 3);
  CHECK(d.curves[2].offset.x == QN(Rational(1, 2)));
  CHECK(d.torus == square_torus2());
  CHECK_THROWS_AS(parse_branch("[curve]\ndir = 1\norder = 2\n"), Error);
  CHECK_THROWS_AS(parse_branch("[curve]\ndir = 1 0\n"), Error);
  CHECK_THROWS_AS(parse_branch("[torus]\nz1 = 1/1 0/1\n"), Error);
  CHECK_THROWS_AS(parse_branch("[curve]\ndir = 1 x\norder = 2\n"), Error);
}

TEST_CASE("sha256 digests") {
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("svg drawings") {
  const ValidatedSurface torus = validate(parse_surface(kTorus));
  const std::string a = render_surface_svg(torus);
  CHECK(count(a, "class=\"rect\"") == 1);
  CHECK(count(a, "class=\"glue\"") == 4);
  CHECK(count(a, "data-gluing=\"0\"") == 2);
  CHECK(count(a, "data-gluing=\"1\"") == 2);
  CHECK(count(a, "class=\"singular\"") == 0);
  CHECK(a == render_surface_svg(validate(parse_surface(kTorus))));

  const ValidatedSurface l3 = load_surface("L3.surf");
  const std::string b = render_surface_svg(l3);
  CHECK(count(b, "class=\"rect\"") == 3);
  CHECK(count(b, "class=\"singular\"") == 1);
  const std::string strips = render_strips_svg(l3, strip_decomposition(l3, bottom_transversal(l3)));
  CHECK(count(strips, "class=\"strip\"") == 2);
  CHECK(count(strips, "fill-opacity=\"0.35\"") == 2);
  const auto cover = std::get<CoveringDescription>(decide_torus_cover(l3));
  const std::string c = render_cover_svg(l3, cover);
  CHECK(count(c, "class=\"fundamental-domain\"") == 1);
  CHECK(c == render_cover_svg(l3, cover));
}

TEST_CASE("exit codes") {
  CHECK(run({"cover", data_path("L3.surf")}).code == kExitOk);
  CHECK(run({"cover", data_path("golden_L.surf")}).code == kExitNegative);
  for (const char* bad : {"zero_denominator.surf", "gap.surf", "bad_field.surf", "unknown_key.surf"}) {
    CAPTURE(bad);
    const Run r = run({"cover", data_path(std::string("malformed/") + bad)});
    CHECK(r.code == kExitInput);
    CHECK_FALSE(r.err.empty());
  }
  CHECK(run({"cover", "/nonexistent.surf"}).code == kExitInput);
  CHECK(run({"cover", "--frobnicate", data_path("L3.surf")}).code == kExitInput);
  CHECK(run({"nonsense"}).code == kExitInput);
  CHECK(run({}).code == kExitInput);
  CHECK(run({"--help"}).code == kExitOk);
  CHECK(run({"flow", "--max-crossings", "0", data_path("L3.surf")}).code == kExitNegative);
  CHECK(run({"flow", "--transversal", "Z:0/1:0/1:1/1", data_path("L3.surf")}).code == kExitInput);
  CHECK(run({"branch", "validate", data_path("three_lines.branch")}).code == kExitNegative);
  CHECK(run({"branch", "classify", data_path("three_lines_offset.branch")}).code == kExitOk);
  CHECK(run({"branch", "local-model", "--m", "0", "--n", "1"}).code == kExitInput);
  CHECK(run({"product", data_path("L3.surf"), data_path("golden_L.surf")}).code == kExitNegative);
  // One malformed input among several makes the whole run an input error.
  CHECK(run({"validate", data_path("L3.surf"), data_path("malformed/gap.surf")}).code == kExitInput);
  CHECK(run({"cover", data_path("L3.surf"), data_path("golden_L.surf")}).code == kExitNegative);
}

TEST_CASE("reports") {
  const Run cover = run({"cover", data_path("L3.surf")});
  CHECK(cover.out.find("degree = 3\n") != std::string::npos);
  CHECK(cover.out.find("digest = sha256:") != std::string::npos);

  const Run golden = run({"cover", data_path("golden_L.surf")});
  std::smatch m;
  REQUIRE(std::regex_search(golden.out, m, std::regex("witness = (\\S+) (\\S+)\n")));
  const QN a = QN::parse(m[1].str(), 5), b = QN::parse(m[2].str(), 5);
  CHECK(a.str() == m[1].str());
  CHECK_FALSE(rational_ratio(a, b));

  const Run analyze = run({"analyze", data_path("golden_L.surf")});
  CHECK(analyze.out.find("area = 0/1+1/1*s\n") != std::string::npos);
  CHECK(analyze.out.find("cone_angles = 6*pi\n") != std::string::npos);

  const Run classify = run({"branch", "classify", data_path("three_lines_offset.branch")});
  CHECK(classify.out.find("verdict = NotProduct\n") != std::string::npos);
  CHECK(classify.out.find("rule = three-lines-nonsplit\n") != std::string::npos);

  const Run flow = run({"flow", data_path("L3.surf")});
  CHECK(flow.out.find("strip.0 = 1/1 2/1\n") != std::string::npos);
  CHECK(flow.out.find("strip.1 = 1/1 1/1\n") != std::string::npos);

  const Run many = run({"analyze", data_path("square_torus.surf"), data_path("L3.surf"), data_path("golden_L.surf")});
  const auto p1 = many.out.find("square_torus.surf"), p2 = many.out.find("L3.surf"), p3 = many.out.find("golden_L.surf");
  CHECK(p1 < p2);
  CHECK(p2 < p3);
  CHECK(many.out == run({"analyze", data_path("square_torus.surf"), data_path("L3.surf"),
                         data_path("golden_L.surf")}).out);
}

TEST_CASE("render writes identical files") {
  const auto dir = std::filesystem::temp_directory_path() / "pkflat_render_test";
  std::filesystem::create_directories(dir);
  const std::string first = (dir / "a.svg").string(), second = (dir / "b.svg").string();
  for (const char* what : {"surface", "strips", "cover"}) {
    CAPTURE(what);
    CHECK(run({"render", data_path("L3.surf"), "--what", what, "-o", first}).code == kExitOk);
    CHECK(run({"render", data_path("L3.surf"), "--what", what, "-o", second}).code == kExitOk);
    std::ifstream fa(first), fb(second);
    std::stringstream sa, sb;
    sa << fa.rdbuf();
    sb << fb.rdbuf();
    CHECK(sa.str() == sb.str());
    CHECK(sa.str().rfind("<?xml", 0) == 0);
  }
  CHECK(run({"render", data_path("golden_L.surf"), "--what", "cover", "-o", first}).code == kExitNegative);
  std::filesystem::remove_all(dir);
}
