#include <doctest.h>

#include <random>

#include "pkflat/flow.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace pkflat;
using namespace pkflat::testing;

namespace {

const SurfacePoint* point(const TraceResult& r) { return std::get_if<SurfacePoint>(&r); }

bool same(const SurfacePoint& a, const SurfacePoint& b) { return a.rect == b.rect && a.x == b.x && a.y == b.y; }

// Images of the pieces tile [0, length) exactly once.
bool images_tile(const ReturnMap& m) {
  std::vector<std::pair<QN, QN>> images;
  for (const ReturnPiece& p : m.pieces) images.emplace_back(p.start + p.image_offset, p.end + p.image_offset);
  std::sort(images.begin(), images.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  QN at(0);
  for (const auto& [a, b] : images) {
    if (a != at) return false;
    at = b;
  }
  return at == m.length;
}

bool domains_tile(const ReturnMap& m) {
  QN at(0);
  for (const ReturnPiece& p : m.pieces) {
    if (p.start != at || p.end <= p.start) return false;
    at = p.end;
  }
  return at == m.length;
}

void check_against_walker(const ValidatedSurface& s, const Transversal& t, const ReturnMap& m, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(1, 1008);
  for (const ReturnPiece& p : m.pieces) {
    for (int k = 0; k < 3; ++k) {
      const QN u = p.start + (p.end - p.start) * QN(Rational(num(rng), 1009));
      const WalkResult w = walk_return(s, t, u);
      CHECK(w.image == u + p.image_offset);
      CHECK(w.height == p.return_height);
    }
  }
}

}  // namespace

TEST_CASE("tracing on the square torus") {
  const ValidatedSurface s = load_surface("square_torus.surf");
  const QN half(Rational(1, 2));
  const TraceResult a = flow_trace(s, {0, half, half}, Direction::North, QN(Rational(3, 2)));
  REQUIRE(point(a));
  CHECK(same(*point(a), {0, half, QN(0)}));
  const TraceResult b = flow_trace(s, {0, half, half}, Direction::East, QN(Rational(7, 4)));
  REQUIRE(point(b));
  CHECK(same(*point(b), {0, QN(Rational(1, 4)), half}));
  // Regular vertices are passed through.
  const TraceResult c = flow_trace(s, {0, QN(0), QN(0)}, Direction::North, QN(Rational(5, 2)));
  REQUIRE(point(c));
  CHECK(same(*point(c), {0, QN(0), half}));
  CHECK_THROWS_AS(flow_trace(s, {0, QN(2), half}, Direction::North, QN(1)), Error);
}

TEST_CASE("tracing on the three-square L") {
  const ValidatedSurface s = load_surface("L3.surf");
  const QN half(Rational(1, 2));
  const TraceResult up = flow_trace(s, {0, half, QN(0)}, Direction::North, QN(1));
  REQUIRE(point(up));
  CHECK(same(*point(up), {2, half, QN(0)}));
  const TraceResult around = flow_trace(s, {0, half, QN(0)}, Direction::North, QN(2));
  REQUIRE(point(around));
  CHECK(same(*point(around), {0, half, QN(0)}));
  const TraceResult east = flow_trace(s, {0, QN(0), half}, Direction::East, QN(1));
  REQUIRE(point(east));
  CHECK(same(*point(east), {1, QN(0), half}));

  // Along the left side of A the leaf runs into the cone point.
  const TraceResult hit = flow_trace(s, {0, QN(0), half}, Direction::North, QN(1));
  REQUIRE(std::holds_alternative<HitSingularity>(hit));
  CHECK(std::get<HitSingularity>(hit).distance == half);
  const TraceResult start = flow_trace(s, {0, QN(0), QN(0)}, Direction::East, QN(1));
  REQUIRE(std::holds_alternative<HitSingularity>(start));
  CHECK(std::get<HitSingularity>(start).distance == QN(0));
  REQUIRE(point(flow_trace(s, {0, QN(0), QN(0)}, Direction::East, QN(0))));
}

TEST_CASE("first return on the three-square L") {
  const ValidatedSurface s = load_surface("L3.surf");
  const Transversal t = bottom_transversal(s);
  CHECK(t.length() == QN(2));
  const ReturnMap m = first_return(s, t);
  REQUIRE(m.pieces.size() == 2);
  CHECK(m.pieces[0].end - m.pieces[0].start == QN(1));
  CHECK(m.pieces[0].return_height == QN(2));
  CHECK(m.pieces[1].end - m.pieces[1].start == QN(1));
  CHECK(m.pieces[1].return_height == QN(1));
  CHECK(m.breakpoints == std::vector<QN>{QN(0), QN(1)});
  const StripDecomposition d = strip_decomposition(s, t);
  CHECK(d.strips.size() == 2);
  CHECK(d.area() == QN(3));
  CHECK_THROWS_AS(first_return(s, t, 0), Error);
}

TEST_CASE("first return on the golden L") {
  const ValidatedSurface s = load_surface("golden_L.surf");
  const Transversal t = bottom_transversal(s);
  const ReturnMap m = first_return(s, t);
  CHECK(domains_tile(m));
  CHECK(images_tile(m));
  CHECK(strip_decomposition(s, t).area() == invariants(s).area);
  std::mt19937_64 rng(8);
  check_against_walker(s, t, m, rng);
}

TEST_CASE("transversals at interior heights") {
  const ValidatedSurface s = load_surface("L3.surf");
  Transversal t;
  t.arcs.push_back({0, QN(Rational(1, 2)), QN(0), QN(1)});
  t.arcs.push_back({1, QN(Rational(1, 3)), QN(0), QN(1)});
  const ReturnMap m = first_return(s, t);
  CHECK(domains_tile(m));
  CHECK(images_tile(m));
  CHECK(strip_decomposition(s, t).area() == QN(3));
  std::mt19937_64 rng(4);
  check_against_walker(s, t, m, rng);

  Transversal partial;
  partial.arcs.push_back({0, QN(Rational(1, 2)), QN(0), QN(1)});
  CHECK_THROWS_AS(strip_decomposition(s, partial), Error);
}

TEST_CASE("invalid transversals") {
  const ValidatedSurface s = load_surface("L3.surf");
  auto kind = [&](Transversal t) {
    try {
      check_transversal(s, t);
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::InternalInconsistency;
  };
  CHECK(kind({}) == ErrorKind::InvalidTransversal);
  CHECK(kind({{{0, QN(1), QN(0), QN(1)}}}) == ErrorKind::InvalidTransversal);
  CHECK(kind({{{0, QN(0), QN(0), QN(2)}}}) == ErrorKind::InvalidTransversal);
  CHECK(kind({{{5, QN(0), QN(0), QN(1)}}}) == ErrorKind::InvalidTransversal);
  CHECK(kind({{{0, QN(0), QN(0), QN(1)}, {0, QN(0), QN(Rational(1, 2)), QN(1)}}}) == ErrorKind::InvalidTransversal);
}

TEST_CASE("return maps of random surfaces") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 50; ++i) {
    const Shape shape = random_shape(rng, i % 2 == 0);
    for (const RectangleComplex& c : {build(shape), irrational_variant(shape, 0)}) {
      const ValidatedSurface s = validate(c);
      const Transversal t = bottom_transversal(s);
      const ReturnMap m = first_return(s, t);
      CHECK(domains_tile(m));
      CHECK(images_tile(m));
      QN total(0);
      for (const ReturnPiece& p : m.pieces) total += p.end - p.start;
      CHECK(total == t.length());
      const StripDecomposition d = strip_decomposition(s, t);
      CHECK(d.area() == invariants(s).area);
      std::vector<QN> covered(s.rectangles().size(), QN(0));
      for (const Strip& strip : d.strips) {
        QN area(0);
        for (const StripPatch& p : strip.patches) {
          CHECK(p.x0.sign() >= 0);
          CHECK(p.x1 <= s.rectangle(p.rect).width);
          const QN a = (p.x1 - p.x0) * (p.y1 - p.y0);
          area += a;
          covered[p.rect] += a;
        }
        CHECK(area == strip.width * strip.height);
      }
      for (std::size_t r = 0; r < covered.size(); ++r)
        CHECK(covered[r] == s.rectangle(r).width * s.rectangle(r).height);
      check_against_walker(s, t, m, rng);
    }
  }
}
