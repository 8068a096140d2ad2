#include <doctest.h>

#include <random>

#include "pkflat/torus_cover.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace pkflat;
using namespace pkflat::testing;

namespace {

QN generic(std::mt19937_64& rng, const QN& bound) {
  std::uniform_int_distribution<long> num(1, 996);
  // Denominator 997 keeps the points off every lattice line of the fixtures.
  return bound * QN(Rational(num(rng), 997));
}

}  // namespace

TEST_CASE("discreteness of subgroups of R") {
  const std::vector<QN> ints{QN(4), QN(6)};
  CHECK(discreteness(ints).generator == QN(2));
  const std::vector<QN> fracs{QN(Rational(1, 2)), QN(Rational(-1, 3)), QN(0)};
  CHECK(discreteness(fracs).generator == QN(Rational(1, 6)));
  const std::vector<QN> none;
  CHECK(discreteness(none).trivial());
  const std::vector<QN> zeros{QN(0), QN(0)};
  CHECK(discreteness(zeros).trivial());
  const std::vector<QN> radicals{QN::sqrt_of(5) * QN(2), QN::sqrt_of(5) * QN(-3)};
  CHECK(discreteness(radicals).generator == QN::sqrt_of(5));
  const std::vector<QN> golden{QN(1), phi()};
  const DiscretenessVerdict v = discreteness(golden);
  CHECK_FALSE(v.discrete);
  REQUIRE(v.witness);
  CHECK_FALSE(rational_ratio(v.witness->first, v.witness->second));
}

TEST_CASE("square torus covers itself once") {
  const ValidatedSurface s = load_surface("square_torus.surf");
  const auto cover = std::get<CoveringDescription>(decide_torus_cover(s));
  CHECK(cover.lattice == Lattice{QN(1), QN(1)});
  CHECK(cover.degree == 1);
  std::mt19937_64 rng(1);
  for (int i = 0; i < 50; ++i) {
    const TorusPoint t{generic(rng, QN(1)), generic(rng, QN(1))};
    CHECK(fiber_count(s, cover, t) == 1);
  }
  for (const TorusPoint& t : {TorusPoint{QN(0), QN(0)}, TorusPoint{QN(0), QN(Rational(1, 2))},
                              TorusPoint{QN(Rational(1, 2)), QN(0)}})
    CHECK(fiber_count(s, cover, t) == 1);
  CHECK(develop(s, cover, {0, QN(1), QN(1)}) == TorusPoint{QN(0), QN(0)});
}

TEST_CASE("three-square L covers the square torus three times") {
  const ValidatedSurface s = load_surface("L3.surf");
  const auto cover = std::get<CoveringDescription>(decide_torus_cover(s));
  CHECK(cover.lattice == Lattice{QN(1), QN(1)});
  CHECK(cover.degree == 3);
  CHECK(fiber_count(s, cover, {QN(0), QN(0)}) == 1);
  // Points on the edges but away from the cone point have full fibres.
  CHECK(fiber_count(s, cover, {QN(Rational(1, 2)), QN(0)}) == 3);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    const TorusPoint t{generic(rng, QN(1)), generic(rng, QN(1))};
    CHECK(fiber_count(s, cover, t) == fiber_oracle(s, QN(1), QN(1), t.x, t.y));
    CHECK(fiber_count(s, cover, t) == 3);
  }
}

TEST_CASE("unbranched double cover") {
  const ValidatedSurface s = load_surface("two_square_torus.surf");
  const auto cover = std::get<CoveringDescription>(decide_torus_cover(s));
  CHECK(cover.degree == 2);
  CHECK(fiber_count(s, cover, {QN(0), QN(0)}) == 2);
}

TEST_CASE("golden L does not cover a torus") {
  const ValidatedSurface s = load_surface("golden_L.surf");
  const auto verdict = decide_torus_cover(s);
  REQUIRE(std::holds_alternative<NotACover>(verdict));
  const NotACover& no = std::get<NotACover>(verdict);
  CHECK(no.axis == Axis::Horizontal);
  REQUIRE(no.witness);
  CHECK_FALSE(rational_ratio(no.witness->first, no.witness->second));
  CHECK_FALSE(rational_ratio(phi(), QN(1)));
}

TEST_CASE("covers of random rational surfaces") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 40; ++i) {
    const Shape shape = random_shape(rng, i % 2 == 0);
    const ValidatedSurface s = validate(build(shape));
    const auto verdict = decide_torus_cover(s);
    REQUIRE(std::holds_alternative<CoveringDescription>(verdict));
    const auto& cover = std::get<CoveringDescription>(verdict);
    const SurfaceInvariants inv = invariants(s);
    CHECK(QN(Rational(cover.degree)) * cover.lattice.covolume() == inv.area);

    for (int k = 0; k < 5; ++k) {
      const TorusPoint t{generic(rng, cover.lattice.h), generic(rng, cover.lattice.v)};
      const auto keys = fiber(s, cover, t);
      CHECK(keys.size() == fiber_oracle(s, cover.lattice.h, cover.lattice.v, t.x, t.y));
      CHECK(mpz_class(keys.size()) == cover.degree);
    }
    // Over the image of the vertices the local degrees add up to the degree.
    const auto keys = fiber(s, cover, {QN(0), QN(0)});
    long total = 0;
    for (const PointKey& k : keys) total += k.vertex ? s.vertex_classes()[k.index].cone_multiple : 1;
    CHECK(mpz_class(total) == cover.degree);

    if (shape.self_vertical) {
      const auto flipped = decide_torus_cover(validate(irrational_variant(shape, i % shape.widths.size())));
      REQUIRE(std::holds_alternative<NotACover>(flipped));
      CHECK(std::get<NotACover>(flipped).axis == Axis::Horizontal);
    }
  }
}

TEST_CASE("developing map is constant on fibres") {
  const ValidatedSurface s = load_surface("L3.surf");
  const auto cover = std::get<CoveringDescription>(decide_torus_cover(s));
  const TorusPoint t{QN(Rational(1, 3)), QN(Rational(2, 5))};
  for (std::size_t r = 0; r < 3; ++r) CHECK(develop(s, cover, {r, t.x, t.y}) == t);
}
