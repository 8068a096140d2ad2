#include <doctest.h>

#include <random>

#include "pkflat/exact_field.hpp"

using namespace pkflat;

namespace {

// Sign of a + b*sqrt(d) from a 2048-bit floating evaluation.
int float_sign(const QN& x) {
  mpf_class root(x.field() == 0 ? 0 : x.field(), 2048);
  root = sqrt(root);
  mpf_class v(x.rational_part().value(), 2048);
  v += mpf_class(x.radical_part().value(), 2048) * root;
  return sgn(v);
}

QN random_qn(std::mt19937_64& rng, long d) {
  std::uniform_int_distribution<long> num(-40, 40), den(1, 12);
  return QN(Rational(num(rng), den(rng)), Rational(num(rng), den(rng)), d);
}

}  // namespace

TEST_CASE("rational literals") {
  CHECK(Rational::parse("3/6") == Rational(1, 2));
  CHECK(Rational::parse("-7/1").str() == "-7/1");
  CHECK(Rational(4, -6).str() == "-2/3");
  CHECK(Rational(0).str() == "0/1");
  for (const char* bad : {"1/0", "1", "/2", "1/-2", "--1/2", "1.5/2", "", "1/2x"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(Rational::parse(bad), Error);
  }
  CHECK_THROWS_AS(Rational(mpz_class(1), mpz_class(0)), Error);
  CHECK_THROWS_AS(Rational(1) / Rational(0), Error);
}

TEST_CASE("rational gcd generates the subgroup") {
  CHECK(gcd(Rational(1, 2), Rational(1, 3)) == Rational(1, 6));
  CHECK(gcd(Rational(2, 3), Rational(4, 9)) == Rational(2, 9));
  CHECK(gcd(Rational(-3), Rational(0)) == Rational(3));
  CHECK(floor(Rational(-1, 2)) == -1);
  CHECK(floor(Rational(7, 2)) == 3);
}

TEST_CASE("field declarations") {
  CHECK_NOTHROW(check_field(5));
  CHECK_NOTHROW(check_field(2));
  for (long bad : {0L, 1L, 4L, 12L, -5L}) {
    CAPTURE(bad);
    try {
      check_field(bad);
      FAIL("accepted");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::FieldError);
    }
  }
}

TEST_CASE("quadratic literals round-trip") {
  const QN phi = QN::parse("1/2+1/2*s", 5);
  CHECK(phi.str() == "1/2+1/2*s");
  CHECK((phi * phi - phi).str() == "1/1");
  CHECK(QN::parse("1/2-3/4*s", 5).str() == "1/2-3/4*s");
  CHECK(QN::parse("0/1+1/1*s", 5) == QN::sqrt_of(5));
  CHECK_THROWS_AS(QN::parse("1/2+1/2*s", 0), Error);
  CHECK_THROWS_AS(QN::parse("1/2+-1/2*s", 5), Error);
  CHECK_THROWS_AS(QN::parse("1/2+1/0*s", 5), Error);

  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    const QN x = random_qn(rng, 5);
    CHECK(QN::parse(x.str(), 5) == x);
  }
}

TEST_CASE("mixed fields are rejected") {
  const QN a = QN::sqrt_of(2), b = QN::sqrt_of(3);
  CHECK_THROWS_AS(a + b, Error);
  CHECK_NOTHROW(a + QN(1));
  try {
    (void)(a * b);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::MixedFields);
  }
}

TEST_CASE("sign agrees with high-precision evaluation") {
  std::mt19937_64 rng(11);
  for (long d : {2L, 3L, 5L, 7L, 13L}) {
    for (int i = 0; i < 300; ++i) {
      const QN x = random_qn(rng, d);
      CAPTURE(x.str());
      CHECK(x.sign() == float_sign(x));
    }
  }
  // Near-cancellations: Pell-type pairs a^2 - 5 b^2 = +-1.
  CHECK(QN(Rational(9), Rational(-4), 5).sign() == 1);
  CHECK(QN(Rational(-161), Rational(72), 5).sign() == float_sign(QN(Rational(-161), Rational(72), 5)));
}

TEST_CASE("field arithmetic") {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 200; ++i) {
    const QN x = random_qn(rng, 5), y = random_qn(rng, 5);
    CHECK((x + y) - y == x);
    if (!y.is_zero()) CHECK((x / y) * y == x);
    CHECK(x * y == y * x);
    CHECK(QN(x.norm()) == x * x.conjugate());
    // floor against floating evaluation with a wide margin
    const mpz_class k = floor(x);
    CHECK((x - QN(Rational(k))).sign() >= 0);
    CHECK((QN(Rational(mpz_class(k + 1))) - x).sign() > 0);
    CHECK(((x < y) == (float_sign(y - x) > 0)));
  }
  CHECK_THROWS_AS(QN(1) / QN(0), Error);
}

TEST_CASE("rational ratios") {
  const QN phi = QN::parse("1/2+1/2*s", 5);
  CHECK_FALSE(rational_ratio(phi, QN(1)).has_value());
  CHECK_FALSE(rational_ratio(QN(1), phi).has_value());
  CHECK(rational_ratio(phi * QN(Rational(3, 2)), phi) == Rational(3, 2));
  CHECK(rational_ratio(QN(Rational(2, 3)), QN(4)) == Rational(1, 6));
  CHECK_THROWS_AS(rational_ratio(QN(1), QN(0)), Error);
}
