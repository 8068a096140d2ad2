#pragma once

// Exact arithmetic over Q and a single real quadratic field Q(sqrt d).
//
// Every length, coordinate and period handled by the library lives here.
// Values are immutable after construction and all operations are pure.

#include <compare>
#include <optional>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "pkflat/errors.hpp"

namespace pkflat {

class Rational {
 public:
  Rational() = default;
  Rational(long value) : value_(value) {}  // NOLINT: integers promote implicitly
  Rational(const mpz_class& numerator, const mpz_class& denominator);
  explicit Rational(const mpz_class& value) : value_(value) {}
  explicit Rational(const mpq_class& value);

  const mpz_class& numerator() const { return value_.get_num(); }
  const mpz_class& denominator() const { return value_.get_den(); }
  const mpq_class& value() const { return value_; }

  int sign() const { return sgn(value_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const { return value_.get_den() == 1; }
  double to_double() const { return value_.get_d(); }

  Rational operator-() const { return Rational(mpq_class(-value_)); }
  Rational abs() const { return sign() < 0 ? -*this : *this; }

  friend Rational operator+(const Rational& x, const Rational& y) { return Rational(mpq_class(x.value_ + y.value_)); }
  friend Rational operator-(const Rational& x, const Rational& y) { return Rational(mpq_class(x.value_ - y.value_)); }
  friend Rational operator*(const Rational& x, const Rational& y) { return Rational(mpq_class(x.value_ * y.value_)); }
  friend Rational operator/(const Rational& x, const Rational& y);

  Rational& operator+=(const Rational& y) { return *this = *this + y; }
  Rational& operator-=(const Rational& y) { return *this = *this - y; }
  Rational& operator*=(const Rational& y) { return *this = *this * y; }

  friend bool operator==(const Rational& x, const Rational& y) { return x.value_ == y.value_; }
  friend std::strong_ordering operator<=>(const Rational& x, const Rational& y) {
    const int c = cmp(x.value_, y.value_);
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }

  /// Canonical literal `p/q` (denominator always written, e.g. `3/1`).
  std::string str() const;

  /// Parses the strict literal grammar `[-]<int>/<positive int>`.
  static Rational parse(std::string_view text);

 private:
  mpq_class value_;
};

/// Greatest common divisor in the sense of subgroups of Q:
/// gcd(p/q, r/s) = gcd(p*s, r*q) / (q*s), always >= 0.
Rational gcd(const Rational& x, const Rational& y);
mpz_class floor(const Rational& x);

/// Squarefree check used to validate field declarations.
bool is_squarefree(long d);
/// Throws FieldError unless d >= 2 is squarefree.
void check_field(long d);

/// a + b*sqrt(d). A number with d == 0 is a plain rational and combines
/// with numbers of any field; two numbers from different fields do not.
class QuadraticNumber {
 public:
  QuadraticNumber() = default;
  QuadraticNumber(long a) : a_(a) {}  // NOLINT
  QuadraticNumber(Rational a) : a_(std::move(a)) {}  // NOLINT
  QuadraticNumber(Rational a, Rational b, long d);

  static QuadraticNumber sqrt_of(long d) { return {Rational(0), Rational(1), d}; }

  const Rational& rational_part() const { return a_; }
  const Rational& radical_part() const { return b_; }
  long field() const { return d_; }
  bool is_rational() const { return b_.is_zero(); }
  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }

  /// Exact sign of a + b*sqrt(d).
  int sign() const;
  double to_double() const;

  QuadraticNumber operator-() const { return {-a_, -b_, d_}; }
  QuadraticNumber abs() const { return sign() < 0 ? -*this : *this; }
  QuadraticNumber conjugate() const { return {a_, -b_, d_}; }
  /// a^2 - b^2 d, a rational.
  Rational norm() const;

  friend QuadraticNumber operator+(const QuadraticNumber& x, const QuadraticNumber& y);
  friend QuadraticNumber operator-(const QuadraticNumber& x, const QuadraticNumber& y);
  friend QuadraticNumber operator*(const QuadraticNumber& x, const QuadraticNumber& y);
  friend QuadraticNumber operator/(const QuadraticNumber& x, const QuadraticNumber& y);

  QuadraticNumber& operator+=(const QuadraticNumber& y) { return *this = *this + y; }
  QuadraticNumber& operator-=(const QuadraticNumber& y) { return *this = *this - y; }
  QuadraticNumber& operator*=(const QuadraticNumber& y) { return *this = *this * y; }

  friend bool operator==(const QuadraticNumber& x, const QuadraticNumber& y) {
    return x.a_ == y.a_ && x.b_ == y.b_;
  }
  /// Numeric order of the real values.
  friend std::strong_ordering operator<=>(const QuadraticNumber& x, const QuadraticNumber& y);

  /// `p/q` when the radical part vanishes, otherwise `a+b*s` / `a-b*s`.
  std::string str() const;

  /// Parses `<rat>`, `<rat>+<rat>*s` or `<rat>-<rat>*s`. `field` is the
  /// document's d (0 when the document works over Q, in which case `s`
  /// is rejected).
  static QuadraticNumber parse(std::string_view text, long field);

 private:
  Rational a_;
  Rational b_;
  long d_ = 0;
};

using QN = QuadraticNumber;

/// Largest integer k with k <= x.
mpz_class floor(const QuadraticNumber& x);

/// r in Q with x = r*y, or nothing when x/y is irrational.
/// Throws DivisionByZero when y == 0.
std::optional<Rational> rational_ratio(const QuadraticNumber& x, const QuadraticNumber& y);

/// The number field shared by x and y (0 when both are rational).
long common_field(const QuadraticNumber& x, const QuadraticNumber& y);

}  // namespace pkflat
