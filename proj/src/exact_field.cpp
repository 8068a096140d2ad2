#include "pkflat/exact_field.hpp"

#include <cctype>

namespace pkflat {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::MixedFields: return "MixedFields";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::FieldError: return "FieldError";
    case ErrorKind::InvalidRectangle: return "InvalidRectangle";
    case ErrorKind::UnknownRectangle: return "UnknownRectangle";
    case ErrorKind::InvalidSegment: return "InvalidSegment";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::Overlap: return "Overlap";
    case ErrorKind::Gap: return "Gap";
    case ErrorKind::Disconnected: return "Disconnected";
    case ErrorKind::BadOrientation: return "BadOrientation";
    case ErrorKind::InternalInconsistency: return "InternalInconsistency";
    case ErrorKind::PointOutsideRectangle: return "PointOutsideRectangle";
    case ErrorKind::InvalidTransversal: return "InvalidTransversal";
    case ErrorKind::NoReturn: return "NoReturn";
    case ErrorKind::NonPrimitiveDirection: return "NonPrimitiveDirection";
    case ErrorKind::InvalidOrder: return "InvalidOrder";
    case ErrorKind::UnsupportedTorus: return "UnsupportedTorus";
    case ErrorKind::DegenerateLattice: return "DegenerateLattice";
    case ErrorKind::TripleIntersection: return "TripleIntersection";
    case ErrorKind::ParallelCoincident: return "ParallelCoincident";
    case ErrorKind::UsageError: return "UsageError";
  }
  return "Unknown";
}

// ---------------------------------------------------------------- Rational

Rational::Rational(const mpz_class& numerator, const mpz_class& denominator) {
  if (denominator == 0) throw Error(ErrorKind::DivisionByZero, "zero denominator");
  value_ = mpq_class(numerator, denominator);
  value_.canonicalize();
}

Rational::Rational(const mpq_class& value) : value_(value) { value_.canonicalize(); }

Rational operator/(const Rational& x, const Rational& y) {
  if (y.is_zero()) throw Error(ErrorKind::DivisionByZero, "division of " + x.str() + " by zero");
  return Rational(mpq_class(x.value_ / y.value_));
}

std::string Rational::str() const {
  return numerator().get_str() + "/" + denominator().get_str();
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rational Rational::parse(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && body.front() == '-') {
    negative = true;
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  if (slash == std::string_view::npos)
    throw Error(ErrorKind::ParseError, "expected '<int>/<int>' rational literal, got '" + std::string(text) + "'");
  const std::string_view num = body.substr(0, slash);
  const std::string_view den = body.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den))
    throw Error(ErrorKind::ParseError, "malformed rational literal '" + std::string(text) + "'");
  mpz_class n(std::string(num), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) throw Error(ErrorKind::ParseError, "zero denominator in '" + std::string(text) + "'");
  if (negative) n = -n;
  return Rational(n, d);
}

Rational gcd(const Rational& x, const Rational& y) {
  if (x.is_zero()) return y.abs();
  if (y.is_zero()) return x.abs();
  mpz_class a = x.numerator() * y.denominator();
  mpz_class b = y.numerator() * x.denominator();
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return Rational(g, mpz_class(x.denominator() * y.denominator()));
}

mpz_class floor(const Rational& x) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), x.numerator().get_mpz_t(), x.denominator().get_mpz_t());
  return q;
}

bool is_squarefree(long d) {
  if (d < 1) return false;
  for (long p = 2; p * p <= d; ++p) {
    if (d % (p * p) == 0) return false;
  }
  return true;
}

void check_field(long d) {
  if (d < 2) throw Error(ErrorKind::FieldError, "field parameter d must be >= 2, got " + std::to_string(d));
  if (!is_squarefree(d)) throw Error(ErrorKind::FieldError, "field parameter d = " + std::to_string(d) + " is not squarefree");
}

// --------------------------------------------------------- QuadraticNumber

QuadraticNumber::QuadraticNumber(Rational a, Rational b, long d) : a_(std::move(a)), b_(std::move(b)), d_(d) {
  if (d_ != 0) {
    check_field(d_);
  } else if (!b_.is_zero()) {
    throw Error(ErrorKind::FieldError, "irrational part without a field declaration");
  }
}

long common_field(const QuadraticNumber& x, const QuadraticNumber& y) {
  if (x.field() == 0) return y.field();
  if (y.field() == 0 || y.field() == x.field()) return x.field();
  throw Error(ErrorKind::MixedFields, "Q(sqrt " + std::to_string(x.field()) + ") and Q(sqrt " +
                                          std::to_string(y.field()) + ") cannot be mixed");
}

namespace {

QuadraticNumber make(Rational a, Rational b, long d) {
  // Fields were validated when the operands were built.
  if (d == 0) return QuadraticNumber(std::move(a));
  return QuadraticNumber(std::move(a), std::move(b), d);
}

}  // namespace

int QuadraticNumber::sign() const {
  const int sa = a_.sign();
  const int sb = b_.sign();
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  // Opposite signs: compare a^2 with b^2 d. Equality would make d a square.
  const mpq_class lhs = a_.value() * a_.value();
  const mpq_class rhs = b_.value() * b_.value() * d_;
  return cmp(lhs, rhs) > 0 ? sa : sb;
}

double QuadraticNumber::to_double() const {
  if (b_.is_zero()) return a_.to_double();
  mpf_class root(d_, 256);
  root = sqrt(root);
  mpf_class value(a_.value(), 256);
  value += mpf_class(b_.value(), 256) * root;
  return value.get_d();
}

Rational QuadraticNumber::norm() const { return a_ * a_ - b_ * b_ * Rational(d_); }

QuadraticNumber operator+(const QuadraticNumber& x, const QuadraticNumber& y) {
  return make(x.a_ + y.a_, x.b_ + y.b_, common_field(x, y));
}

QuadraticNumber operator-(const QuadraticNumber& x, const QuadraticNumber& y) {
  return make(x.a_ - y.a_, x.b_ - y.b_, common_field(x, y));
}

QuadraticNumber operator*(const QuadraticNumber& x, const QuadraticNumber& y) {
  const long d = common_field(x, y);
  return make(x.a_ * y.a_ + x.b_ * y.b_ * Rational(d), x.a_ * y.b_ + x.b_ * y.a_, d);
}

QuadraticNumber operator/(const QuadraticNumber& x, const QuadraticNumber& y) {
  const long d = common_field(x, y);
  if (y.is_zero()) throw Error(ErrorKind::DivisionByZero, "division of " + x.str() + " by zero");
  // 1/(a + b s) = (a - b s)/(a^2 - b^2 d)
  const Rational n = y.norm();
  const QuadraticNumber inverse = make(y.a_ / n, -y.b_ / n, d);
  return x * inverse;
}

std::strong_ordering operator<=>(const QuadraticNumber& x, const QuadraticNumber& y) {
  const int s = (x - y).sign();
  return s < 0 ? std::strong_ordering::less : s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

std::string QuadraticNumber::str() const {
  if (b_.is_zero()) return a_.str();
  return a_.str() + (b_.sign() > 0 ? "+" : "-") + b_.abs().str() + "*s";
}

QuadraticNumber QuadraticNumber::parse(std::string_view text, long field) {
  constexpr std::string_view suffix = "*s";
  if (text.size() < suffix.size() || text.substr(text.size() - suffix.size()) != suffix) {
    return QuadraticNumber(Rational::parse(text));
  }
  if (field == 0)
    throw Error(ErrorKind::ParseError, "'" + std::string(text) + "' uses s but the document declares no field");
  const std::string_view body = text.substr(0, text.size() - suffix.size());
  const auto sep = body.find_first_of("+-", 1);
  if (sep == std::string_view::npos)
    throw Error(ErrorKind::ParseError, "expected '<rat>+<rat>*s' or '<rat>-<rat>*s', got '" + std::string(text) + "'");
  const std::string_view radical = body.substr(sep + 1);
  if (!radical.empty() && radical.front() == '-')
    throw Error(ErrorKind::ParseError, "doubled sign in '" + std::string(text) + "'");
  Rational a = Rational::parse(body.substr(0, sep));
  Rational b = Rational::parse(radical);
  if (body[sep] == '-') b = -b;
  return QuadraticNumber(std::move(a), std::move(b), field);
}

mpz_class floor(const QuadraticNumber& x) {
  if (x.is_rational()) return floor(x.rational_part());
  mpf_class root(x.field(), 512);
  root = sqrt(root);
  mpf_class value(x.rational_part().value(), 512);
  value += mpf_class(x.radical_part().value(), 512) * root;
  mpf_class rounded(0, 512);
  mpf_floor(rounded.get_mpf_t(), value.get_mpf_t());
  mpz_class k(rounded);
  // The estimate is within one unit; settle it exactly.
  while ((x - QuadraticNumber(Rational(k))).sign() < 0) --k;
  while ((x - QuadraticNumber(Rational(mpz_class(k + 1)))).sign() >= 0) ++k;
  return k;
}

std::optional<Rational> rational_ratio(const QuadraticNumber& x, const QuadraticNumber& y) {
  common_field(x, y);
  if (y.is_zero()) throw Error(ErrorKind::DivisionByZero, "ratio against zero");
  // Solve x = r*y over Q in the basis {1, sqrt d}.
  if (!y.radical_part().is_zero()) {
    Rational r = x.radical_part() / y.radical_part();
    if (r * y.rational_part() != x.rational_part()) return std::nullopt;
    return r;
  }
  if (!x.radical_part().is_zero()) return std::nullopt;
  return x.rational_part() / y.rational_part();
}

}  // namespace pkflat
