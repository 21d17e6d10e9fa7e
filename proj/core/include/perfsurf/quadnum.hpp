#pragma once

#include <compare>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace perfsurf {

/// Exact element a + b*sqrt(2) of Q(sqrt 2). Both parts are kept canonical
/// (lowest terms, positive denominators).
class QuadNum {
 public:
  QuadNum() = default;
  QuadNum(mpq_class a, mpq_class b = 0);  // NOLINT(google-explicit-constructor)
  QuadNum(long a) : QuadNum(mpq_class(a)) {}  // NOLINT(google-explicit-constructor)

  static QuadNum sqrt2() { return QuadNum(0, 1); }
  /// num/den.
  static QuadNum rational(long num, long den = 1);

  const mpq_class& a() const noexcept { return a_; }
  const mpq_class& b() const noexcept { return b_; }

  bool isRational() const { return sgn(b_) == 0; }
  bool isZero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
  /// -1, 0 or 1, exact.
  int sign() const;

  /// a^2 - 2 b^2.
  mpq_class norm() const;
  QuadNum conjugate() const { return QuadNum(a_, -b_); }
  /// Throws DomainError on zero.
  QuadNum inverse() const;

  QuadNum operator-() const { return QuadNum(-a_, -b_); }
  QuadNum& operator+=(const QuadNum& o);
  QuadNum& operator-=(const QuadNum& o);
  QuadNum& operator*=(const QuadNum& o);
  QuadNum& operator/=(const QuadNum& o);

  friend QuadNum operator+(QuadNum x, const QuadNum& y) { return x += y; }
  friend QuadNum operator-(QuadNum x, const QuadNum& y) { return x -= y; }
  friend QuadNum operator*(QuadNum x, const QuadNum& y) { return x *= y; }
  friend QuadNum operator/(QuadNum x, const QuadNum& y) { return x /= y; }

  friend bool operator==(const QuadNum& x, const QuadNum& y) { return x.a_ == y.a_ && x.b_ == y.b_; }
  friend std::strong_ordering operator<=>(const QuadNum& x, const QuadNum& y);

  /// Approximate value, for display only.
  double toDouble() const;

 private:
  mpq_class a_;
  mpq_class b_;
};

int compare(const QuadNum& x, const QuadNum& y);

/// "a", "b*r2", "a+b*r2" with rationals as "p/q", e.g. "1/2-3*r2".
std::string toString(const QuadNum& q);

/// Parses a rational "p" or "p/q". Throws ParseError.
mpq_class parseRational(std::string_view text);

std::string toString(const mpq_class& q);

}  // namespace perfsurf
