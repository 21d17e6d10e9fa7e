#include "perfsurf/quadnum.hpp"

#include <cctype>
#include <cmath>

#include "perfsurf/error.hpp"

namespace perfsurf {

QuadNum::QuadNum(mpq_class a, mpq_class b) : a_(std::move(a)), b_(std::move(b)) {
  a_.canonicalize();
  b_.canonicalize();
}

QuadNum QuadNum::rational(long num, long den) {
  if (den == 0) throw DomainError("zero denominator");
  mpq_class q(num, den);
  q.canonicalize();
  return QuadNum(q);
}

int QuadNum::sign() const {
  const int sa = sgn(a_);
  const int sb = sgn(b_);
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // Opposite signs: the part with the larger square wins.
  mpq_class lhs = a_ * a_;
  mpq_class rhs = 2 * b_ * b_;
  return lhs > rhs ? sa : sb;
}

mpq_class QuadNum::norm() const { return a_ * a_ - 2 * b_ * b_; }

QuadNum QuadNum::inverse() const {
  if (isZero()) throw DomainError("inverse of zero in Q(sqrt 2)");
  mpq_class n = norm();
  return QuadNum(a_ / n, -b_ / n);
}

QuadNum& QuadNum::operator+=(const QuadNum& o) {
  a_ += o.a_;
  b_ += o.b_;
  return *this;
}

QuadNum& QuadNum::operator-=(const QuadNum& o) {
  a_ -= o.a_;
  b_ -= o.b_;
  return *this;
}

QuadNum& QuadNum::operator*=(const QuadNum& o) {
  mpq_class a = a_ * o.a_ + 2 * b_ * o.b_;
  mpq_class b = a_ * o.b_ + b_ * o.a_;
  a_ = std::move(a);
  b_ = std::move(b);
  return *this;
}

QuadNum& QuadNum::operator/=(const QuadNum& o) { return *this *= o.inverse(); }

std::strong_ordering operator<=>(const QuadNum& x, const QuadNum& y) {
  int s = (x - y).sign();
  return s < 0 ? std::strong_ordering::less
         : s > 0 ? std::strong_ordering::greater
                 : std::strong_ordering::equal;
}

int compare(const QuadNum& x, const QuadNum& y) { return (x - y).sign(); }

double QuadNum::toDouble() const { return a_.get_d() + b_.get_d() * std::sqrt(2.0); }

std::string toString(const mpq_class& q) { return q.get_str(); }

std::string toString(const QuadNum& q) {
  if (q.isRational()) return q.a().get_str();
  std::string out;
  if (sgn(q.a()) != 0) out = q.a().get_str();
  mpq_class b = q.b();
  if (sgn(b) < 0) {
    out += "-";
    b = -b;
  } else if (!out.empty()) {
    out += "+";
  }
  if (b != 1) out += b.get_str() + "*";
  out += "r2";
  return out;
}

mpq_class parseRational(std::string_view text) {
  std::string s(text);
  auto trim = [](std::string& t) {
    while (!t.empty() && std::isspace(static_cast<unsigned char>(t.front()))) t.erase(t.begin());
    while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.pop_back();
  };
  trim(s);
  mpq_class q;
  if (s.empty() || q.set_str(s, 10) != 0) throw ParseError("rational: cannot parse \"" + s + "\"", 0);
  if (sgn(q.get_den()) == 0) throw ParseError("rational: zero denominator", 0);
  q.canonicalize();
  return q;
}

}  // namespace perfsurf
