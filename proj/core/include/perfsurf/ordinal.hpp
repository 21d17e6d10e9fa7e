#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace perfsurf {

struct OrdinalTerm;

/// An ordinal below epsilon_0 in Cantor normal form:
///   w^e1 * c1 + w^e2 * c2 + ... + w^ek * ck,   e1 > e2 > ... > ek,  ci >= 1.
/// Exponents are themselves ordinals, so the representation is recursive.
/// The empty term list is 0.
class Ordinal {
 public:
  Ordinal() = default;

  static Ordinal finite(std::uint64_t n);
  static Ordinal omega();
  static Ordinal omegaPower(Ordinal exponent, std::uint64_t coefficient = 1);

  /// Builds from raw terms; throws DomainError if exponents are not strictly
  /// decreasing or a coefficient is zero.
  static Ordinal fromTerms(std::vector<OrdinalTerm> terms);

  const std::vector<OrdinalTerm>& terms() const noexcept { return terms_; }

  bool isZero() const noexcept { return terms_.empty(); }
  bool isFinite() const noexcept;
  bool isLimit() const noexcept;      // nonzero and no w^0 term
  bool isSuccessor() const noexcept;  // has a w^0 term
  std::optional<std::uint64_t> asFinite() const noexcept;

  /// Nesting depth of exponents: 0 for 0, 1 for nonzero finite, ...
  int height() const noexcept;

  friend bool operator==(const Ordinal&, const Ordinal&) = default;
  friend std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b);

 private:
  std::vector<OrdinalTerm> terms_;
};

struct OrdinalTerm {
  Ordinal exponent;
  std::uint64_t coefficient = 1;

  friend bool operator==(const OrdinalTerm&, const OrdinalTerm&) = default;
};

std::strong_ordering compareOrdinals(const Ordinal& a, const Ordinal& b);

/// a + 1.
Ordinal succ(const Ordinal& a);

/// For nonzero a, the unique b with w*b <= a < w*(b+1). Throws DomainError
/// on 0. Since w * w^e = w^(1+e), finite exponents drop by one and
/// exponents >= w are left alone; the w^0 term is discarded.
Ordinal divideByOmega(const Ordinal& a);

/// The b with k + b = a, for finite k <= a. Infinite a are unchanged.
Ordinal subtractFiniteLeft(std::uint64_t k, const Ordinal& a);

/// max(a, b).
const Ordinal& maxOrdinal(const Ordinal& a, const Ordinal& b);

/// Text form: "0", "4", "w", "w+1", "w^2*3+w+4", "w^w", "w^(w+1)*2".
std::string toString(const Ordinal& a);

/// Parses the text form. Whitespace is ignored; "ω" is accepted for "w".
/// Throws ParseError with the offending byte position.
Ordinal parseOrdinal(std::string_view text);

namespace detail {
/// Parses the longest ordinal starting at `pos` and advances `pos` past it.
Ordinal parseOrdinalPrefix(std::string_view text, std::size_t& pos);
}  // namespace detail

}  // namespace perfsurf
