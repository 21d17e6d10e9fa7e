#include "perfsurf/ordinal.hpp"

#include <cctype>
#include <limits>

#include "perfsurf/error.hpp"

namespace perfsurf {

namespace {

std::uint64_t checkedAdd(std::uint64_t a, std::uint64_t b) {
  if (a > std::numeric_limits<std::uint64_t>::max() - b) {
    throw DomainError("ordinal coefficient overflow");
  }
  return a + b;
}

// Ordinal addition, used only by the parser to accept non-normal sums.
Ordinal plus(const Ordinal& a, const Ordinal& b) {
  if (b.isZero()) return a;
  const Ordinal& lead = b.terms().front().exponent;
  std::vector<OrdinalTerm> out;
  for (const auto& t : a.terms()) {
    auto c = t.exponent <=> lead;
    if (c == std::strong_ordering::greater) {
      out.push_back(t);
    } else if (c == std::strong_ordering::equal) {
      out.push_back({t.exponent, checkedAdd(t.coefficient, b.terms().front().coefficient)});
      out.insert(out.end(), b.terms().begin() + 1, b.terms().end());
      return Ordinal::fromTerms(std::move(out));
    } else {
      break;
    }
  }
  out.insert(out.end(), b.terms().begin(), b.terms().end());
  return Ordinal::fromTerms(std::move(out));
}

class OrdinalParser {
 public:
  explicit OrdinalParser(std::string_view text, std::size_t pos = 0) : text_(text), pos_(pos) {}

  std::size_t position() const noexcept { return pos_; }

  Ordinal parsePrefix() { return parseSum(); }

  Ordinal parseAll() {
    Ordinal result = parseSum();
    skipSpace();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return result;
  }

 private:
  Ordinal parseSum() {
    Ordinal acc = parseTerm();
    for (;;) {
      skipSpace();
      if (!consume('+')) return acc;
      acc = plus(acc, parseTerm());
    }
  }

  Ordinal parseTerm() {
    skipSpace();
    if (peekDigit()) return Ordinal::finite(parseInt());
    if (!consumeOmega()) fail("expected integer or 'w'");
    Ordinal exponent = Ordinal::finite(1);
    skipSpace();
    if (consume('^')) exponent = parseAtom();
    std::uint64_t coefficient = 1;
    skipSpace();
    if (consume('*')) {
      skipSpace();
      coefficient = parseInt();
      if (coefficient == 0) return Ordinal{};
    }
    return Ordinal::omegaPower(std::move(exponent), coefficient);
  }

  Ordinal parseAtom() {
    skipSpace();
    if (peekDigit()) return Ordinal::finite(parseInt());
    if (consumeOmega()) return Ordinal::omega();
    if (consume('(')) {
      Ordinal inner = parseSum();
      skipSpace();
      if (!consume(')')) fail("expected ')'");
      return inner;
    }
    fail("expected exponent");
  }

  std::uint64_t parseInt() {
    skipSpace();
    if (!peekDigit()) fail("expected integer");
    std::uint64_t value = 0;
    while (peekDigit()) {
      auto digit = static_cast<std::uint64_t>(text_[pos_] - '0');
      if (value > (std::numeric_limits<std::uint64_t>::max() - digit) / 10) {
        fail("integer too large");
      }
      value = value * 10 + digit;
      ++pos_;
    }
    return value;
  }

  bool consumeOmega() {
    if (consume('w')) return true;
    static constexpr std::string_view kOmega = "\xCF\x89";  // UTF-8 omega
    if (text_.substr(pos_, kOmega.size()) == kOmega) {
      pos_ += kOmega.size();
      return true;
    }
    return false;
  }

  bool consume(char c) {
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool peekDigit() const {
    return pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]));
  }

  void skipSpace() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError("ordinal: " + message + " at position " + std::to_string(pos_), pos_);
  }

  std::string_view text_;
  std::size_t pos_;
};

}  // namespace

Ordinal Ordinal::finite(std::uint64_t n) {
  Ordinal o;
  if (n > 0) o.terms_.push_back({Ordinal{}, n});
  return o;
}

Ordinal Ordinal::omega() { return omegaPower(finite(1)); }

Ordinal Ordinal::omegaPower(Ordinal exponent, std::uint64_t coefficient) {
  Ordinal o;
  if (coefficient > 0) o.terms_.push_back({std::move(exponent), coefficient});
  return o;
}

Ordinal Ordinal::fromTerms(std::vector<OrdinalTerm> terms) {
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (terms[i].coefficient == 0) throw DomainError("ordinal term with zero coefficient");
    if (i > 0 && !(terms[i].exponent < terms[i - 1].exponent)) {
      throw DomainError("ordinal exponents must be strictly decreasing");
    }
  }
  Ordinal o;
  o.terms_ = std::move(terms);
  return o;
}

bool Ordinal::isFinite() const noexcept {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].exponent.isZero());
}

bool Ordinal::isSuccessor() const noexcept {
  return !terms_.empty() && terms_.back().exponent.isZero();
}

bool Ordinal::isLimit() const noexcept { return !terms_.empty() && !isSuccessor(); }

std::optional<std::uint64_t> Ordinal::asFinite() const noexcept {
  if (terms_.empty()) return 0;
  if (isFinite()) return terms_[0].coefficient;
  return std::nullopt;
}

int Ordinal::height() const noexcept {
  int h = 0;
  for (const auto& t : terms_) h = std::max(h, 1 + t.exponent.height());
  return h;
}

std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b) {
  const auto& x = a.terms_;
  const auto& y = b.terms_;
  const std::size_t n = std::min(x.size(), y.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (auto c = x[i].exponent <=> y[i].exponent; c != 0) return c;
    if (auto c = x[i].coefficient <=> y[i].coefficient; c != 0) return c;
  }
  return x.size() <=> y.size();
}

std::strong_ordering compareOrdinals(const Ordinal& a, const Ordinal& b) { return a <=> b; }

Ordinal succ(const Ordinal& a) {
  std::vector<OrdinalTerm> terms = a.terms();
  if (!terms.empty() && terms.back().exponent.isZero()) {
    terms.back().coefficient = checkedAdd(terms.back().coefficient, 1);
  } else {
    terms.push_back({Ordinal{}, 1});
  }
  return Ordinal::fromTerms(std::move(terms));
}

Ordinal divideByOmega(const Ordinal& a) {
  if (a.isZero()) throw DomainError("divideByOmega: argument must be >= 1");
  std::vector<OrdinalTerm> out;
  for (const auto& t : a.terms()) {
    if (t.exponent.isZero()) continue;
    if (auto n = t.exponent.asFinite()) {
      out.push_back({Ordinal::finite(*n - 1), t.coefficient});
    } else {
      out.push_back(t);
    }
  }
  return Ordinal::fromTerms(std::move(out));
}

Ordinal subtractFiniteLeft(std::uint64_t k, const Ordinal& a) {
  if (auto n = a.asFinite()) {
    if (*n < k) throw DomainError("subtractFiniteLeft: k exceeds the ordinal");
    return Ordinal::finite(*n - k);
  }
  return a;
}

const Ordinal& maxOrdinal(const Ordinal& a, const Ordinal& b) { return a < b ? b : a; }

std::string toString(const Ordinal& a) {
  if (a.isZero()) return "0";
  std::string out;
  for (const auto& t : a.terms()) {
    if (!out.empty()) out += "+";
    if (t.exponent.isZero()) {
      out += std::to_string(t.coefficient);
      continue;
    }
    out += "w";
    if (t.exponent != Ordinal::finite(1)) {
      std::string e = toString(t.exponent);
      bool bare = t.exponent.isFinite() || t.exponent == Ordinal::omega();
      out += bare ? "^" + e : "^(" + e + ")";
    }
    if (t.coefficient != 1) out += "*" + std::to_string(t.coefficient);
  }
  return out;
}

Ordinal parseOrdinal(std::string_view text) { return OrdinalParser(text).parseAll(); }

Ordinal detail::parseOrdinalPrefix(std::string_view text, std::size_t& pos) {
  OrdinalParser parser(text, pos);
  Ordinal result = parser.parsePrefix();
  pos = parser.position();
  return result;
}

}  // namespace perfsurf
