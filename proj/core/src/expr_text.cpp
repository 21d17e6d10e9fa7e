#include <cctype>
#include <limits>

#include "perfsurf/endspace.hpp"

namespace perfsurf {

namespace {

class ExprParser {
 public:
  explicit ExprParser(std::string_view text) : text_(text) {}

  SpaceExpr parseAll() {
    SpaceExpr e = parseExpr();
    skipSpace();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  SpaceExpr parseExpr() {
    skipSpace();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    std::string_view word = text_.substr(start, pos_ - start);
    if (word == "empty") return SpaceExpr::empty();
    if (word.empty()) fail("expected expression");
    expect('(');
    SpaceExpr out;
    if (word == "pt") {
      out = SpaceExpr::pt(parseLabelToken());
    } else if (word == "cantor") {
      out = SpaceExpr::cantor(parseLabelToken());
    } else if (word == "scat") {
      skipSpace();
      Ordinal alpha = detail::parseOrdinalPrefix(text_, pos_);
      expect(',');
      std::uint64_t n = parseInt();
      expect(',');
      out = SpaceExpr::scat(std::move(alpha), n, parseLabelToken());
    } else if (word == "sum") {
      std::vector<SpaceExpr> parts;
      parts.push_back(parseExpr());
      while (peek(',')) {
        ++pos_;
        parts.push_back(parseExpr());
      }
      out = SpaceExpr::sum(std::move(parts));
    } else if (word == "conv") {
      SpaceExpr body = parseExpr();
      expect(',');
      SpaceExpr apex = parseExpr();
      out = SpaceExpr::conv(std::move(body), std::move(apex));
    } else {
      pos_ = start;
      fail("unknown constructor '" + std::string(word) + "'");
    }
    expect(')');
    return out;
  }

  Label parseLabelToken() {
    skipSpace();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    auto label = parseLabel(text_.substr(start, pos_ - start));
    if (!label) {
      pos_ = start;
      fail("expected label p, np or no");
    }
    return *label;
  }

  std::uint64_t parseInt() {
    skipSpace();
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      fail("expected integer");
    }
    std::uint64_t value = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      auto digit = static_cast<std::uint64_t>(text_[pos_] - '0');
      if (value > (std::numeric_limits<std::uint64_t>::max() - digit) / 10) fail("integer too large");
      value = value * 10 + digit;
      ++pos_;
    }
    return value;
  }

  bool peek(char c) {
    skipSpace();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  void expect(char c) {
    if (!peek(c)) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  void skipSpace() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError("expression: " + message + " at position " + std::to_string(pos_), pos_);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void render(const SpaceExpr& e, std::string& out) {
  using Kind = SpaceExpr::Kind;
  switch (e.kind()) {
    case Kind::Empty:
      out += "empty";
      return;
    case Kind::Pt:
      out += "pt(";
      out += toString(e.label());
      out += ")";
      return;
    case Kind::Cantor:
      out += "cantor(";
      out += toString(e.label());
      out += ")";
      return;
    case Kind::Scat:
      out += "scat(" + toString(e.exponent()) + "," + std::to_string(e.count()) + ",";
      out += toString(e.label());
      out += ")";
      return;
    case Kind::Sum: {
      out += "sum(";
      bool first = true;
      for (const auto& s : e.summands()) {
        if (!first) out += ", ";
        first = false;
        render(s, out);
      }
      out += ")";
      return;
    }
    case Kind::Conv:
      out += "conv(";
      render(e.body(), out);
      out += ", ";
      render(e.apex(), out);
      out += ")";
      return;
  }
}

}  // namespace

std::string toString(const SpaceExpr& e) {
  std::string out;
  render(e, out);
  return out;
}

SpaceExpr parseExprUnchecked(std::string_view text) { return ExprParser(text).parseAll(); }

SpaceExpr parseExpr(std::string_view text) {
  SpaceExpr e = parseExprUnchecked(text);
  requireValid(e);
  return e;
}

}  // namespace perfsurf
