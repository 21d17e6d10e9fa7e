#pragma once

#include <stdexcept>
#include <string>

namespace perfsurf {

/// Raised when an operation's precondition fails on well-formed input
/// (dividing zero by omega, a non-member point, an out-of-range parameter).
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised by the text and file parsers. `position` is a byte offset into
/// the input, or npos when not applicable.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position = std::string::npos)
      : std::runtime_error(what), position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace perfsurf
