#pragma once

#include <stdexcept>
#include <string>

namespace tdlc {

/// Malformed or inconsistent input (bad degree, out-of-range point, H not in G, ...).
class InputError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Input is well-formed but outside the operation's mathematical domain.
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Text could not be parsed. `position` is a 0-based character offset.
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " (at offset " + std::to_string(position) + ")"),
        message_(what),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }
  /// The message without the offset.
  const std::string& message() const noexcept { return message_; }

private:
  std::string message_;
  std::size_t position_;
};

}  // namespace tdlc
