#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace montk {

// Malformed concrete syntax; position is a 0-based character offset into the input.
struct ParseError : std::runtime_error {
  std::size_t position;
  ParseError(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg + " (at offset " + std::to_string(pos) + ")"),
        position(pos) {}
};

// Unknown action, reserved name, or a value used with a foreign alphabet.
struct AlphabetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An operation's stated precondition does not hold (open term, non-regular input,
// inconsistent input, wrong logic fragment, missing extension-closure, ...).
struct PreconditionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A state-count or step budget was exhausted before the computation finished.
struct ResourceGuardError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace montk
