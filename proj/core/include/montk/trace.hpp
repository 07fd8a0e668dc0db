#pragma once

#include <string>
#include <vector>

#include "montk/alphabet.hpp"

namespace montk {

// A finite trace is a sequence of action names over one alphabet.
using Trace = std::vector<std::string>;

// Finite representation (u, v) of the infinite trace u . v . v . v ...
// v must be non-empty wherever a lasso is consumed.
struct Lasso {
  Trace u;
  Trace v;
};

// Accepts whitespace- or comma-separated action names; for single-character
// alphabets an unseparated string like "abab" is also accepted.
Trace parse_trace(const std::string& text, const AlphabetPtr& alphabet);

// "U:V" with both halves in trace syntax; V must be non-empty.
Lasso parse_lasso(const std::string& text, const AlphabetPtr& alphabet);

// Single-character alphabets print unseparated; otherwise space-separated.
std::string format_trace(const Trace& t, const AlphabetPtr& alphabet);
std::string format_lasso(const Lasso& w, const AlphabetPtr& alphabet);

// Throws AlphabetError if some action is not a member.
void require_over_alphabet(const Trace& t, const AlphabetPtr& alphabet);

}  // namespace montk
