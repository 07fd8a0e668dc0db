#pragma once

#include <memory>
#include <string>
#include <vector>

#include "montk/error.hpp"

namespace montk {

// Finite ordered set of visible action names. The silent step is written "tau" in
// diagnostics and is never a member. Action names are non-empty strings over
// [A-Za-z0-9_#$]; fresh marker actions created internally use characters outside
// that set so they can never collide with user actions.
class Alphabet {
 public:
  explicit Alphabet(std::vector<std::string> actions);

  static std::shared_ptr<const Alphabet> make(std::vector<std::string> actions) {
    return std::make_shared<const Alphabet>(std::move(actions));
  }

  const std::vector<std::string>& actions() const { return actions_; }
  std::size_t size() const { return actions_.size(); }
  // Index in declaration order, or -1 when absent.
  int index_of(const std::string& action) const;
  bool contains(const std::string& action) const { return index_of(action) >= 0; }
  const std::string& action(std::size_t i) const { return actions_[i]; }

  // True when every action name is a single character (enables unseparated traces).
  bool single_char() const { return single_char_; }

  bool operator==(const Alphabet& other) const { return actions_ == other.actions_; }
  bool operator!=(const Alphabet& other) const { return !(*this == other); }

  // Internal: extends a base alphabet with already-validated fresh names (markers).
  static std::shared_ptr<const Alphabet> extend_unchecked(
      const Alphabet& base, const std::vector<std::string>& extra);

 private:
  struct unchecked_tag {};
  Alphabet(std::vector<std::string> actions, unchecked_tag);
  void finish();

  std::vector<std::string> actions_;
  bool single_char_ = false;
};

using AlphabetPtr = std::shared_ptr<const Alphabet>;

// Requires both present and equal; throws AlphabetError otherwise.
void require_same_alphabet(const AlphabetPtr& a, const AlphabetPtr& b);

}  // namespace montk
