#include "montk/alphabet.hpp"

#include <algorithm>
#include <set>

#include "montk/trace.hpp"

namespace montk {

namespace {

bool plain_name_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9') || c == '_' || c == '#' || c == '$';
}

bool plain_name(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), plain_name_char);
}

}  // namespace

Alphabet::Alphabet(std::vector<std::string> actions) : actions_(std::move(actions)) {
  if (actions_.empty()) throw AlphabetError("alphabet must be non-empty");
  std::set<std::string> seen;
  for (const auto& a : actions_) {
    if (!plain_name(a))
      throw AlphabetError("invalid action name '" + a + "'");
    if (a == "tau")
      throw AlphabetError("'tau' is reserved for the silent step");
    if (a == "yes" || a == "no" || a == "end" || a == "rec")
      throw AlphabetError("'" + a + "' is a reserved keyword");
    if (!seen.insert(a).second)
      throw AlphabetError("duplicate action '" + a + "'");
  }
  finish();
}

Alphabet::Alphabet(std::vector<std::string> actions, unchecked_tag)
    : actions_(std::move(actions)) {
  finish();
}

void Alphabet::finish() {
  single_char_ = std::all_of(actions_.begin(), actions_.end(),
                             [](const std::string& a) { return a.size() == 1; });
}

int Alphabet::index_of(const std::string& action) const {
  for (std::size_t i = 0; i < actions_.size(); ++i)
    if (actions_[i] == action) return static_cast<int>(i);
  return -1;
}

AlphabetPtr Alphabet::extend_unchecked(const Alphabet& base,
                                       const std::vector<std::string>& extra) {
  std::vector<std::string> all = base.actions();
  all.insert(all.end(), extra.begin(), extra.end());
  return std::shared_ptr<const Alphabet>(new Alphabet(std::move(all), unchecked_tag{}));
}

void require_same_alphabet(const AlphabetPtr& a, const AlphabetPtr& b) {
  if (!a || !b) throw AlphabetError("missing alphabet");
  if (a.get() == b.get()) return;
  if (*a != *b) throw AlphabetError("alphabet mismatch");
}

Trace parse_trace(const std::string& text, const AlphabetPtr& alphabet) {
  if (!alphabet) throw AlphabetError("missing alphabet");
  Trace out;
  std::vector<std::string> words;
  std::string cur;
  for (char c : text) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == ',') {
      if (!cur.empty()) words.push_back(std::move(cur)), cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) words.push_back(std::move(cur));
  for (const auto& w : words) {
    if (alphabet->contains(w)) {
      out.push_back(w);
    } else if (alphabet->single_char()) {
      for (char c : w) {
        std::string a(1, c);
        if (!alphabet->contains(a))
          throw AlphabetError("unknown action '" + a + "' in trace");
        out.push_back(std::move(a));
      }
    } else {
      throw AlphabetError("unknown action '" + w + "' in trace");
    }
  }
  return out;
}

Lasso parse_lasso(const std::string& text, const AlphabetPtr& alphabet) {
  auto colon = text.find(':');
  if (colon == std::string::npos)
    throw ParseError("lasso must be written U:V", text.size());
  Lasso w;
  w.u = parse_trace(text.substr(0, colon), alphabet);
  w.v = parse_trace(text.substr(colon + 1), alphabet);
  if (w.v.empty())
    throw ParseError("lasso period V must be non-empty", colon + 1);
  return w;
}

std::string format_trace(const Trace& t, const AlphabetPtr& alphabet) {
  std::string out;
  bool sep = !(alphabet && alphabet->single_char());
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (sep && i) out += ' ';
    out += t[i];
  }
  return out;
}

std::string format_lasso(const Lasso& w, const AlphabetPtr& alphabet) {
  return format_trace(w.u, alphabet) + ":" + format_trace(w.v, alphabet);
}

void require_over_alphabet(const Trace& t, const AlphabetPtr& alphabet) {
  if (!alphabet) throw AlphabetError("missing alphabet");
  for (const auto& a : t)
    if (!alphabet->contains(a))
      throw AlphabetError("action '" + a + "' is not in the alphabet");
}

}  // namespace montk
