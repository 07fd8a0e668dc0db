#include "montk/parse.hpp"

#include <cctype>

#include "montk/error.hpp"

namespace montk {

namespace {

bool name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '#' ||
         c == '$';
}

struct Cursor {
  const std::string& src;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < src.size() &&
           std::isspace(static_cast<unsigned char>(src[pos])))
      ++pos;
  }
  bool eof() {
    skip_ws();
    return pos >= src.size();
  }
  bool at(char c) {
    skip_ws();
    return pos < src.size() && src[pos] == c;
  }
  bool eat(char c) {
    if (at(c)) {
      ++pos;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!eat(c))
      throw ParseError(std::string("expected '") + c + "'", pos);
  }
  bool has_name() {
    skip_ws();
    return pos < src.size() && name_char(src[pos]);
  }
  std::string name() {
    skip_ws();
    std::size_t start = pos;
    while (pos < src.size() && name_char(src[pos])) ++pos;
    if (pos == start) throw ParseError("expected a name", pos);
    return src.substr(start, pos - start);
  }
  void expect_eof() {
    if (!eof()) throw ParseError("unexpected trailing input", pos);
  }
};

struct MonitorParser {
  Cursor cur;
  const Alphabet& alphabet;

  TermPtr parse_par() {
    TermPtr t = parse_sum();
    for (;;) {
      if (cur.eat('&'))
        t = Term::par_and(t, parse_sum());
      else if (cur.eat('|'))
        t = Term::par_or(t, parse_sum());
      else
        return t;
    }
  }

  TermPtr parse_sum() {
    TermPtr t = parse_item();
    while (cur.eat('+')) t = Term::choice(t, parse_item());
    return t;
  }

  TermPtr parse_item() {
    if (cur.eat('(')) {
      TermPtr t = parse_par();
      cur.expect(')');
      return t;
    }
    std::size_t start = cur.pos;
    std::string n = cur.name();
    if (n == "yes") return Term::yes();
    if (n == "no") return Term::no();
    if (n == "end") return Term::end();
    if (n == "rec") {
      std::string v = cur.name();
      cur.expect('.');
      return Term::rec(v, parse_item());
    }
    cur.skip_ws();
    if (cur.pos < cur.src.size() && cur.src[cur.pos] == '.') {
      ++cur.pos;
      if (!alphabet.contains(n)) {
        if (n == "tau")
          throw AlphabetError("'tau' cannot be used as an action");
        throw AlphabetError("unknown action '" + n + "' (at offset " +
                            std::to_string(start) + ")");
      }
      return Term::prefix(n, parse_item());
    }
    if (alphabet.contains(n))
      throw ParseError("action '" + n + "' must be followed by '.'", start);
    return Term::var(n);
  }
};

struct FormulaParser {
  Cursor cur;
  const Alphabet& alphabet;

  bool eat2(char c) {
    cur.skip_ws();
    if (cur.pos + 1 < cur.src.size() && cur.src[cur.pos] == c &&
        cur.src[cur.pos + 1] == c) {
      cur.pos += 2;
      return true;
    }
    return false;
  }

  FormulaPtr parse_or() {
    FormulaPtr f = parse_and();
    while (eat2('|')) f = Formula::disj(f, parse_and());
    return f;
  }

  FormulaPtr parse_and() {
    FormulaPtr f = parse_unary();
    while (eat2('&')) f = Formula::conj(f, parse_unary());
    return f;
  }

  FormulaPtr parse_unary() {
    if (cur.eat('(')) {
      FormulaPtr f = parse_or();
      cur.expect(')');
      return f;
    }
    if (cur.eat('[')) {
      std::size_t start = cur.pos;
      std::string a = cur.name();
      cur.expect(']');
      check_action(a, start);
      return Formula::box(a, parse_unary());
    }
    if (cur.eat('<')) {
      std::size_t start = cur.pos;
      std::string a = cur.name();
      cur.expect('>');
      check_action(a, start);
      return Formula::diamond(a, parse_unary());
    }
    std::size_t start = cur.pos;
    std::string n = cur.name();
    if (n == "tt") return Formula::tt();
    if (n == "ff") return Formula::ff();
    if (n == "max" || n == "min") {
      std::string v = cur.name();
      cur.expect('.');
      FormulaPtr body = parse_unary();
      return n == "max" ? Formula::max(v, body) : Formula::min(v, body);
    }
    if (alphabet.contains(n))
      throw ParseError("action '" + n + "' can only appear inside [..] or <..>",
                       start);
    return Formula::var(n);
  }

  void check_action(const std::string& a, std::size_t at) {
    if (!alphabet.contains(a)) {
      if (a == "tau") throw AlphabetError("'tau' cannot be used as an action");
      throw AlphabetError("unknown action '" + a + "' (at offset " +
                          std::to_string(at) + ")");
    }
  }
};

}  // namespace

Monitor parse_monitor(const std::string& text, const AlphabetPtr& alphabet) {
  if (!alphabet) throw AlphabetError("missing alphabet");
  MonitorParser p{{text, 0}, *alphabet};
  TermPtr root = p.parse_par();
  p.cur.expect_eof();
  return normalize(root, alphabet);
}

LogicFormula parse_formula(const std::string& text, const AlphabetPtr& alphabet) {
  if (!alphabet) throw AlphabetError("missing alphabet");
  FormulaParser p{{text, 0}, *alphabet};
  FormulaPtr root = p.parse_or();
  p.cur.expect_eof();
  return make_formula(root, alphabet);
}

}  // namespace montk
