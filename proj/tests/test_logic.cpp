#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <string>
#include <vector>

#include "doctest.h"
#include "montk/automata.hpp"
#include "montk/error.hpp"
#include "montk/logic.hpp"
#include "montk/parse.hpp"
#include "montk/term.hpp"
#include "montk/trace.hpp"

using namespace montk;

namespace {

const AlphabetPtr kAB = Alphabet::make({"a", "b"});

Monitor mon(const std::string& text) { return parse_monitor(text, kAB); }
LogicFormula fml(const std::string& text) { return parse_formula(text, kAB); }

std::vector<Lasso> all_lassos(int max_u, int max_v) {
  std::vector<Lasso> out;
  auto words = [](int max_len, bool allow_empty) {
    std::vector<Trace> ws;
    for (int len = allow_empty ? 0 : 1; len <= max_len; ++len)
      for (int bits = 0; bits < (1 << len); ++bits) {
        Trace t;
        for (int i = 0; i < len; ++i)
          t.push_back((bits >> i) & 1 ? "b" : "a");
        ws.push_back(t);
      }
    return ws;
  };
  for (const auto& u : words(max_u, true))
    for (const auto& v : words(max_v, false)) out.push_back({u, v});
  return out;
}

Dfa verdict_closure(const Monitor& m, Polarity pol) {
  return extension_close(nfa_to_dfa(afa_to_nfa(monitor_to_afa(m, pol))));
}

// The monitor's verdict on every lasso must track the formula's truth value:
// rejection fires exactly on violations, acceptance exactly on satisfactions.
void check_witnesses(const LogicFormula& f, const Monitor& m, Polarity pol) {
  Dfa dfa = verdict_closure(m, pol);
  for (const auto& w : all_lassos(4, 3)) {
    bool truth = eval_formula_lasso(f, w);
    bool fired = lasso_member(dfa, w);
    CAPTURE(print_formula(f));
    CAPTURE(print_monitor(m));
    CAPTURE(format_lasso(w, kAB));
    CHECK(fired == (pol == Polarity::Reject ? !truth : truth));
  }
}

void check_lasso_equal(const LogicFormula& f, const LogicFormula& g) {
  for (const auto& w : all_lassos(4, 3)) {
    CAPTURE(print_formula(f));
    CAPTURE(print_formula(g));
    CAPTURE(format_lasso(w, kAB));
    CHECK(eval_formula_lasso(f, w) == eval_formula_lasso(g, w));
  }
}

}  // namespace

TEST_CASE("formula parsing and fragments") {
  CHECK(fml("max X.([a]X && [b]ff)").fragments.safety);
  CHECK(fml("max X.([a]X && [b]ff)").fragments.max_only);
  CHECK_FALSE(fml("max X.([a]X && [b]ff)").fragments.cosafety);
  CHECK(fml("min X.(<a>X || <b>tt)").fragments.cosafety);
  CHECK(fml("min X.(<a>X || <b>tt)").fragments.min_only);
  CHECK_FALSE(fml("<a>tt").fragments.safety);
  CHECK(fml("<a>tt").fragments.cosafety);
  // no fixpoints at all: both max-only and min-only hold vacuously
  CHECK(fml("<a>tt").fragments.max_only);
  CHECK(fml("<a>tt").fragments.min_only);
  CHECK_THROWS_AS(fml("[a]X"), PreconditionError);
  CHECK_THROWS_AS(fml("[c]ff"), AlphabetError);
}

TEST_CASE("safety box synthesizes to prefix plus end") {
  Monitor m = synthesize(fml("[a]ff"));
  CHECK(print_monitor(m) == "a.no + end");
  CHECK(validate(m).regular);
  check_witnesses(fml("[a]ff"), m, Polarity::Reject);
}

TEST_CASE("cosafety diamond synthesizes to prefix plus end") {
  Monitor m = synthesize(fml("<a>tt"));
  CHECK(print_monitor(m) == "a.yes + end");
  check_witnesses(fml("<a>tt"), m, Polarity::Accept);
}

TEST_CASE("greatest fixpoints become recursion binders") {
  LogicFormula f = fml("max X.([a]X && [b]ff)");
  Monitor m = synthesize(f);
  CHECK(validate(m).regular);
  check_witnesses(f, m, Polarity::Reject);
  // equivalent to the hand-written loop monitor
  Dfa built = verdict_closure(m, Polarity::Reject);
  Dfa wanted =
      verdict_closure(mon("rec x0.(a.x0 + b.no + end)"), Polarity::Reject);
  CHECK(dfa_language_equal(built, wanted).equal);
}

TEST_CASE("rejection monitors for diamonds cover the other actions") {
  LogicFormula f = fml("<a>tt");
  Monitor m = synthesize(f, Polarity::Reject);
  check_witnesses(f, m, Polarity::Reject);
}

TEST_CASE("two-sided formulas need the parallel operators") {
  LogicFormula f = fml("max X.([a]X && [b]ff) && <a>tt");
  Monitor m = synthesize(f, Polarity::Reject);
  CHECK_FALSE(validate(m).regular);
  check_witnesses(f, m, Polarity::Reject);
  CHECK_THROWS_AS(synthesize(f, Polarity::Reject, SynthTarget::Regular),
                  PreconditionError);
}

TEST_CASE("direction must match the fragment") {
  CHECK_THROWS_AS(synthesize(fml("min X.(<a>X || <b>tt)"), Polarity::Reject),
                  PreconditionError);
  CHECK_THROWS_AS(synthesize(fml("max X.[a]X"), Polarity::Accept),
                  PreconditionError);
}

TEST_CASE("default direction follows the fragment") {
  Monitor safety = synthesize(fml("max X.([a]X && [b]ff)"));
  CHECK(print_monitor(safety).find("no") != std::string::npos);
  CHECK(print_monitor(safety).find("yes") == std::string::npos);
  Monitor cosafety = synthesize(fml("min X.(<a>X || <b>tt)"));
  CHECK(print_monitor(cosafety).find("yes") != std::string::npos);
  CHECK(print_monitor(cosafety).find("no") == std::string::npos);
}

TEST_CASE("least fixpoints synthesize acceptance loops") {
  LogicFormula f = fml("min X.(<a>X || <b>tt)");
  Monitor m = synthesize(f);
  check_witnesses(f, m, Polarity::Accept);
}

TEST_CASE("verdict monitors read back as truth constants") {
  CHECK(print_formula(monitor_to_formula(mon("yes"), Polarity::Accept)) ==
        "tt");
  CHECK(print_formula(monitor_to_formula(mon("no"), Polarity::Reject)) ==
        "ff");
}

TEST_CASE("rejection monitors read back as box formulas") {
  LogicFormula f = monitor_to_formula(mon("a.no + end"), Polarity::Reject);
  CHECK(f.fragments.safety);
  check_lasso_equal(f, fml("[a]ff"));

  LogicFormula loop =
      monitor_to_formula(mon("rec x0.(a.x0 + b.no + end)"), Polarity::Reject);
  CHECK(loop.fragments.safety);
  check_lasso_equal(loop, fml("max X.([a]X && [b]ff)"));
}

TEST_CASE("acceptance monitors read back as diamond formulas") {
  LogicFormula f = monitor_to_formula(mon("a.yes + end"), Polarity::Accept);
  CHECK(f.fragments.cosafety);
  check_lasso_equal(f, fml("<a>tt"));

  LogicFormula loop =
      monitor_to_formula(mon("rec x0.(a.x0 + b.yes + end)"), Polarity::Accept);
  CHECK(loop.fragments.cosafety);
  check_lasso_equal(loop, fml("min X.(<a>X || <b>tt)"));
}

TEST_CASE("parallel monitors read back with both connectives") {
  Monitor m = mon("a.no + end & b.no + end");
  LogicFormula f = monitor_to_formula(m, Polarity::Reject);
  // & rejects when either side does, so the violations form a disjunction
  // of the halves' violations; as a formula that is a conjunction
  check_lasso_equal(f, fml("[a]ff && [b]ff"));
}

TEST_CASE("synthesis and readback round trip on the witness grid") {
  for (const char* text :
       {"[a]ff", "max X.([a]X && [b]ff)", "[a][b]ff && [b]ff",
        "max X.([a]X && [b][a]ff)"}) {
    LogicFormula f = fml(text);
    LogicFormula back =
        monitor_to_formula(synthesize(f, Polarity::Reject), Polarity::Reject);
    check_lasso_equal(f, back);
  }
  for (const char* text :
       {"<a>tt", "min X.(<a>X || <b>tt)", "<a><b>tt || <b>tt"}) {
    LogicFormula f = fml(text);
    LogicFormula back =
        monitor_to_formula(synthesize(f, Polarity::Accept), Polarity::Accept);
    check_lasso_equal(f, back);
  }
}

TEST_CASE("max formulas flatten into safety form") {
  LogicFormula stay = translate_max_to_safety(fml("max X.([a]X && [b]ff)"));
  CHECK(stay.fragments.safety);
  check_lasso_equal(stay, fml("max X.([a]X && [b]ff)"));

  LogicFormula dia = translate_max_to_safety(fml("<a>tt"));
  CHECK(dia.fragments.safety);
  check_lasso_equal(dia, fml("[b]ff"));

  LogicFormula top = translate_max_to_safety(fml("[a]ff || [b]ff"));
  CHECK(top.fragments.safety);
  check_lasso_equal(top, fml("tt"));

  CHECK_THROWS_AS(translate_max_to_safety(fml("min X.(<a>X || <b>tt)")),
                  PreconditionError);
}

TEST_CASE("lasso evaluation validates its input") {
  LogicFormula f = fml("tt");
  CHECK_THROWS_AS(eval_formula_lasso(f, Lasso{{"a"}, {}}), PreconditionError);
  CHECK_THROWS_AS(eval_formula_lasso(f, Lasso{{"c"}, {"a"}}), AlphabetError);
}
