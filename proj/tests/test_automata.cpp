#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "montk/automata.hpp"
#include "montk/parse.hpp"
#include "montk/semantics.hpp"
#include "montk/term.hpp"
#include "montk/trace.hpp"

using namespace montk;

namespace {

const AlphabetPtr kAB = Alphabet::make({"a", "b"});

Monitor mon(const std::string& text) { return parse_monitor(text, kAB); }

std::vector<Trace> all_traces(int max_len) {
  std::vector<Trace> out;
  for (int len = 0; len <= max_len; ++len)
    for (int bits = 0; bits < (1 << len); ++bits) {
      Trace t;
      for (int i = 0; i < len; ++i)
        t.push_back((bits >> i) & 1 ? "b" : "a");
      out.push_back(t);
    }
  return out;
}

int sole_accepting(const Afa& afa) {
  int found = -1;
  for (int s = 0; s < afa.num_states; ++s)
    if (afa.accepting[static_cast<size_t>(s)]) {
      REQUIRE(found == -1);
      found = s;
    }
  REQUIRE(found != -1);
  return found;
}

// Hand-built NFA accepting exactly the single-word language {"a"}.
Nfa just_a() {
  Nfa n;
  n.alphabet = kAB;
  n.num_states = 2;
  n.initial = {0};
  n.delta.assign(2, std::vector<std::vector<int>>(2));
  n.delta[0][static_cast<size_t>(kAB->index_of("a"))] = {1};
  n.accepting = {0, 1};
  n.accepting[0] = 0;
  n.accepting[1] = 1;
  n.state_names = {"s0", "s1"};
  return n;
}

Dfa accept_dfa(const std::string& text) {
  Monitor m = mon(text);
  return nfa_to_dfa(afa_to_nfa(monitor_to_afa(m, Polarity::Accept)));
}

// Random closed regular monitor with prefix-guarded variables.
struct RegularGen {
  std::mt19937_64 rng;
  int binder_count = 0;

  TermPtr gen(int depth, std::vector<std::string> guarded,
              std::vector<std::string> unguarded) {
    std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 5);
    switch (pick(rng)) {
      case 0:
        return Term::verdict_of(static_cast<Verdict>(
            std::uniform_int_distribution<int>(0, 2)(rng)));
      case 1: {
        if (guarded.empty())
          return Term::verdict_of(static_cast<Verdict>(
              std::uniform_int_distribution<int>(0, 2)(rng)));
        std::uniform_int_distribution<size_t> v(0, guarded.size() - 1);
        return Term::var(guarded[v(rng)]);
      }
      case 2: {
        // crossing a prefix makes every bound variable usable again
        for (auto& x : unguarded) guarded.push_back(x);
        std::string act = std::uniform_int_distribution<int>(0, 1)(rng) ? "b"
                                                                        : "a";
        return Term::prefix(act, gen(depth - 1, guarded, {}));
      }
      case 3:
        return Term::choice(gen(depth - 1, guarded, unguarded),
                            gen(depth - 1, guarded, unguarded));
      case 4: {
        std::string name = "g" + std::to_string(binder_count++);
        unguarded.push_back(name);
        return Term::rec(name, gen(depth - 1, guarded, unguarded));
      }
      default:
        return Term::choice(
            Term::prefix("a", gen(depth - 1, guarded, unguarded)),
            gen(depth - 1, guarded, unguarded));
    }
  }

  Monitor monitor(int depth) { return normalize(gen(depth, {}, {}), kAB); }
};

}  // namespace

TEST_CASE("dnf algebra keeps a minimal antichain") {
  Dnf one = Dnf::atom(1);
  Dnf two = Dnf::atom(2);
  CHECK(dnf_equal(dnf_or(one, one), one));
  CHECK(dnf_equal(dnf_and(one, Dnf::t()), one));
  CHECK(dnf_equal(dnf_and(one, Dnf::f()), Dnf::f()));
  CHECK(dnf_equal(dnf_or(one, Dnf::f()), one));
  CHECK(dnf_or(one, Dnf::t()).is_true());
  // a cube subsumed by a smaller one disappears
  Dnf both = dnf_and(one, two);
  CHECK(dnf_or(one, both).cubes == std::vector<std::vector<int>>{{1}});
  CHECK(both.cubes == std::vector<std::vector<int>>{{1, 2}});
}

TEST_CASE("acceptance automaton of a single prefix") {
  Afa afa = monitor_to_afa(mon("a.yes"), Polarity::Accept);
  // one state per action-prefixed subterm plus the absorbing verdict state
  CHECK(afa.num_states == 2);
  int sink = sole_accepting(afa);
  REQUIRE(afa.initial.cubes.size() == 1);
  REQUIRE(afa.initial.cubes[0].size() == 1);
  int init = afa.initial.cubes[0][0];
  CHECK(init != sink);
  int ia = kAB->index_of("a");
  int ib = kAB->index_of("b");
  CHECK(dnf_equal(afa.delta[static_cast<size_t>(init)][static_cast<size_t>(ia)],
                  Dnf::atom(sink)));
  CHECK(afa.delta[static_cast<size_t>(init)][static_cast<size_t>(ib)]
            .is_false());
  // the sink absorbs, so the language is extension closed by construction
  CHECK_FALSE(afa_accepts(afa, {}));
  CHECK(afa_accepts(afa, {"a"}));
  CHECK_FALSE(afa_accepts(afa, {"b"}));
  CHECK(afa_accepts(afa, {"a", "b"}));
}

TEST_CASE("verdict monitors as automata") {
  CHECK(afa_accepts(monitor_to_afa(mon("yes"), Polarity::Accept), {}));
  CHECK(afa_accepts(monitor_to_afa(mon("yes"), Polarity::Accept), {"b"}));
  CHECK_FALSE(afa_accepts(monitor_to_afa(mon("no"), Polarity::Accept), {}));
  CHECK_FALSE(afa_accepts(monitor_to_afa(mon("end"), Polarity::Accept), {}));
  CHECK(afa_accepts(monitor_to_afa(mon("no"), Polarity::Reject), {}));
}

TEST_CASE("parallel operators build conjunctions and disjunctions") {
  Afa acc = monitor_to_afa(mon("a.yes & b.yes"), Polarity::Accept);
  // & must satisfy both halves: one cube with two atoms
  REQUIRE(acc.initial.cubes.size() == 1);
  CHECK(acc.initial.cubes[0].size() == 2);
  // rejection of & needs only one half: two singleton cubes
  Afa rej = monitor_to_afa(mon("a.no & b.no"), Polarity::Reject);
  REQUIRE(rej.initial.cubes.size() == 2);
  CHECK(rej.initial.cubes[0].size() == 1);
  CHECK(rej.initial.cubes[1].size() == 1);
}

TEST_CASE("automaton state count stays within the term size") {
  for (const char* text :
       {"a.yes", "a.yes + b.no", "rec x0.(a.x0 + b.no + end)",
        "a.yes + end & b.no + end", "rec x0.(a.(x0 & b.yes + end) + end)"}) {
    Monitor m = mon(text);
    CHECK(monitor_to_afa(m, Polarity::Accept).num_states <= term_size(m));
    CHECK(monitor_to_afa(m, Polarity::Reject).num_states <= term_size(m));
  }
}

TEST_CASE("runs and automata agree on reactive monitors") {
  std::vector<std::string> monitors = {
      "a.yes + b.no",
      "a.yes + b.yes + end",
      "rec x0.(a.x0 + b.no + end)",
      "a.yes + end & b.no + end",
      "a.yes + end | a.no + end",
      "rec x0.(a.(x0 & b.no + end) + b.yes + end) + end",
      "a.b.a.yes + end",
  };
  auto traces = all_traces(5);
  for (const auto& text : monitors) {
    Monitor m = mon(text);
    Afa acc = monitor_to_afa(m, Polarity::Accept);
    Afa rej = monitor_to_afa(m, Polarity::Reject);
    for (const auto& t : traces) {
      RunResult r = run_finite_trace(m, t);
      REQUIRE(r.outcome != Outcome::BudgetExceeded);
      CAPTURE(text);
      CAPTURE(format_trace(t, kAB));
      CHECK(afa_accepts(acc, t) == (r.outcome == Outcome::Accepted));
      CHECK(afa_accepts(rej, t) == (r.outcome == Outcome::Rejected));
    }
  }
}

TEST_CASE("obligation sets stay singletons without conjunctions") {
  Afa afa = monitor_to_afa(mon("rec x0.(a.x0 + b.no + end)"), Polarity::Reject);
  Nfa nfa = afa_to_nfa(afa);
  CHECK(nfa.num_states <= afa.num_states);
}

TEST_CASE("powerset stages preserve the language") {
  std::vector<std::string> monitors = {
      "a.yes + b.no",
      "rec x0.(a.x0 + b.yes + end)",
      "a.yes + end & b.yes + end",
      "rec x0.(a.(x0 & rec x1.(b.x1 + a.yes + end)) + b.yes + end) + end",
  };
  auto traces = all_traces(6);
  for (const auto& text : monitors) {
    for (Polarity pol : {Polarity::Accept, Polarity::Reject}) {
      Afa afa = monitor_to_afa(mon(text), pol);
      Nfa nfa = afa_to_nfa(afa);
      Dfa dfa = nfa_to_dfa(nfa);
      for (const auto& t : traces) {
        CAPTURE(text);
        CAPTURE(format_trace(t, kAB));
        bool want = afa_accepts(afa, t);
        CHECK(nfa_accepts(nfa, t) == want);
        CHECK(dfa_accepts(dfa, t) == want);
      }
    }
  }
}

TEST_CASE("one-pass determinization matches the staged route") {
  std::vector<std::string> monitors = {
      "a.yes + b.no",
      "rec x0.(a.x0 + b.yes + end)",
      "a.yes + end & b.yes + end",
      "a.yes + end | a.no + end",
      "rec x0.(a.(x0 & rec x1.(b.x1 + a.yes + end)) + b.yes + end) + end",
  };
  auto traces = all_traces(6);
  for (const auto& text : monitors) {
    for (Polarity pol : {Polarity::Accept, Polarity::Reject}) {
      Monitor m = mon(text);
      Afa afa = monitor_to_afa(m, pol);
      Dfa staged = nfa_to_dfa(afa_to_nfa(afa));
      Dfa direct = afa_to_dfa(afa);
      Dfa fused = monitor_to_dfa(m, pol);
      CAPTURE(text);
      CHECK(dfa_language_equal(staged, direct).equal);
      CHECK(dfa_language_equal(staged, fused).equal);
      // canonical formulas can only merge states, never split them
      CHECK(direct.num_states <= staged.num_states);
      for (const auto& t : traces) {
        CAPTURE(format_trace(t, kAB));
        CHECK(dfa_accepts(direct, t) == afa_accepts(afa, t));
      }
    }
  }
}

TEST_CASE("amortized evaluation agrees with stepping obligation sets") {
  auto traces = all_traces(6);
  for (const char* text :
       {"a.yes + b.no", "rec x0.(a.x0 + b.yes + end)",
        "a.yes + end & b.yes + end",
        "rec x0.(a.(x0 & rec x1.(b.x1 + a.yes + end)) + b.yes + end) + end"}) {
    for (Polarity pol : {Polarity::Accept, Polarity::Reject}) {
      Afa afa = monitor_to_afa(mon(text), pol);
      AfaEvaluator eval(afa);
      for (const auto& t : traces) {
        CAPTURE(text);
        CAPTURE(format_trace(t, kAB));
        CHECK(eval.accepts(t) == afa_accepts(afa, t));
      }
    }
  }
}

TEST_CASE("determinization guards report instead of running away") {
  Monitor m = mon("rec x0.(a.(x0 & b.yes + end) + b.yes + end)");
  Afa afa = monitor_to_afa(m, Polarity::Accept);
  PowersetLimits one_state;
  one_state.max_states = 1;
  CHECK_THROWS_AS(afa_to_dfa(afa, one_state), ResourceGuardError);
  CHECK_THROWS_AS(monitor_to_dfa(m, Polarity::Accept, one_state),
                  ResourceGuardError);
  PowersetLimits tiny_graph;
  tiny_graph.max_formula_nodes = 3;
  CHECK_THROWS_AS(afa_to_dfa(afa, tiny_graph), ResourceGuardError);
}

TEST_CASE("extension closure absorbs at accepting states") {
  Nfa plain = just_a();
  CHECK(nfa_accepts(plain, {"a"}));
  CHECK_FALSE(nfa_accepts(plain, {"a", "b"}));
  Nfa closed = extension_close(plain);
  CHECK(closed.extension_closed);
  CHECK(nfa_accepts(closed, {"a"}));
  CHECK(nfa_accepts(closed, {"a", "b"}));
  CHECK(nfa_accepts(closed, {"a", "a", "b"}));
  CHECK_FALSE(nfa_accepts(closed, {}));
  CHECK_FALSE(nfa_accepts(closed, {"b", "a"}));
  // closing is idempotent up to language equality
  Dfa once = nfa_to_dfa(closed);
  Dfa twice = nfa_to_dfa(extension_close(closed));
  CHECK(dfa_language_equal(once, twice).equal);
  // the DFA-level closure agrees with the NFA-level one
  Dfa via_dfa = extension_close(nfa_to_dfa(plain));
  CHECK(via_dfa.extension_closed);
  CHECK(dfa_language_equal(once, via_dfa).equal);
}

TEST_CASE("language comparison reports a shortest counterexample") {
  Dfa left = accept_dfa("a.yes");
  Dfa right = accept_dfa("rec x0.(a.yes + b.x0)");
  CHECK(dfa_language_equal(left, left).equal);
  LanguageCompare cmp = dfa_language_equal(left, right);
  REQUIRE_FALSE(cmp.equal);
  CHECK(cmp.counterexample == Trace{"b", "a"});
  CHECK(cmp.side == 1);
}

TEST_CASE("lasso membership asks for an accepted prefix") {
  Dfa dfa = extension_close(nfa_to_dfa(just_a()));
  CHECK(lasso_member(dfa, Lasso{{"a"}, {"b"}}));
  CHECK(lasso_member(dfa, Lasso{{}, {"a", "b"}}));
  CHECK_FALSE(lasso_member(dfa, Lasso{{}, {"b"}}));
  CHECK_FALSE(lasso_member(dfa, Lasso{{"b"}, {"a"}}));
}

TEST_CASE("distinguishing suffixes separate residual languages") {
  Dfa dfa = extension_close(nfa_to_dfa(just_a()));
  auto same = distinguishing_suffix(dfa, {"a"}, {"a"});
  CHECK_FALSE(same.has_value());
  auto eps = distinguishing_suffix(dfa, {"a"}, {"b"});
  REQUIRE(eps.has_value());
  CHECK(eps->empty());
  auto from_init = distinguishing_suffix(dfa, {}, {"a"});
  REQUIRE(from_init.has_value());
  CHECK(from_init->empty());
  // two dead prefixes have equal (empty) residuals
  CHECK_FALSE(distinguishing_suffix(dfa, {"b"}, {"b", "a"}).has_value());
}

TEST_CASE("monitors rebuilt from automata keep the language") {
  Nfa closed = extension_close(just_a());
  Monitor rebuilt = nfa_to_monitor(closed, Verdict::Yes);
  CHECK(print_monitor(rebuilt) == "a.yes");
  CHECK(validate(rebuilt).regular);

  // an automaton with an accepting initial state collapses to the verdict
  Dfa top = accept_dfa("yes");
  CHECK(top.extension_closed == false);
  Dfa closed_top = extension_close(top);
  Monitor now = dfa_to_monitor(closed_top, Verdict::Yes);
  CHECK(print_monitor(now) == "yes");

  // an empty language collapses to end
  Nfa none = just_a();
  none.accepting.assign(2, 0);
  Monitor nothing = nfa_to_monitor(extension_close(none), Verdict::Yes);
  CHECK(print_monitor(nothing) == "end");

  // a loop becomes a recursion binder
  Dfa loop = extension_close(accept_dfa("rec x0.(a.x0 + b.yes + end)"));
  Monitor back = dfa_to_monitor(loop, Verdict::Yes, "d");
  CHECK(validate(back).deterministic);
  Dfa again = extension_close(accept_dfa(print_monitor(back)));
  CHECK(dfa_language_equal(loop, again).equal);
}

TEST_CASE("rebuilding requires extension closure") {
  CHECK_THROWS_AS(nfa_to_monitor(just_a(), Verdict::Yes), PreconditionError);
}

TEST_CASE("random regular monitors survive the automaton round trip") {
  RegularGen gen{std::mt19937_64{20260823}, 0};
  auto traces = all_traces(5);
  int interesting = 0;
  for (int i = 0; i < 60; ++i) {
    Monitor m = gen.monitor(4);
    Afa afa = monitor_to_afa(m, Polarity::Accept);
    Nfa nfa = afa_to_nfa(afa);
    CHECK(dfa_language_equal(nfa_to_dfa(nfa), monitor_to_dfa(m, Polarity::Accept))
              .equal);
    Monitor back = nfa_to_monitor(extension_close(nfa), Verdict::Yes);
    Afa back_afa = monitor_to_afa(back, Polarity::Accept);
    bool nonempty = false;
    for (const auto& t : traces) {
      CAPTURE(print_monitor(m));
      CAPTURE(format_trace(t, kAB));
      bool want = afa_accepts(afa, t);
      CHECK(afa_accepts(back_afa, t) == want);
      nonempty = nonempty || want;
    }
    if (nonempty) ++interesting;
    CHECK(validate(back).regular);
  }
  // the corpus is not degenerate
  CHECK(interesting >= 10);
}
