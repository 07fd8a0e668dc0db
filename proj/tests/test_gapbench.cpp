#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "montk/automata.hpp"
#include "montk/gap.hpp"
#include "montk/semantics.hpp"
#include "montk/term.hpp"
#include "montk/trace.hpp"
#include "montk/transform.hpp"

using namespace montk;

namespace {

const char* kLetters = "01#$";

std::string random_text(std::mt19937_64& rng, int max_len) {
  int len = static_cast<int>(rng() % static_cast<unsigned>(max_len + 1));
  std::string out;
  for (int i = 0; i < len; ++i) out += kLetters[rng() % 4];
  return out;
}

std::vector<std::string> all_texts(int max_len) {
  std::vector<std::string> out{""};
  std::size_t from = 0;
  for (int len = 1; len <= max_len; ++len) {
    std::size_t upto = out.size();
    for (std::size_t i = from; i < upto; ++i)
      for (int c = 0; c < 4; ++c) out.push_back(out[i] + kLetters[c]);
    from = upto;
  }
  return out;
}

std::vector<std::string> four_bit_strings() {
  std::vector<std::string> out;
  for (int bits = 0; bits < 16; ++bits) {
    std::string w;
    for (int j = 3; j >= 0; --j) w += ((bits >> j) & 1) ? '1' : '0';
    out.push_back(w);
  }
  return out;
}

bool no_rejection_verdict(const Monitor& m) {
  for (const TermPtr& t : subterms(m.root))
    if (t->is_verdict(Verdict::No)) return false;
  return true;
}

// Members, near-members, and corrupted members of either language: delimited
// block pairs in the family's shape, with bit flips and misplaced separators.
std::vector<std::string> structured_corpus(GapFamily family, int l, int count,
                                           std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto blocks = all_blocks(l);
  int width = (l + 1) * (1 << l);
  std::vector<std::string> out;
  while (static_cast<int>(out.size()) < count) {
    std::string w1 = blocks[rng() % blocks.size()];
    std::string w2 = rng() % 2 ? w1 : blocks[rng() % blocks.size()];
    std::string text = family == GapFamily::A ? "#" + w1 + "#$#" + w2 + "#$"
                                              : "#" + w1 + "#" + w2 + "#$";
    switch (rng() % 5) {
      case 0:  // flip one encoded bit
        text[1 + rng() % static_cast<unsigned>(width)] ^= 1;
        break;
      case 1:  // insert a separator somewhere
        text.insert(rng() % (text.size() + 1), 1, "$#"[rng() % 2]);
        break;
      case 2:  // drop one action
        text.erase(rng() % text.size(), 1);
        break;
      case 3:  // trailing junk must not disturb a verdict
        text += random_text(rng, 6);
        break;
      default:  // keep the clean pair
        break;
    }
    out.push_back(text);
  }
  return out;
}

}  // namespace

TEST_CASE("the end-of-chain tracker accepts exactly after its delimiters") {
  GapParams p = GapParams::make(1);
  Monitor last = build_aux(AuxKind::Last, p);
  CHECK(term_size(last) == 20);
  auto outcome = [&](const std::string& text) {
    return run_finite_trace(last, text_to_trace(p, text)).outcome;
  };
  CHECK(outcome("#$") == Outcome::Accepted);
  CHECK(outcome("01#$") == Outcome::Accepted);
  CHECK(outcome("01#$00") == Outcome::Accepted);  // verdicts persist
  CHECK(outcome("01$") == Outcome::Inconclusive);
  CHECK(outcome("01#") == Outcome::Inconclusive);
  CHECK(outcome("0#1$") == Outcome::Inconclusive);
}

TEST_CASE("the block validator agrees with the scanner on every block") {
  GapParams p1 = GapParams::make(1);
  Monitor perm = build_aux(AuxKind::Perm, p1);
  Afa afa = monitor_to_afa(perm, Polarity::Accept);
  for (const std::string& w : four_bit_strings()) {
    CAPTURE(w);
    CHECK(afa_accepts(afa, text_to_trace(p1, w + "#")) == is_block(1, w));
    // nothing is settled before the closing delimiter
    CHECK_FALSE(afa_accepts(afa, text_to_trace(p1, w)));
  }
  CHECK(afa_accepts(afa, text_to_trace(p1, "0011#01")));

  GapParams p2 = GapParams::make(2);
  AfaEvaluator eval(monitor_to_afa(build_aux(AuxKind::Perm, p2),
                                   Polarity::Accept));
  int blocks_seen = 0;
  for (int bits = 0; bits < (1 << 12); ++bits) {
    std::string w;
    for (int j = 11; j >= 0; --j) w += ((bits >> j) & 1) ? '1' : '0';
    bool want = is_block(2, w);
    blocks_seen += want;
    if (eval.accepts(text_to_trace(p2, w + "#")) != want) {
      CAPTURE(w);
      CHECK(false);
    }
  }
  CHECK(blocks_seen == 384);
}

TEST_CASE("block validator size grows quadratically in the block count") {
  for (int l = 1; l <= 3; ++l) {
    GapParams p = GapParams::make(l);
    double k = static_cast<double>(p.k);
    CHECK(static_cast<double>(term_size(build_aux(AuxKind::Perm, p))) <=
          60.0 * k * k);
  }
}

TEST_CASE("two-equivalent-blocks monitor matches the scanner at width 1") {
  GapParams p = GapParams::make(1);
  Monitor m = build_gap_monitor(GapFamily::A, p);
  CHECK(no_rejection_verdict(m));
  CHECK(check_consistent(m).consistent);
  AfaEvaluator eval(monitor_to_afa(m, Polarity::Accept));
  auto in = [&](const std::string& text) {
    bool got = eval.accepts(text_to_trace(p, text));
    CHECK(got == oracle_membership(GapFamily::A, p, text));
    return got;
  };
  CHECK(in("#0011#$#0011#$"));
  CHECK_FALSE(in("#0011#$#0010#$"));   // payload maps differ
  CHECK(in("#0011#$#1100#$"));         // same map, different block order
  CHECK(in("$#0011#$#0011#$"));        // leading separator is fine
  CHECK_FALSE(in("#0011##0011#$"));    // no separator between the patterns
  CHECK_FALSE(in("#0011#$$#0011#$"));  // two separators between the patterns

  // every delimited pair of 4-bit strings, one separator apart
  int members = 0;
  for (const std::string& w1 : four_bit_strings())
    for (const std::string& w2 : four_bit_strings()) {
      std::string text = "#" + w1 + "#$#" + w2 + "#$";
      bool want = is_block(1, w1) && is_block(1, w2) &&
                  blocks_equivalent(1, w1, w2);
      CAPTURE(text);
      CHECK(oracle_membership(GapFamily::A, p, text) == want);
      CHECK(eval.accepts(text_to_trace(p, text)) == want);
      members += want;
    }
  // 4 payload maps, 2 block orders on each side
  CHECK(members == 16);
}

TEST_CASE("two-equivalent-blocks monitor matches the scanner on short traces") {
  GapParams p = GapParams::make(1);
  AfaEvaluator eval(
      monitor_to_afa(build_gap_monitor(GapFamily::A, p), Polarity::Accept));
  for (const std::string& text : all_texts(6)) {
    if (eval.accepts(text_to_trace(p, text)) !=
        oracle_membership(GapFamily::A, p, text)) {
      CAPTURE(text);
      CHECK(false);
    }
  }
}

TEST_CASE("increasing-chain monitor matches the scanner at width 1") {
  GapParams p = GapParams::make(1);
  Monitor m = build_gap_monitor(GapFamily::U, p);
  CHECK(no_rejection_verdict(m));
  CHECK(check_consistent(m).consistent);
  AfaEvaluator eval(monitor_to_afa(m, Polarity::Accept));
  auto in = [&](const std::string& text) {
    bool got = eval.accepts(text_to_trace(p, text));
    CHECK(got == oracle_membership(GapFamily::U, p, text));
    return got;
  };
  CHECK(in("#0010#0011#$"));
  CHECK_FALSE(in("#0011#0010#$"));  // decreasing
  CHECK(in("#0010#$"));             // one block suffices
  CHECK_FALSE(in("#$"));            // zero blocks do not
  CHECK_FALSE(in("#0010#0010#$"));  // not strictly increasing
  CHECK_FALSE(in("#0010#0011$"));   // missing closing delimiter
  CHECK(in("01#0010#0111#$"));      // leading bits allowed
  CHECK_FALSE(in("#0000#0011#$"));  // first string is not a block

  int members = 0;
  for (const std::string& w1 : four_bit_strings()) {
    {
      std::string text = "#" + w1 + "#$";
      CHECK(eval.accepts(text_to_trace(p, text)) == is_block(1, w1));
    }
    for (const std::string& w2 : four_bit_strings()) {
      std::string text = "#" + w1 + "#" + w2 + "#$";
      bool want = is_block(1, w1) && is_block(1, w2) &&
                  decode_block(1, w1) < decode_block(1, w2);
      CAPTURE(text);
      CHECK(oracle_membership(GapFamily::U, p, text) == want);
      CHECK(eval.accepts(text_to_trace(p, text)) == want);
      members += want;
    }
  }
  // 6 increasing payload pairs, 2 block orders on each side
  CHECK(members == 24);
}

TEST_CASE("both monitors match the scanner on random and structured traces") {
  std::mt19937_64 rng(20260826);
  for (GapFamily family : {GapFamily::A, GapFamily::U}) {
    GapParams p = GapParams::make(1);
    AfaEvaluator eval(
        monitor_to_afa(build_gap_monitor(family, p), Polarity::Accept));
    int members = 0;
    for (const std::string& text : structured_corpus(family, 1, 400, rng())) {
      bool want = oracle_membership(family, p, text);
      members += want;
      if (eval.accepts(text_to_trace(p, text)) != want) {
        CAPTURE(text);
        CHECK(false);
      }
    }
    CHECK(members >= 40);  // the corpus exercises both answers
    for (int i = 0; i < 1000; ++i) {
      std::string text = random_text(rng, 20);
      if (eval.accepts(text_to_trace(p, text)) !=
          oracle_membership(family, p, text)) {
        CAPTURE(text);
        CHECK(false);
      }
    }
  }
}

TEST_CASE("width-2 monitors match the scanner by sampling") {
  std::mt19937_64 rng(20260827);
  GapParams p = GapParams::make(2);
  {
    AfaEvaluator eval(monitor_to_afa(build_gap_monitor(GapFamily::A, p),
                                     Polarity::Accept));
    int members = 0;
    for (const std::string& text :
         structured_corpus(GapFamily::A, 2, 120, rng())) {
      bool want = oracle_membership(GapFamily::A, p, text);
      members += want;
      if (eval.accepts(text_to_trace(p, text)) != want) {
        CAPTURE(text);
        CHECK(false);
      }
    }
    CHECK(members >= 12);
    for (int i = 0; i < 500; ++i) {
      std::string text = random_text(rng, 20);
      if (eval.accepts(text_to_trace(p, text)) !=
          oracle_membership(GapFamily::A, p, text)) {
        CAPTURE(text);
        CHECK(false);
      }
    }
  }
  {
    // the width-2 chain monitor's acceptance formulas outgrow their listed
    // form, so membership goes through the one-pass deterministic automaton
    Dfa dfa = monitor_to_dfa(build_gap_monitor(GapFamily::U, p),
                             Polarity::Accept);
    int members = 0;
    for (const std::string& text :
         structured_corpus(GapFamily::U, 2, 400, rng())) {
      bool want = oracle_membership(GapFamily::U, p, text);
      members += want;
      if (dfa_accepts(dfa, text_to_trace(p, text)) != want) {
        CAPTURE(text);
        CHECK(false);
      }
    }
    CHECK(members >= 40);
    for (int i = 0; i < 500; ++i) {
      std::string text = random_text(rng, 20);
      if (dfa_accepts(dfa, text_to_trace(p, text)) !=
          oracle_membership(GapFamily::U, p, text)) {
        CAPTURE(text);
        CHECK(false);
      }
    }
  }
}

TEST_CASE("membership is preserved under appended suffixes") {
  std::mt19937_64 rng(20260828);
  for (GapFamily family : {GapFamily::A, GapFamily::U}) {
    GapParams p = GapParams::make(1);
    int members = 0;
    for (const std::string& text : structured_corpus(family, 1, 300, rng())) {
      if (!oracle_membership(family, p, text)) continue;
      ++members;
      for (int i = 0; i < 4; ++i) {
        std::string extended = text + random_text(rng, 10);
        CAPTURE(extended);
        CHECK(oracle_membership(family, p, extended));
      }
    }
    CHECK(members >= 30);
  }
}

TEST_CASE("finite membership transfers to infinite continuations") {
  GapParams p = GapParams::make(1);
  Monitor m = build_gap_monitor(GapFamily::U, p);
  Dfa closed = extension_close(monitor_to_dfa(m, Polarity::Accept));
  std::mt19937_64 rng(20260829);
  std::vector<std::string> texts = structured_corpus(GapFamily::U, 1, 200,
                                                     rng());
  for (int i = 0; i < 200; ++i) texts.push_back(random_text(rng, 12));
  int members = 0;
  for (const std::string& text : texts) {
    bool finite = oracle_membership(GapFamily::U, p, text);
    members += finite;
    // pumping '#' can never complete the missing '$' terminator, so the
    // lasso lands in the language's closure exactly for finite members
    if (lasso_member(closed, Lasso{text_to_trace(p, text), {"#"}}) != finite) {
      CAPTURE(text);
      CHECK(false);
    }
  }
  CHECK(members >= 20);
}

TEST_CASE("interleaved distinguishing trace is made of well-formed blocks") {
  for (const TKParams& p :
       {TKParams::defaults(), TKParams::random_split(1, 99)}) {
    std::string text = build_tk_text(p);
    CHECK(std::count(text.begin(), text.end(), '$') == 7);
    // every maximal bit run between delimiters is a block
    int runs = 0;
    for (std::size_t i = 0; i < text.size();) {
      std::size_t j = i;
      while (j < text.size() && (text[j] == '0' || text[j] == '1')) ++j;
      if (j > i) {
        ++runs;
        CAPTURE(text.substr(i, j - i));
        CHECK(is_block(p.l, text.substr(i, j - i)));
      }
      i = j + (j == i ? 1 : 0);
    }
    CHECK(runs >= 8);
    Trace t = build_tk(p);
    CHECK(trace_to_text(t) == text);
  }
}

TEST_CASE("size table reports each stage and survives its guards") {
  BlowupLimits limits;
  limits.max_nfa_states = 2000;  // the acceptance automaton trips this
  limits.max_dfa_states = 5000;  // plenty for the table, keeps retries short
  BlowupReport report = blowup_report(GapFamily::U, {1}, limits);
  REQUIRE(report.rows.size() == 1);
  const BlowupRow& row = report.rows[0];
  CHECK(row.l == 1);
  CHECK(row.parallel_size == 559);
  CHECK(row.afa_states_accept > 0);
  CHECK(row.nfa_states_accept == -1);  // guarded out
  CHECK(row.nfa_states_reject == 217);
  // distinct reachable transition functions of the acceptance automaton
  CHECK(row.dfa_states_accept == 59);
  CHECK(row.dfa_states_reject == 36);
  CHECK(row.regular_size == 1024);
  CHECK(row.regular_size > row.parallel_size);
  CHECK(row.regular_equivalent);
  CHECK(row.deterministic_size > 0);
  CHECK(row.deterministic_equivalent);
  CHECK(row.note.find("acceptance nfa over limit") != std::string::npos);
}

TEST_CASE("monitor sizes across widths stay at their recorded values") {
  // the first family's size is genuinely quadratic in the block count; the
  // chain family repeats its comparison subterms, so it grows faster
  std::vector<long long> a_sizes, u_sizes;
  for (int l = 1; l <= 3; ++l) {
    GapParams p = GapParams::make(l);
    a_sizes.push_back(term_size(build_gap_monitor(GapFamily::A, p)));
    u_sizes.push_back(term_size(build_gap_monitor(GapFamily::U, p)));
    double k = static_cast<double>(p.k);
    CHECK(static_cast<double>(a_sizes.back()) <= 250.0 * k * k);
  }
  CHECK(a_sizes == std::vector<long long>{914, 2806, 9694});
  CHECK(u_sizes == std::vector<long long>{559, 3095, 20327});
}
