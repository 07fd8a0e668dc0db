#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "montk/term.hpp"
#include "montk/trace.hpp"

namespace montk {

// Benchmark languages over the four-letter alphabet {0, 1, #, $}.
//
// Fix an index width l >= 1 and let k = 2^l.  A well-formed block w is a
// string of (l+1)*k bits consisting of k groups "a_i b_i" where a_i is an
// l-bit index and b_i a payload bit, such that the indices a_1..a_k form a
// permutation of {0,1}^l.  Two blocks are equivalent when they assign the
// same payload bit to every index.
//
// Family A ("two equivalent blocks"): traces containing a delimited block
// "#w#", later a delimited block "#w'#" immediately followed by '$', with
// exactly one '$' strictly between the two delimited blocks, and w
// equivalent to w'.
//
// Family U ("increasing chain"): traces of the form b#w1#w2#...#wn#$t where
// b is a (possibly empty) run of bits, n >= 1, every wi is a well-formed
// block, the decoded payload strings are strictly increasing
// lexicographically, and t is arbitrary.

enum class GapFamily { A, U };

AlphabetPtr gap_alphabet();  // the shared {0,1,#,$} alphabet

struct GapParams {
  int l = 1;       // index width (>= 1)
  int k = 2;       // 2^l
  AlphabetPtr alphabet;

  static GapParams make(int l);
};

// --- reference membership, by direct string scanning -------------------
// These functions look only at the trace text; they share no code with the
// monitor or automaton machinery and serve as the ground truth that the
// constructed monitors are tested against.

bool is_block(int l, std::string_view w);
std::string encode_payload(int l, std::string_view payload);  // {0,1}^k -> block
std::string decode_block(int l, std::string_view w);          // block -> {0,1}^k
bool blocks_equivalent(int l, std::string_view w1, std::string_view w2);
std::vector<std::string> all_blocks(int l);  // every well-formed block, sorted

bool oracle_membership(GapFamily family, const GapParams& params, const std::string& text);
bool oracle_membership(GapFamily family, const GapParams& params, const Trace& trace);

std::string trace_to_text(const Trace& trace);
Trace text_to_trace(const GapParams& params, const std::string& text);

// --- monitor constructions ---------------------------------------------

// Named building blocks of the two benchmark monitors.  Kinds that scan up
// to a delimiter take a continuation monitor; Find/NoMore take a concrete
// bit string (a full (l+1)-bit group for Find, an l-bit index for NoMore).
enum class AuxKind {
  SkipHash,    // run the continuation after some later '#'
  NextHash,    // skip bits, continue after the first '#'
  NextDollar,  // skip bits and '#', continue after the first '$'
  SkipLast,    // continue after a '#' that opens the final delimited block
  All,         // every index occurs in the block read up to here
  NoMore,      // the given index does not occur again before the next '#'
  Unique,      // no index occurs twice in the current block
  Perm,        // All and Unique combined: the block is well formed
  Find,        // the given (l+1)-bit group occurs in the current block
  Match,       // the group occurs in the final block after the next '$'
  Matching,    // every group of the current block reoccurs there
  Smaller,     // the next block's payload is lexicographically larger
  Last         // the current block is directly followed by "#$"
};

struct AuxArgs {
  const Monitor* continuation = nullptr;  // SkipHash/NextHash/NextDollar/SkipLast
  std::string bits;                       // Find/NoMore/Match
};

Monitor build_aux(AuxKind kind, const GapParams& params, const AuxArgs& args = {});

// The full benchmark monitors (parallel, padded to be reactive).
Monitor build_gap_monitor(GapFamily family, const GapParams& params);

// --- distinguishing-prefix trace family --------------------------------
// A single trace t_K = t_0 $ s_0 $ t_1 $ s_1 $ ... $ t_{K-1} $ s_{K-1}
// interleaving encodings of subsets of C with fillers from subsets of D,
// where C and D partition the payload space {0,1}^k.  Every proper prefix
// ending at a different t_i boundary is distinguishable with respect to
// family A membership.

struct TKParams {
  int l = 1;
  int k = 2;
  std::vector<std::string> c_side;                 // payload strings in C
  std::vector<std::string> d_side;                 // payload strings in D
  std::vector<std::vector<std::string>> c_subsets; // enumeration of P(C)
  std::vector<std::vector<std::string>> d_subsets; // enumeration of P(D)

  static TKParams defaults();                      // l=1, C={00,01}, D={10,11}
  static TKParams random_split(int l, std::uint64_t seed);
};

std::string build_tk_text(const TKParams& params);
Trace build_tk(const TKParams& params);

// --- size table ---------------------------------------------------------

struct BlowupLimits {
  long long max_nfa_states = 200000;
  long long max_dfa_states = 500000;
  long long max_monitor_symbols = 50'000'000;
};

struct BlowupRow {
  int l = 0;
  long long parallel_size = 0;
  long long afa_states_accept = -1;   // -1: skipped by resource limits
  long long afa_states_reject = -1;
  long long nfa_states_accept = -1;
  long long nfa_states_reject = -1;
  long long dfa_states_accept = -1;
  long long dfa_states_reject = -1;
  long long regular_size = -1;
  long long deterministic_size = -1;
  bool regular_equivalent = false;     // regular output checked against input
  bool deterministic_equivalent = false;
  std::string note;                    // which stage hit a limit, if any
};

struct BlowupReport {
  GapFamily family = GapFamily::A;
  std::vector<BlowupRow> rows;
};

BlowupReport blowup_report(GapFamily family, const std::vector<int>& widths,
                           const BlowupLimits& limits = {});

}  // namespace montk
