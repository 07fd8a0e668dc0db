#include "montk/gap.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <stdexcept>

#include "montk/error.hpp"

namespace montk {

namespace {

bool is_bit(char c) { return c == '0' || c == '1'; }

int block_length(int l) { return (l + 1) * (1 << l); }

std::string index_bits(int value, int width) {
  std::string out(width, '0');
  for (int j = 0; j < width; ++j)
    if ((value >> (width - 1 - j)) & 1) out[j] = '1';
  return out;
}

}  // namespace

AlphabetPtr gap_alphabet() {
  static const AlphabetPtr alphabet =
      Alphabet::make({"0", "1", "#", "$"});
  return alphabet;
}

GapParams GapParams::make(int l) {
  if (l < 1) throw PreconditionError("index width must be at least 1");
  if (l > 16) throw ResourceGuardError("index width too large");
  GapParams p;
  p.l = l;
  p.k = 1 << l;
  p.alphabet = gap_alphabet();
  return p;
}

// --- reference membership ----------------------------------------------
// Everything below up to the builder section works on plain strings and is
// the ground truth the monitors are compared against.

bool is_block(int l, std::string_view w) {
  const int k = 1 << l;
  const int group = l + 1;
  if (static_cast<int>(w.size()) != group * k) return false;
  std::vector<char> seen(static_cast<size_t>(k), 0);
  for (int g = 0; g < k; ++g) {
    int idx = 0;
    for (int j = 0; j < group; ++j) {
      char c = w[static_cast<size_t>(g * group + j)];
      if (!is_bit(c)) return false;
      if (j < l) idx = idx * 2 + (c == '1');
    }
    if (seen[static_cast<size_t>(idx)]) return false;
    seen[static_cast<size_t>(idx)] = 1;
  }
  return true;  // k groups, k distinct indexes: a permutation
}

std::string encode_payload(int l, std::string_view payload) {
  const int k = 1 << l;
  if (static_cast<int>(payload.size()) != k ||
      payload.find_first_not_of("01") != std::string_view::npos)
    throw PreconditionError("payload must be a bit string of length 2^l");
  std::string out;
  out.reserve(static_cast<size_t>(block_length(l)));
  for (int i = 0; i < k; ++i) {
    out += index_bits(i, l);
    out.push_back(payload[static_cast<size_t>(i)]);
  }
  return out;
}

std::string decode_block(int l, std::string_view w) {
  if (!is_block(l, w)) throw PreconditionError("not a well-formed block");
  const int k = 1 << l;
  const int group = l + 1;
  std::string out(static_cast<size_t>(k), '0');
  for (int g = 0; g < k; ++g) {
    int idx = 0;
    for (int j = 0; j < l; ++j)
      idx = idx * 2 + (w[static_cast<size_t>(g * group + j)] == '1');
    out[static_cast<size_t>(idx)] = w[static_cast<size_t>(g * group + l)];
  }
  return out;
}

bool blocks_equivalent(int l, std::string_view w1, std::string_view w2) {
  return is_block(l, w1) && is_block(l, w2) &&
         decode_block(l, w1) == decode_block(l, w2);
}

std::vector<std::string> all_blocks(int l) {
  const int k = 1 << l;
  if (l > 2) throw ResourceGuardError("block enumeration supports l <= 2");
  std::vector<int> order(static_cast<size_t>(k));
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::string> out;
  do {
    for (int mask = 0; mask < (1 << k); ++mask) {
      std::string w;
      for (int g = 0; g < k; ++g) {
        w += index_bits(order[static_cast<size_t>(g)], l);
        w.push_back((mask >> g) & 1 ? '1' : '0');
      }
      out.push_back(std::move(w));
    }
  } while (std::next_permutation(order.begin(), order.end()));
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// Family A: some delimited block "#w#", a later "#w'#" followed directly by
// '$', exactly one '$' strictly between the two, and w equivalent to w'.
bool member_a(int l, const std::string& t) {
  const int len = block_length(l);
  const int n = static_cast<int>(t.size());
  std::vector<int> dollars(static_cast<size_t>(n) + 1, 0);
  for (int i = 0; i < n; ++i)
    dollars[static_cast<size_t>(i) + 1] =
        dollars[static_cast<size_t>(i)] + (t[static_cast<size_t>(i)] == '$');

  struct Hit {
    int end;  // index one past the pattern (first pattern: of its trailing '#')
    std::string decoded;
  };
  std::vector<Hit> first, second;
  for (int i = 0; i + len + 1 < n; ++i) {
    if (t[static_cast<size_t>(i)] != '#') continue;
    if (t[static_cast<size_t>(i + len + 1)] != '#') continue;
    std::string_view w(t.data() + i + 1, static_cast<size_t>(len));
    if (!is_block(l, w)) continue;
    std::string dec = decode_block(l, w);
    first.push_back({i + len + 1, dec});
    if (i + len + 2 < n && t[static_cast<size_t>(i + len + 2)] == '$')
      second.push_back({i, dec});  // reuse: 'end' holds the start index here
  }
  for (const Hit& p1 : first)
    for (const Hit& p2 : second) {
      if (p2.end <= p1.end) continue;  // second pattern starts strictly later
      int between = dollars[static_cast<size_t>(p2.end)] -
                    dollars[static_cast<size_t>(p1.end) + 1];
      if (between == 1 && p1.decoded == p2.decoded) return true;
    }
  return false;
}

// Family U: bits, then "#w1#w2#...#wn#$" with n >= 1 well-formed blocks
// whose decoded payloads strictly increase, then anything.
bool member_u(int l, const std::string& t) {
  const int len = block_length(l);
  const int n = static_cast<int>(t.size());
  int i = 0;
  while (i < n && is_bit(t[static_cast<size_t>(i)])) ++i;
  if (i >= n || t[static_cast<size_t>(i)] != '#') return false;
  ++i;
  int blocks = 0;
  std::string prev;
  for (;;) {
    if (i < n && t[static_cast<size_t>(i)] == '$') return blocks >= 1;
    if (i + len >= n) return false;  // no room for a block and its '#'
    std::string_view w(t.data() + i, static_cast<size_t>(len));
    if (!is_block(l, w)) return false;
    std::string dec = decode_block(l, w);
    if (blocks > 0 && prev >= dec) return false;
    if (t[static_cast<size_t>(i + len)] != '#') return false;
    prev = std::move(dec);
    ++blocks;
    i += len + 1;
  }
}

}  // namespace

std::string trace_to_text(const Trace& trace) {
  std::string out;
  out.reserve(trace.size());
  for (const std::string& a : trace) {
    if (a.size() != 1)
      throw PreconditionError("trace action is not a single character");
    out += a;
  }
  return out;
}

Trace text_to_trace(const GapParams& params, const std::string& text) {
  Trace out;
  out.reserve(text.size());
  for (char c : text) {
    std::string a(1, c);
    if (params.alphabet->index_of(a) < 0)
      throw AlphabetError("character '" + a + "' is not in the alphabet");
    out.push_back(std::move(a));
  }
  return out;
}

bool oracle_membership(GapFamily family, const GapParams& params,
                       const std::string& text) {
  for (char c : text)
    if (c != '0' && c != '1' && c != '#' && c != '$')
      throw AlphabetError(std::string("character '") + c +
                          "' is not in the alphabet");
  return family == GapFamily::A ? member_a(params.l, text)
                                : member_u(params.l, text);
}

bool oracle_membership(GapFamily family, const GapParams& params,
                       const Trace& trace) {
  return oracle_membership(family, params, trace_to_text(trace));
}

// --- monitor constructions ---------------------------------------------

namespace {

struct GapBuilder {
  const GapParams& p;
  int counter = 0;

  std::string fresh() { return "g" + std::to_string(counter++); }

  static TermPtr pre(const char* a, TermPtr m) {
    return Term::prefix(a, std::move(m));
  }

  static TermPtr sum(const std::vector<TermPtr>& parts) {
    TermPtr out = nullptr;
    for (const TermPtr& t : parts)
      out = out ? Term::choice(out, t) : t;
    return out;
  }

  static TermPtr conj(const std::vector<TermPtr>& parts) {
    TermPtr out = nullptr;
    for (const TermPtr& t : parts)
      out = out ? Term::par_and(out, t) : t;
    return out;
  }

  // Prefix chain spelling out a bit string.
  static TermPtr chain(std::string_view bits, TermPtr m) {
    for (int j = static_cast<int>(bits.size()) - 1; j >= 0; --j)
      m = Term::prefix(std::string(1, bits[static_cast<size_t>(j)]), m);
    return m;
  }

  // {0,1}^depth . leaf as a shared complete binary tree of choices.
  static TermPtr btree(int depth, TermPtr leaf) {
    TermPtr t = std::move(leaf);
    for (int d = 0; d < depth; ++d)
      t = Term::choice(pre("0", t), pre("1", t));
    return t;
  }

  // Binary trie over all bit strings of the given depth; the leaf function
  // may return null to prune a path.  Returns null when fully pruned.
  static TermPtr trie(int depth, std::string& path,
                      const std::function<TermPtr(const std::string&)>& leaf) {
    if (depth == 0) return leaf(path);
    path.push_back('0');
    TermPtr lo = trie(depth - 1, path, leaf);
    path.back() = '1';
    TermPtr hi = trie(depth - 1, path, leaf);
    path.pop_back();
    if (lo) lo = pre("0", lo);
    if (hi) hi = pre("1", hi);
    if (lo && hi) return Term::choice(lo, hi);
    return lo ? lo : hi;
  }

  static TermPtr trie(int depth,
                      const std::function<TermPtr(const std::string&)>& leaf) {
    std::string path;
    return trie(depth, path, leaf);
  }

  // rec x.((0.x + 1.x + #.x + $.x) | #.m): run m after any later '#'.
  TermPtr skip_hash(TermPtr m) {
    std::string x = fresh();
    TermPtr v = Term::var(x);
    TermPtr loop = sum({pre("0", v), pre("1", v), pre("#", v), pre("$", v)});
    return Term::rec(x, Term::par_or(loop, pre("#", std::move(m))));
  }

  // rec x.(0.x + 1.x + #.m): skip bits, continue past the first '#'.
  TermPtr next_hash(TermPtr m) {
    std::string x = fresh();
    TermPtr v = Term::var(x);
    return Term::rec(x, sum({pre("0", v), pre("1", v), pre("#", std::move(m))}));
  }

  // rec x.(0.x + 1.x + #.x + $.m): skip bits and '#', continue past '$'.
  TermPtr next_dollar(TermPtr m) {
    std::string x = fresh();
    TermPtr v = Term::var(x);
    return Term::rec(
        x, sum({pre("0", v), pre("1", v), pre("#", v), pre("$", std::move(m))}));
  }

  // rec y.(0.y + 1.y + #.$.yes): the current block ends with "#$".
  TermPtr final_block_detector() {
    std::string y = fresh();
    TermPtr v = Term::var(y);
    return Term::rec(
        y, sum({pre("0", v), pre("1", v), pre("#", pre("$", Term::yes()))}));
  }

  // rec x.(0.x + 1.x + #.x + #.(m & detector)): guess the '#' that opens
  // the final delimited block and run m on it.
  TermPtr skip_last(TermPtr m) {
    std::string x = fresh();
    TermPtr v = Term::var(x);
    TermPtr commit =
        pre("#", Term::par_and(std::move(m), final_block_detector()));
    return Term::rec(
        x, sum({pre("0", v), pre("1", v), pre("#", v), std::move(commit)}));
  }

  // One component per index f: loop over whole groups | f.{0,1}.yes.
  TermPtr all_indexes() {
    std::vector<TermPtr> parts;
    for (int f = 0; f < p.k; ++f) {
      std::string x = fresh();
      TermPtr v = Term::var(x);
      TermPtr payload = Term::choice(pre("0", Term::yes()), pre("1", Term::yes()));
      TermPtr detect = chain(index_bits(f, p.l), payload);
      parts.push_back(Term::rec(x, Term::par_or(btree(p.l + 1, v), detect)));
    }
    return conj(parts);
  }

  // rec x.(#.yes + (Sigma_{g != f} g.{0,1}.x)): index f never reappears in
  // the current block.
  TermPtr no_more(const std::string& f) {
    std::string x = fresh();
    TermPtr v = Term::var(x);
    TermPtr payload = Term::choice(pre("0", v), pre("1", v));
    TermPtr others = trie(p.l, [&](const std::string& g) -> TermPtr {
      return g == f ? nullptr : payload;
    });
    return Term::rec(x, Term::choice(pre("#", Term::yes()), others));
  }

  // rec x.(#.yes + ({0,1}^{l+1}.x & Sigma_f f.{0,1}.no_more(f))).
  TermPtr unique_indexes() {
    std::string x = fresh();
    TermPtr v = Term::var(x);
    TermPtr spawn = trie(p.l, [&](const std::string& f) -> TermPtr {
      TermPtr nm = no_more(f);
      return Term::choice(pre("0", nm), pre("1", nm));
    });
    TermPtr step = Term::par_and(btree(p.l + 1, v), spawn);
    return Term::rec(x, Term::choice(pre("#", Term::yes()), step));
  }

  // The current bits up to '#' form a well-formed block.
  TermPtr perm() { return Term::par_and(all_indexes(), unique_indexes()); }

  // rec x.(f.yes + Sigma_{g != f} g.x): group f occurs in the current
  // block, scanning group-aligned.
  TermPtr find(const std::string& f) {
    std::string x = fresh();
    TermPtr v = Term::var(x);
    TermPtr body = trie(p.l + 1, [&](const std::string& g) -> TermPtr {
      return g == f ? Term::yes() : v;
    });
    return Term::rec(x, body);
  }

  // Group f occurs in the final block after the next '$'.
  TermPtr match(const std::string& f) {
    return next_dollar(skip_last(find(f)));
  }

  // rec x.(#.yes + Sigma_f f.(x & match(f))): every group of the current
  // block reoccurs in the final block after the next '$'.
  TermPtr matching() {
    std::string x = fresh();
    TermPtr v = Term::var(x);
    TermPtr step = trie(p.l + 1, [&](const std::string& f) -> TermPtr {
      return Term::par_and(v, match(f));
    });
    return Term::rec(x, Term::choice(pre("#", Term::yes()), step));
  }

  // The next block's payload is strictly larger: some index f flips 0 to 1
  // while every smaller index keeps its payload bit.
  TermPtr smaller() {
    std::vector<TermPtr> options;
    for (int f = 0; f < p.k; ++f) {
      std::string fb = index_bits(f, p.l);
      std::vector<TermPtr> factors;
      factors.push_back(find(fb + "0"));
      factors.push_back(next_hash(find(fb + "1")));
      for (int g = 0; g < f; ++g) {
        std::string gb = index_bits(g, p.l);
        std::vector<TermPtr> agree;
        for (const char* b : {"0", "1"})
          agree.push_back(
              Term::par_and(find(gb + b), next_hash(find(gb + b))));
        factors.push_back(sum(agree));
      }
      options.push_back(conj(factors));
    }
    return sum(options);
  }

  TermPtr family_a() {
    TermPtr body = conj({perm(), next_dollar(skip_last(perm())), matching()});
    return skip_hash(std::move(body));
  }

  TermPtr family_u() {
    std::string x = fresh();
    TermPtr v = Term::var(x);
    TermPtr rest = Term::par_or(final_block_detector(),
                                Term::par_and(smaller(), v));
    TermPtr body = next_hash(Term::par_and(perm(), std::move(rest)));
    return Term::rec(x, std::move(body));
  }
};

Monitor finish(const GapParams& p, TermPtr root) {
  return pad(make_monitor(std::move(root), p.alphabet));
}

}  // namespace

Monitor build_aux(AuxKind kind, const GapParams& params, const AuxArgs& args) {
  GapBuilder b{params};
  TermPtr cont = Term::yes();
  if (args.continuation) {
    require_same_alphabet(args.continuation->alphabet, params.alphabet);
    cont = args.continuation->root;
  }
  auto need_group = [&](int width) {
    if (static_cast<int>(args.bits.size()) != width ||
        args.bits.find_first_not_of("01") != std::string::npos)
      throw PreconditionError("expected a bit string of length " +
                              std::to_string(width));
  };
  TermPtr root;
  switch (kind) {
    case AuxKind::SkipHash: root = b.skip_hash(cont); break;
    case AuxKind::NextHash: root = b.next_hash(cont); break;
    case AuxKind::NextDollar: root = b.next_dollar(cont); break;
    case AuxKind::SkipLast: root = b.skip_last(cont); break;
    case AuxKind::All: root = b.all_indexes(); break;
    case AuxKind::NoMore:
      need_group(params.l);
      root = b.no_more(args.bits);
      break;
    case AuxKind::Unique: root = b.unique_indexes(); break;
    case AuxKind::Perm: root = b.perm(); break;
    case AuxKind::Find:
      need_group(params.l + 1);
      root = b.find(args.bits);
      break;
    case AuxKind::Match:
      need_group(params.l + 1);
      root = b.match(args.bits);
      break;
    case AuxKind::Matching: root = b.matching(); break;
    case AuxKind::Smaller: root = b.smaller(); break;
    case AuxKind::Last: root = b.final_block_detector(); break;
  }
  return finish(params, std::move(root));
}

Monitor build_gap_monitor(GapFamily family, const GapParams& params) {
  GapBuilder b{params};
  TermPtr root = family == GapFamily::A ? b.family_a() : b.family_u();
  return finish(params, std::move(root));
}

// --- distinguishing-prefix trace ---------------------------------------

namespace {

std::vector<std::vector<std::string>> subset_chain(
    const std::vector<std::string>& side) {
  // Non-empty subsets in size-then-lex order, then the empty set.
  std::vector<std::vector<std::string>> out;
  const int n = static_cast<int>(side.size());
  for (int mask = 1; mask < (1 << n); ++mask) {
    std::vector<std::string> subset;
    for (int i = 0; i < n; ++i)
      if ((mask >> i) & 1) subset.push_back(side[static_cast<size_t>(i)]);
    out.push_back(std::move(subset));
  }
  std::sort(out.begin(), out.end(),
            [](const std::vector<std::string>& a,
               const std::vector<std::string>& b) {
              if (a.size() != b.size()) return a.size() < b.size();
              return a < b;
            });
  out.emplace_back();
  return out;
}

}  // namespace

TKParams TKParams::defaults() {
  TKParams p;
  p.l = 1;
  p.k = 2;
  p.c_side = {"00", "01"};
  p.d_side = {"10", "11"};
  p.c_subsets = subset_chain(p.c_side);
  p.d_subsets = subset_chain(p.d_side);
  return p;
}

TKParams TKParams::random_split(int l, std::uint64_t seed) {
  if (l < 1 || l > 2)
    throw ResourceGuardError("trace family supports l in {1, 2}");
  TKParams p;
  p.l = l;
  p.k = 1 << l;
  const int payloads = 1 << p.k;
  std::vector<std::string> all;
  for (int v = 0; v < payloads; ++v) all.push_back(index_bits(v, p.k));
  std::mt19937_64 rng(seed);
  std::shuffle(all.begin(), all.end(), rng);
  p.c_side.assign(all.begin(), all.begin() + payloads / 2);
  p.d_side.assign(all.begin() + payloads / 2, all.end());
  std::sort(p.c_side.begin(), p.c_side.end());
  std::sort(p.d_side.begin(), p.d_side.end());
  p.c_subsets = subset_chain(p.c_side);
  p.d_subsets = subset_chain(p.d_side);
  std::shuffle(p.c_subsets.begin(), p.c_subsets.end() - 1, rng);
  std::shuffle(p.d_subsets.begin(), p.d_subsets.end() - 1, rng);
  return p;
}

std::string build_tk_text(const TKParams& params) {
  if (params.c_subsets.size() != params.d_subsets.size() ||
      params.c_subsets.empty())
    throw PreconditionError("subset enumerations must be non-empty and equal length");
  auto segment = [&](const std::vector<std::string>& payloads) {
    std::string out = "#";
    for (const std::string& w : payloads)
      out += encode_payload(params.l, w) + "#";
    return out;
  };
  std::string out;
  for (size_t i = 0; i < params.c_subsets.size(); ++i) {
    if (i) out += "$";
    out += segment(params.c_subsets[i]);
    out += "$";
    out += segment(params.d_subsets[i]);
  }
  return out;
}

Trace build_tk(const TKParams& params) {
  return text_to_trace(GapParams::make(params.l), build_tk_text(params));
}

}  // namespace montk
