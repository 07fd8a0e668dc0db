#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "montk/error.hpp"
#include "montk/gap.hpp"
#include "montk/semantics.hpp"
#include "montk/transform.hpp"

namespace montk {

namespace {

constexpr int kMaxDescentDepth = 10000;
constexpr long long kOmegaProductLimit = 5'000'000;
constexpr long long kConsistencyPairLimit = 1'000'000;

const std::string kYesMarker = "!yes";
const std::string kNoMarker = "!no";

Nfa dfa_as_nfa(const Dfa& dfa) {
  Nfa nfa;
  nfa.alphabet = dfa.alphabet;
  nfa.num_states = dfa.num_states;
  nfa.initial = {dfa.initial};
  const std::size_t acts = dfa.alphabet->size();
  nfa.delta.assign(static_cast<std::size_t>(dfa.num_states),
                   std::vector<std::vector<int>>(acts));
  for (std::size_t q = 0; q < nfa.delta.size(); ++q)
    for (std::size_t a = 0; a < acts; ++a)
      nfa.delta[q][a] = {dfa.delta[q][a]};
  nfa.accepting = dfa.accepting;
  nfa.state_names = dfa.state_names;
  nfa.extension_closed = dfa.extension_closed;
  return nfa;
}

Nfa closed_verdict_nfa(const Monitor& m, Polarity polarity,
                       const PowersetLimits& limits) {
  try {
    return extension_close(afa_to_nfa(monitor_to_afa(m, polarity), limits));
  } catch (const ResourceGuardError&) {
    // The obligation-set automaton can outgrow its own determinization by
    // orders of magnitude; the deterministic automaton is just as good a
    // starting point for the rebuild.
    return dfa_as_nfa(extension_close(monitor_to_dfa(m, polarity, limits)));
  }
}

Dfa closed_verdict_dfa(const Monitor& m, Polarity polarity,
                       const PowersetLimits& limits) {
  return extension_close(monitor_to_dfa(m, polarity, limits));
}

void guard_symbols(const TermPtr& root, long long limit) {
  if (term_size(root) > limit)
    throw ResourceGuardError("rebuilt monitor exceeds the symbol limit");
}

bool verdict_occurs(const TermPtr& root, Verdict v) {
  for (const TermPtr& t : subterms(root))
    if (t->is_verdict(v)) return true;
  return false;
}

// Product of the closed acceptance and rejection automata, rebuilt as one
// deterministic term: acceptance states become yes, rejection states no,
// pairs from which no verdict is reachable are dropped.  Consistency makes
// the two verdict marks mutually exclusive on reachable pairs.
struct TwoVerdictDescent {
  const Dfa& acc;
  const Dfa& rej;
  std::vector<std::pair<int, int>> pairs;
  std::map<std::pair<int, int>, int> index;
  std::vector<std::vector<int>> next;
  std::vector<int> mark;  // 0 none, 1 yes, 2 no
  std::vector<char> live;

  std::string prefix;
  int counter = 0;
  int depth = 0;
  std::map<int, std::string> open;
  std::map<int, TermPtr> done;

  TwoVerdictDescent(const Dfa& a, const Dfa& r, std::string binder_prefix)
      : acc(a), rej(r), prefix(std::move(binder_prefix)) {}

  int intern(int x, int y, long long limit) {
    auto [it, fresh] =
        index.emplace(std::make_pair(x, y), static_cast<int>(pairs.size()));
    if (fresh) {
      if (static_cast<long long>(pairs.size()) >= limit)
        throw ResourceGuardError("product of verdict automata too large");
      pairs.emplace_back(x, y);
    }
    return it->second;
  }

  void build(long long pair_limit) {
    std::size_t nact = acc.alphabet->size();
    intern(acc.initial, rej.initial, pair_limit);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      auto [x, y] = pairs[i];
      bool is_yes = acc.accepting[static_cast<size_t>(x)] != 0;
      bool is_no = rej.accepting[static_cast<size_t>(y)] != 0;
      if (is_yes && is_no)
        throw PreconditionError(
            "inconsistent monitor: a trace is both accepted and rejected");
      mark.push_back(is_yes ? 1 : (is_no ? 2 : 0));
      next.emplace_back();
      if (mark.back() != 0) {
        // verdict pairs absorb; their rows are never expanded
        next.back().assign(nact, static_cast<int>(i));
        continue;
      }
      for (std::size_t a = 0; a < nact; ++a)
        next.back().push_back(intern(acc.delta[static_cast<size_t>(x)][a],
                                     rej.delta[static_cast<size_t>(y)][a],
                                     pair_limit));
    }
    std::vector<std::vector<int>> rev(pairs.size());
    for (std::size_t s = 0; s < pairs.size(); ++s)
      if (mark[s] == 0)
        for (int t : next[s]) rev[static_cast<size_t>(t)].push_back(static_cast<int>(s));
    live.assign(pairs.size(), 0);
    std::deque<int> work;
    for (std::size_t s = 0; s < pairs.size(); ++s)
      if (mark[s] != 0) {
        live[s] = 1;
        work.push_back(static_cast<int>(s));
      }
    while (!work.empty()) {
      int s = work.front();
      work.pop_front();
      for (int p : rev[static_cast<size_t>(s)])
        if (!live[static_cast<size_t>(p)]) {
          live[static_cast<size_t>(p)] = 1;
          work.push_back(p);
        }
    }
  }

  TermPtr walk(int s, std::set<std::string>& refs) {
    if (mark[static_cast<size_t>(s)] == 1) return Term::yes();
    if (mark[static_cast<size_t>(s)] == 2) return Term::no();
    if (auto it = done.find(s); it != done.end()) return it->second;
    if (auto it = open.find(s); it != open.end()) {
      refs.insert(it->second);
      return Term::var(it->second);
    }
    if (++depth > kMaxDescentDepth)
      throw ResourceGuardError("monitor rebuild recursion too deep");
    std::string name = prefix + std::to_string(counter++);
    open.emplace(s, name);
    std::set<std::string> local;
    TermPtr body = nullptr;
    for (std::size_t a = 0; a < acc.alphabet->size(); ++a) {
      int t = next[static_cast<size_t>(s)][a];
      if (!live[static_cast<size_t>(t)]) continue;
      TermPtr child = walk(t, local);
      TermPtr summand = Term::prefix(acc.alphabet->action(a), std::move(child));
      body = body ? Term::choice(std::move(body), std::move(summand))
                  : std::move(summand);
    }
    open.erase(s);
    --depth;
    if (!body) body = Term::end();  // live non-verdict pairs have successors
    bool self = local.erase(name) > 0;
    if (self) body = Term::rec(name, std::move(body));
    if (local.empty()) done.emplace(s, body);
    refs.insert(local.begin(), local.end());
    return body;
  }
};

// Replaces every sum that offers a marker action by the corresponding
// verdict and drops binders whose body collapsed to a verdict.  Memoized on
// node identity so shared subtrees stay shared.
struct MarkerRewrite {
  std::unordered_map<const Term*, TermPtr> memo;

  static void flatten(const TermPtr& t, std::vector<TermPtr>& out) {
    if (t->kind == TermKind::Choice) {
      flatten(t->left, out);
      flatten(t->right, out);
    } else {
      out.push_back(t);
    }
  }

  TermPtr walk(const TermPtr& t) {
    if (auto it = memo.find(t.get()); it != memo.end()) return it->second;
    TermPtr out;
    switch (t->kind) {
      case TermKind::Verdict:
      case TermKind::Var:
        out = t;
        break;
      case TermKind::Prefix:
        if (t->label == kYesMarker)
          out = Term::yes();
        else if (t->label == kNoMarker)
          out = Term::no();
        else
          out = Term::prefix(t->label, walk(t->left));
        break;
      case TermKind::Choice: {
        std::vector<TermPtr> summands;
        flatten(t, summands);
        bool to_yes = false;
        bool to_no = false;
        for (const TermPtr& s : summands) {
          if (s->kind != TermKind::Prefix) continue;
          if (s->label == kYesMarker) to_yes = true;
          if (s->label == kNoMarker) to_no = true;
        }
        if (to_yes && to_no)
          throw PreconditionError(
              "inconsistent monitor: a state offers both verdict markers");
        if (to_yes) {
          out = Term::yes();
        } else if (to_no) {
          out = Term::no();
        } else {
          out = nullptr;
          for (const TermPtr& s : summands) {
            TermPtr w = walk(s);
            out = out ? Term::choice(std::move(out), std::move(w)) : std::move(w);
          }
        }
        break;
      }
      case TermKind::Rec: {
        TermPtr body = walk(t->left);
        out = body->kind == TermKind::Verdict ? body
                                              : Term::rec(t->label, std::move(body));
        break;
      }
      case TermKind::ParAnd:
        out = Term::par_and(walk(t->left), walk(t->right));
        break;
      case TermKind::ParOr:
        out = Term::par_or(walk(t->left), walk(t->right));
        break;
    }
    memo.emplace(t.get(), out);
    return out;
  }
};

// A lasso whose expansion has a prefix accepted by `a` but none accepted by
// `b`, if one exists.  Both automata must be extension-closed, so "some
// prefix accepted" is "the run eventually stays accepting".
std::optional<Lasso> omega_gap(const Dfa& a, const Dfa& b) {
  std::size_t nact = a.alphabet->size();
  long long product = static_cast<long long>(a.num_states) * b.num_states;
  if (product > kOmegaProductLimit)
    throw ResourceGuardError("product for the infinite-trace check too large");
  int nb = b.num_states;
  int n = static_cast<int>(product);
  auto id = [nb](int x, int y) { return x * nb + y; };
  auto step = [&](int s, std::size_t act) {
    int x = s / nb;
    int y = s % nb;
    return id(a.delta[static_cast<size_t>(x)][act],
              b.delta[static_cast<size_t>(y)][act]);
  };
  // region: pairs where b has not (hence never) accepted
  std::vector<char> region(static_cast<size_t>(n), 0);
  for (int x = 0; x < a.num_states; ++x)
    for (int y = 0; y < nb; ++y)
      region[static_cast<size_t>(id(x, y))] = !b.accepting[static_cast<size_t>(y)];
  // largest set of region pairs with an infinite region-only continuation
  std::vector<int> count(static_cast<size_t>(n), 0);
  std::vector<std::vector<int>> rev(static_cast<size_t>(n));
  for (int s = 0; s < n; ++s) {
    if (!region[static_cast<size_t>(s)]) continue;
    for (std::size_t act = 0; act < nact; ++act) {
      int t = step(s, act);
      if (region[static_cast<size_t>(t)]) {
        ++count[static_cast<size_t>(s)];
        rev[static_cast<size_t>(t)].push_back(s);
      }
    }
  }
  std::vector<char> z = region;
  std::deque<int> removal;
  for (int s = 0; s < n; ++s)
    if (z[static_cast<size_t>(s)] && count[static_cast<size_t>(s)] == 0) {
      z[static_cast<size_t>(s)] = 0;
      removal.push_back(s);
    }
  while (!removal.empty()) {
    int s = removal.front();
    removal.pop_front();
    for (int p : rev[static_cast<size_t>(s)])
      if (z[static_cast<size_t>(p)] && --count[static_cast<size_t>(p)] == 0) {
        z[static_cast<size_t>(p)] = 0;
        removal.push_back(p);
      }
  }
  // reachability inside the region, recording shortest paths
  std::vector<char> seen(static_cast<size_t>(n), 0);
  std::vector<int> parent(static_cast<size_t>(n), -1);
  std::vector<int> via(static_cast<size_t>(n), -1);
  std::vector<int> order;
  int start = id(a.initial, b.initial);
  if (region[static_cast<size_t>(start)]) {
    seen[static_cast<size_t>(start)] = 1;
    order.push_back(start);
    for (std::size_t head = 0; head < order.size(); ++head) {
      int s = order[head];
      for (std::size_t act = 0; act < nact; ++act) {
        int t = step(s, act);
        if (!region[static_cast<size_t>(t)] || seen[static_cast<size_t>(t)]) continue;
        seen[static_cast<size_t>(t)] = 1;
        parent[static_cast<size_t>(t)] = s;
        via[static_cast<size_t>(t)] = static_cast<int>(act);
        order.push_back(t);
      }
    }
  }
  for (int s : order) {
    if (!a.accepting[static_cast<size_t>(s / nb)] || !z[static_cast<size_t>(s)])
      continue;
    Lasso witness;
    for (int at = s; at != start; at = parent[static_cast<size_t>(at)])
      witness.u.push_back(a.alphabet->action(static_cast<size_t>(via[static_cast<size_t>(at)])));
    std::reverse(witness.u.begin(), witness.u.end());
    // follow any z-successor until a pair repeats; the repeat closes the cycle
    std::map<int, std::size_t> pos;
    std::vector<std::string> tail;
    int cur = s;
    while (pos.find(cur) == pos.end()) {
      pos.emplace(cur, tail.size());
      for (std::size_t act = 0; act < nact; ++act) {
        int t = step(cur, act);
        if (z[static_cast<size_t>(t)]) {
          tail.push_back(a.alphabet->action(act));
          cur = t;
          break;
        }
      }
    }
    std::size_t cut = pos[cur];
    witness.u.insert(witness.u.end(), tail.begin(), tail.begin() + static_cast<long>(cut));
    witness.v.assign(tail.begin() + static_cast<long>(cut), tail.end());
    return witness;
  }
  return std::nullopt;
}

}  // namespace

Monitor parallel_to_regular(const Monitor& monitor, const TransformLimits& limits) {
  Nfa acc = closed_verdict_nfa(monitor, Polarity::Accept, limits.powerset);
  Nfa rej = closed_verdict_nfa(monitor, Polarity::Reject, limits.powerset);
  Monitor acc_half = nfa_to_monitor(acc, Verdict::Yes, "x");
  Monitor rej_half = nfa_to_monitor(rej, Verdict::No, "y");
  bool acc_empty = acc_half.root->is_verdict(Verdict::End);
  bool rej_empty = rej_half.root->is_verdict(Verdict::End);
  // A bare verdict as a summand would only fire on visible actions; wrapping
  // it in a binder gives selection a tau step to lift, keeping the verdict
  // reachable at the empty trace.
  auto liftable = [](TermPtr t, const char* name) {
    return t->kind == TermKind::Verdict ? Term::rec(name, std::move(t)) : t;
  };
  TermPtr root;
  if (acc_empty && rej_empty)
    root = Term::end();
  else if (acc_empty)
    root = rej_half.root;
  else if (rej_empty)
    root = acc_half.root;
  else
    root = Term::choice(liftable(acc_half.root, "xw"),
                        liftable(rej_half.root, "yw"));
  guard_symbols(root, limits.max_monitor_symbols);
  return make_monitor(std::move(root), monitor.alphabet);
}

Monitor determinize_regular(const Monitor& monitor, const TransformLimits& limits) {
  ValidationReport report = validate(monitor);
  if (!report.regular)
    throw PreconditionError("determinization starts from a parallel-free monitor");
  if (!report.closed)
    throw PreconditionError("determinization needs a closed monitor");
  ConsistencyResult consistency = check_consistent(monitor);
  if (!consistency.consistent)
    throw PreconditionError("determinization needs a consistent monitor");
  Dfa acc = closed_verdict_dfa(monitor, Polarity::Accept, limits.powerset);
  Dfa rej = closed_verdict_dfa(monitor, Polarity::Reject, limits.powerset);
  TwoVerdictDescent descent(acc, rej, "d");
  descent.build(limits.powerset.max_states);
  TermPtr root;
  if (!descent.live[0]) {
    root = Term::end();
  } else {
    std::set<std::string> refs;
    root = descent.walk(0, refs);
  }
  guard_symbols(root, limits.max_monitor_symbols);
  return make_monitor(std::move(root), monitor.alphabet);
}

Monitor parallel_to_deterministic(const Monitor& monitor,
                                  const TransformLimits& limits) {
  ConsistencyResult consistency = check_consistent(monitor);
  if (!consistency.consistent)
    throw PreconditionError("determinization needs a consistent monitor");
  Nfa acc = closed_verdict_nfa(monitor, Polarity::Accept, limits.powerset);
  Nfa rej = closed_verdict_nfa(monitor, Polarity::Reject, limits.powerset);
  AlphabetPtr extended =
      Alphabet::extend_unchecked(*monitor.alphabet, {kYesMarker, kNoMarker});
  std::size_t base_actions = monitor.alphabet->size();
  std::size_t yes_index = base_actions;
  std::size_t no_index = base_actions + 1;

  // one automaton whose accepted traces are w.!yes... for accepted w and
  // w.!no... for rejected w; the markers make the verdicts visible to the
  // deterministic rebuild
  Nfa combined;
  combined.alphabet = extended;
  int final_state = acc.num_states + rej.num_states;
  combined.num_states = final_state + 1;
  combined.delta.assign(static_cast<size_t>(combined.num_states),
                        std::vector<std::vector<int>>(extended->size()));
  combined.accepting.assign(static_cast<size_t>(combined.num_states), 0);
  combined.accepting[static_cast<size_t>(final_state)] = 1;
  for (int s = 0; s < acc.num_states; ++s) {
    for (std::size_t a = 0; a < base_actions; ++a)
      combined.delta[static_cast<size_t>(s)][a] = acc.delta[static_cast<size_t>(s)][a];
    if (acc.accepting[static_cast<size_t>(s)])
      combined.delta[static_cast<size_t>(s)][yes_index] = {final_state};
  }
  for (int s = 0; s < rej.num_states; ++s) {
    std::vector<std::vector<int>>& row =
        combined.delta[static_cast<size_t>(acc.num_states + s)];
    for (std::size_t a = 0; a < base_actions; ++a) {
      row[a] = rej.delta[static_cast<size_t>(s)][a];
      for (int& t : row[a]) t += acc.num_states;
    }
    if (rej.accepting[static_cast<size_t>(s)])
      row[no_index] = {final_state};
  }
  for (std::size_t a = 0; a < extended->size(); ++a)
    combined.delta[static_cast<size_t>(final_state)][a] = {final_state};
  combined.initial = acc.initial;
  for (int s : rej.initial) combined.initial.push_back(acc.num_states + s);
  std::sort(combined.initial.begin(), combined.initial.end());
  combined.extension_closed = true;
  for (int s = 0; s < combined.num_states; ++s)
    combined.state_names.push_back("c" + std::to_string(s));

  Dfa det = nfa_to_dfa(combined, limits.powerset);
  Monitor marked = dfa_to_monitor(det, Verdict::Yes, "d");
  MarkerRewrite rewrite;
  TermPtr root = rewrite.walk(marked.root);
  for (const TermPtr& t : subterms(root))
    if (t->kind == TermKind::Prefix &&
        (t->label == kYesMarker || t->label == kNoMarker))
      throw PreconditionError("internal: a verdict marker survived the rewrite");
  guard_symbols(root, limits.max_monitor_symbols);
  return make_monitor(std::move(root), monitor.alphabet);
}

EquivalenceResult check_equivalence(const Monitor& a, const Monitor& b,
                                    EquivalenceMode mode,
                                    const TransformLimits& limits) {
  require_same_alphabet(a.alphabet, b.alphabet);
  EquivalenceResult result;
  for (Polarity polarity : {Polarity::Accept, Polarity::Reject}) {
    Dfa da = closed_verdict_dfa(a, polarity, limits.powerset);
    Dfa db = closed_verdict_dfa(b, polarity, limits.powerset);
    if (mode == EquivalenceMode::Verdict) {
      LanguageCompare compare = dfa_language_equal(da, db);
      if (!compare.equal) {
        result.equivalent = false;
        result.mismatch = polarity;
        result.side = compare.side;
        result.counterexample_trace = compare.counterexample;
        return result;
      }
    } else {
      if (std::optional<Lasso> witness = omega_gap(da, db)) {
        result.equivalent = false;
        result.mismatch = polarity;
        result.side = 0;
        result.counterexample_lasso = *witness;
        return result;
      }
      if (std::optional<Lasso> witness = omega_gap(db, da)) {
        result.equivalent = false;
        result.mismatch = polarity;
        result.side = 1;
        result.counterexample_lasso = *witness;
        return result;
      }
    }
  }
  return result;
}

ConsistencyResult check_consistent(const Monitor& monitor) {
  // a verdict that never occurs has an empty language
  if (!verdict_occurs(monitor.root, Verdict::Yes) ||
      !verdict_occurs(monitor.root, Verdict::No))
    return {};
  Nfa acc = afa_to_nfa(monitor_to_afa(monitor, Polarity::Accept));
  Nfa rej = afa_to_nfa(monitor_to_afa(monitor, Polarity::Reject));
  // shortest trace accepted by both, by product reachability
  std::map<std::pair<int, int>, int> index;
  std::vector<std::pair<int, int>> pairs;
  std::vector<int> parent;
  std::vector<int> via;
  auto intern = [&](int x, int y, int from, int act) {
    auto [it, fresh] =
        index.emplace(std::make_pair(x, y), static_cast<int>(pairs.size()));
    if (fresh) {
      if (static_cast<long long>(pairs.size()) >= kConsistencyPairLimit)
        throw ResourceGuardError("consistency product too large");
      pairs.emplace_back(x, y);
      parent.push_back(from);
      via.push_back(act);
    }
    return it->second;
  };
  for (int x : acc.initial)
    for (int y : rej.initial) intern(x, y, -1, -1);
  for (std::size_t head = 0; head < pairs.size(); ++head) {
    auto [x, y] = pairs[head];
    if (acc.accepting[static_cast<size_t>(x)] &&
        rej.accepting[static_cast<size_t>(y)]) {
      ConsistencyResult out;
      out.consistent = false;
      for (int at = static_cast<int>(head); via[static_cast<size_t>(at)] >= 0;
           at = parent[static_cast<size_t>(at)])
        out.witness.push_back(
            monitor.alphabet->action(static_cast<size_t>(via[static_cast<size_t>(at)])));
      std::reverse(out.witness.begin(), out.witness.end());
      return out;
    }
    for (std::size_t a = 0; a < monitor.alphabet->size(); ++a)
      for (int nx : acc.delta[static_cast<size_t>(x)][a])
        for (int ny : rej.delta[static_cast<size_t>(y)][a])
          intern(nx, ny, static_cast<int>(head), static_cast<int>(a));
  }
  return {};
}

BlowupReport blowup_report(GapFamily family, const std::vector<int>& widths,
                           const BlowupLimits& limits) {
  BlowupReport report;
  report.family = family;
  for (int l : widths) {
    GapParams params = GapParams::make(l);
    Monitor m = build_gap_monitor(family, params);
    BlowupRow row;
    row.l = l;
    row.parallel_size = term_size(m);
    auto add_note = [&row](const std::string& text) {
      if (!row.note.empty()) row.note += "; ";
      row.note += text;
    };
    PowersetLimits nfa_limits{limits.max_nfa_states, 5'000'000};
    PowersetLimits dfa_limits{limits.max_dfa_states, 5'000'000};
    std::optional<Afa> afa_acc;
    std::optional<Afa> afa_rej;
    try {
      afa_acc = monitor_to_afa(m, Polarity::Accept);
      row.afa_states_accept = afa_acc->num_states;
    } catch (const ResourceGuardError&) {
      add_note("acceptance afa over limit");
    }
    try {
      afa_rej = monitor_to_afa(m, Polarity::Reject);
      row.afa_states_reject = afa_rej->num_states;
    } catch (const ResourceGuardError&) {
      add_note("rejection afa over limit");
    }
    if (afa_acc) {
      try {
        row.nfa_states_accept = afa_to_nfa(*afa_acc, nfa_limits).num_states;
      } catch (const ResourceGuardError&) {
        add_note("acceptance nfa over limit");
      }
    }
    if (afa_rej) {
      try {
        row.nfa_states_reject = afa_to_nfa(*afa_rej, nfa_limits).num_states;
      } catch (const ResourceGuardError&) {
        add_note("rejection nfa over limit");
      }
    }
    try {
      row.dfa_states_accept =
          monitor_to_dfa(m, Polarity::Accept, dfa_limits).num_states;
    } catch (const ResourceGuardError&) {
      add_note("acceptance dfa over limit");
    }
    try {
      row.dfa_states_reject =
          monitor_to_dfa(m, Polarity::Reject, dfa_limits).num_states;
    } catch (const ResourceGuardError&) {
      add_note("rejection dfa over limit");
    }
    TransformLimits regular_limits{nfa_limits, limits.max_monitor_symbols};
    try {
      Monitor regular = parallel_to_regular(m, regular_limits);
      row.regular_size = term_size(regular);
      try {
        row.regular_equivalent =
            check_equivalence(m, regular, EquivalenceMode::Verdict, regular_limits)
                .equivalent;
      } catch (const ResourceGuardError&) {
        add_note("regular equivalence check over limit");
      }
    } catch (const ResourceGuardError&) {
      add_note("regular rebuild over limit");
    }
    TransformLimits det_limits{dfa_limits, limits.max_monitor_symbols};
    try {
      Monitor deterministic = parallel_to_deterministic(m, det_limits);
      row.deterministic_size = term_size(deterministic);
      try {
        row.deterministic_equivalent =
            check_equivalence(m, deterministic, EquivalenceMode::Verdict,
                              det_limits)
                .equivalent;
      } catch (const ResourceGuardError&) {
        add_note("deterministic equivalence check over limit");
      }
    } catch (const ResourceGuardError&) {
      add_note("deterministic rebuild over limit");
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace montk
