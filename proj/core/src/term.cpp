#include "montk/term.hpp"

#include <functional>
#include <set>
#include <unordered_map>
#include <unordered_set>
#include <utility>

#include "montk/error.hpp"

namespace montk {

namespace {

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

std::uint64_t str_hash(const std::string& s) {
  return std::hash<std::string>{}(s);
}

TermPtr make_verdict(Verdict v) {
  auto t = std::make_shared<Term>();
  t->kind = TermKind::Verdict;
  t->verdict = v;
  t->hash = mix(1, static_cast<std::uint64_t>(v) + 17);
  t->size_symbols = 1;
  return t;
}

TermPtr make_binary(TermKind kind, std::uint64_t tag, TermPtr l, TermPtr r) {
  auto t = std::make_shared<Term>();
  t->kind = kind;
  t->left = std::move(l);
  t->right = std::move(r);
  t->hash = mix(mix(tag, t->left->hash), t->right->hash);
  t->size_symbols = t->left->size_symbols + t->right->size_symbols + 1;
  return t;
}

}  // namespace

TermPtr Term::yes() {
  static const TermPtr t = make_verdict(Verdict::Yes);
  return t;
}
TermPtr Term::no() {
  static const TermPtr t = make_verdict(Verdict::No);
  return t;
}
TermPtr Term::end() {
  static const TermPtr t = make_verdict(Verdict::End);
  return t;
}
TermPtr Term::verdict_of(Verdict v) {
  switch (v) {
    case Verdict::Yes: return yes();
    case Verdict::No: return no();
    default: return end();
  }
}

TermPtr Term::prefix(std::string action, TermPtr child) {
  auto t = std::make_shared<Term>();
  t->kind = TermKind::Prefix;
  t->label = std::move(action);
  t->left = std::move(child);
  t->hash = mix(mix(2, str_hash(t->label)), t->left->hash);
  t->size_symbols = 2 + t->left->size_symbols;
  return t;
}

TermPtr Term::choice(TermPtr lhs, TermPtr rhs) {
  return make_binary(TermKind::Choice, 3, std::move(lhs), std::move(rhs));
}

TermPtr Term::rec(std::string var, TermPtr body) {
  auto t = std::make_shared<Term>();
  t->kind = TermKind::Rec;
  t->label = std::move(var);
  t->left = std::move(body);
  t->hash = mix(mix(4, str_hash(t->label)), t->left->hash);
  t->size_symbols = 3 + t->left->size_symbols;
  return t;
}

TermPtr Term::var(std::string name) {
  auto t = std::make_shared<Term>();
  t->kind = TermKind::Var;
  t->label = std::move(name);
  t->hash = mix(5, str_hash(t->label));
  t->size_symbols = 1;
  return t;
}

TermPtr Term::par_and(TermPtr lhs, TermPtr rhs) {
  return make_binary(TermKind::ParAnd, 6, std::move(lhs), std::move(rhs));
}
TermPtr Term::par_or(TermPtr lhs, TermPtr rhs) {
  return make_binary(TermKind::ParOr, 7, std::move(lhs), std::move(rhs));
}

bool structural_equal(const TermPtr& a, const TermPtr& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b) return false;
  if (a->hash != b->hash || a->kind != b->kind) return false;
  switch (a->kind) {
    case TermKind::Verdict: return a->verdict == b->verdict;
    case TermKind::Var: return a->label == b->label;
    case TermKind::Prefix:
    case TermKind::Rec:
      return a->label == b->label && structural_equal(a->left, b->left);
    case TermKind::Choice:
    case TermKind::ParAnd:
    case TermKind::ParOr:
      return structural_equal(a->left, b->left) &&
             structural_equal(a->right, b->right);
  }
  return false;
}

long long term_size(const TermPtr& t) { return t ? t->size_symbols : 0; }
long long term_size(const Monitor& m) { return term_size(m.root); }

namespace {

struct Renamer {
  const Alphabet& alphabet;
  int counter = 0;
  std::map<std::string, TermPtr>* binders;

  TermPtr walk(const TermPtr& t, const std::map<std::string, std::string>& env) {
    switch (t->kind) {
      case TermKind::Verdict:
        return t;
      case TermKind::Var: {
        auto it = env.find(t->label);
        if (it == env.end()) return t;  // free variable: name kept
        return Term::var(it->second);
      }
      case TermKind::Prefix: {
        if (!alphabet.contains(t->label))
          throw AlphabetError("unknown action '" + t->label + "'");
        return Term::prefix(t->label, walk(t->left, env));
      }
      case TermKind::Choice:
        return Term::choice(walk(t->left, env), walk(t->right, env));
      case TermKind::ParAnd:
        return Term::par_and(walk(t->left, env), walk(t->right, env));
      case TermKind::ParOr:
        return Term::par_or(walk(t->left, env), walk(t->right, env));
      case TermKind::Rec: {
        std::string fresh = "x" + std::to_string(counter++);
        auto inner = env;
        inner[t->label] = fresh;
        TermPtr node = Term::rec(fresh, walk(t->left, inner));
        (*binders)[fresh] = node;
        return node;
      }
    }
    throw std::logic_error("unreachable term kind");
  }
};

// Bottom-up free-variable sets, memoized per node so shared subtrees are
// visited once.
using FvMap = std::unordered_map<const Term*, std::set<std::string>>;

std::set<std::string> free_vars(const TermPtr& t, FvMap& memo) {
  auto it = memo.find(t.get());
  if (it != memo.end()) return it->second;
  std::set<std::string> fv;
  switch (t->kind) {
    case TermKind::Verdict:
      break;
    case TermKind::Var:
      fv.insert(t->label);
      break;
    case TermKind::Prefix:
      fv = free_vars(t->left, memo);
      break;
    case TermKind::Rec:
      fv = free_vars(t->left, memo);
      fv.erase(t->label);
      break;
    case TermKind::Choice:
    case TermKind::ParAnd:
    case TermKind::ParOr: {
      fv = free_vars(t->left, memo);
      auto rv = free_vars(t->right, memo);
      fv.insert(rv.begin(), rv.end());
      break;
    }
  }
  memo.emplace(t.get(), fv);
  return fv;
}

void flatten_sum(const TermPtr& t, std::vector<TermPtr>& out) {
  if (t->kind == TermKind::Choice) {
    flatten_sum(t->left, out);
    flatten_sum(t->right, out);
  } else {
    out.push_back(t);
  }
}

}  // namespace

Monitor normalize(TermPtr root, AlphabetPtr alphabet) {
  if (!root) throw PreconditionError("empty term");
  if (!alphabet) throw AlphabetError("missing alphabet");
  Monitor m;
  m.alphabet = std::move(alphabet);
  Renamer r{*m.alphabet, 0, &m.binders};
  m.root = r.walk(root, {});
  return m;
}

std::vector<TermPtr> subterms(const TermPtr& root) {
  std::vector<TermPtr> out;
  std::unordered_set<const Term*> seen;
  std::vector<TermPtr> stack{root};
  while (!stack.empty()) {
    TermPtr t = stack.back();
    stack.pop_back();
    if (!t || !seen.insert(t.get()).second) continue;
    out.push_back(t);
    if (t->right) stack.push_back(t->right);
    if (t->left) stack.push_back(t->left);
  }
  return out;
}

Monitor make_monitor(TermPtr root, AlphabetPtr alphabet) {
  Monitor m;
  m.root = std::move(root);
  m.alphabet = std::move(alphabet);
  for (const auto& t : subterms(m.root)) {
    if (t->kind == TermKind::Rec) {
      auto [it, fresh] = m.binders.emplace(t->label, t);
      if (!fresh && it->second.get() != t.get())
        throw PreconditionError("duplicate binder name '" + t->label + "'");
    } else if (t->kind == TermKind::Prefix) {
      if (!m.alphabet->contains(t->label))
        throw AlphabetError("unknown action '" + t->label + "'");
    }
  }
  return m;
}

ValidationReport validate(const Monitor& m) {
  ValidationReport rep;
  if (!m.root) {
    rep.closed = false;
    return rep;
  }
  FvMap fv_memo;
  auto fv = free_vars(m.root, fv_memo);
  rep.closed = fv.empty();
  rep.free_vars.assign(fv.begin(), fv.end());

  std::map<std::string, const Term*> binder_nodes;
  // (node, was the parent a Choice) pairs; a Choice node is a maximal sum
  // exactly when its parent is not a Choice.
  std::set<std::pair<const Term*, bool>> seen;
  std::vector<std::pair<TermPtr, bool>> stack{{m.root, false}};
  while (!stack.empty()) {
    auto [t, in_sum] = stack.back();
    stack.pop_back();
    if (!seen.insert({t.get(), in_sum}).second) continue;
    switch (t->kind) {
      case TermKind::Verdict:
      case TermKind::Var:
        break;
      case TermKind::Prefix:
        stack.push_back({t->left, false});
        break;
      case TermKind::Rec: {
        auto [it, fresh] = binder_nodes.emplace(t->label, t.get());
        if (!fresh && it->second != t.get()) rep.alpha_unique = false;
        stack.push_back({t->left, false});
        break;
      }
      case TermKind::ParAnd:
      case TermKind::ParOr:
        rep.regular = false;
        stack.push_back({t->left, false});
        stack.push_back({t->right, false});
        break;
      case TermKind::Choice: {
        if (!in_sum) {
          std::vector<TermPtr> summands;
          flatten_sum(t, summands);
          std::set<std::string> actions;
          bool all_prefix = true;
          for (const auto& s : summands) {
            if (s->kind != TermKind::Prefix)
              all_prefix = false;
            else if (!actions.insert(s->label).second)
              all_prefix = false;  // repeated action
          }
          if (!all_prefix) rep.deterministic = false;
        }
        stack.push_back({t->left, true});
        stack.push_back({t->right, true});
        break;
      }
    }
  }
  if (!rep.regular) rep.deterministic = false;
  return rep;
}

namespace {

TermPtr pad_walk(const TermPtr& t, std::unordered_map<const Term*, TermPtr>& memo);

TermPtr pad_summand(const TermPtr& s,
                    std::unordered_map<const Term*, TermPtr>& memo) {
  switch (s->kind) {
    case TermKind::Verdict:
    case TermKind::Var:
      return s;
    case TermKind::Prefix:
      return Term::prefix(s->label, pad_walk(s->left, memo));
    default:
      return pad_walk(s, memo);
  }
}

TermPtr pad_walk(const TermPtr& t, std::unordered_map<const Term*, TermPtr>& memo) {
  auto it = memo.find(t.get());
  if (it != memo.end()) return it->second;
  TermPtr out;
  switch (t->kind) {
    case TermKind::Verdict:
    case TermKind::Var:
      out = t;
      break;
    case TermKind::Prefix:
      out = Term::choice(Term::prefix(t->label, pad_walk(t->left, memo)),
                         Term::end());
      break;
    case TermKind::Rec:
      out = Term::rec(t->label, pad_walk(t->left, memo));
      break;
    case TermKind::ParAnd:
      out = Term::par_and(pad_walk(t->left, memo), pad_walk(t->right, memo));
      break;
    case TermKind::ParOr:
      out = Term::par_or(pad_walk(t->left, memo), pad_walk(t->right, memo));
      break;
    case TermKind::Choice: {
      std::vector<TermPtr> summands;
      flatten_sum(t, summands);
      bool has_end = false;
      for (const auto& s : summands)
        if (s->is_verdict(Verdict::End)) has_end = true;
      TermPtr acc;
      for (const auto& s : summands) {
        TermPtr p = pad_summand(s, memo);
        acc = acc ? Term::choice(acc, p) : p;
      }
      if (!has_end) acc = Term::choice(acc, Term::end());
      out = acc;
      break;
    }
  }
  memo.emplace(t.get(), out);
  return out;
}

}  // namespace

TermPtr pad_term(const TermPtr& t) {
  std::unordered_map<const Term*, TermPtr> memo;
  return pad_walk(t, memo);
}

Monitor pad(const Monitor& m) {
  return make_monitor(pad_term(m.root), m.alphabet);
}

namespace {

// Recursive sufficient check. `unguarded` holds the nodes on the current path
// reachable without crossing an action prefix; re-entering one of those is a
// cycle that never consumes an action (e.g. rec x.(x & m)) and cannot justify
// reactivity. Re-entering a node beyond a prefix is a productive loop and
// counts as established; every rule below is conjunctive, so assuming true on
// such a re-entry is sound.
struct ReactiveCheck {
  const Monitor& m;
  std::size_t n_actions;
  std::unordered_map<const Term*, bool> memo;
  std::unordered_set<const Term*> on_stack;
  std::unordered_set<const Term*> unguarded;

  bool ok(const TermPtr& tp) {
    const Term* t = tp.get();
    if (on_stack.count(t)) return !unguarded.count(t);
    auto it = memo.find(t);
    if (it != memo.end()) return it->second;
    on_stack.insert(t);
    unguarded.insert(t);
    bool res = eval(tp);
    unguarded.erase(t);
    on_stack.erase(t);
    memo.emplace(t, res);
    return res;
  }

  bool through_prefix(const TermPtr& child) {
    auto saved = std::move(unguarded);
    unguarded.clear();
    bool res = ok(child);
    unguarded = std::move(saved);
    return res;
  }

  bool eval(const TermPtr& t) {
    switch (t->kind) {
      case TermKind::Verdict:
        return true;
      case TermKind::Var: {
        auto it = m.binders.find(t->label);
        return it != m.binders.end() && ok(it->second->left);
      }
      case TermKind::Rec:
        return ok(t->left);
      case TermKind::ParAnd:
      case TermKind::ParOr:
        return ok(t->left) && ok(t->right);
      case TermKind::Prefix:
        // A bare prefix only moves on its own action.
        return n_actions == 1 && through_prefix(t->left);
      case TermKind::Choice: {
        std::vector<TermPtr> summands;
        flatten_sum(t, summands);
        bool has_verdict = false;
        std::set<std::string> covered;
        for (const auto& s : summands) {
          if (s->kind == TermKind::Verdict) has_verdict = true;
          if (s->kind == TermKind::Prefix) covered.insert(s->label);
        }
        if (!has_verdict && covered.size() != n_actions) return false;
        for (const auto& s : summands) {
          if (s->kind == TermKind::Verdict) continue;
          if (s->kind == TermKind::Prefix) {
            if (!through_prefix(s->left)) return false;
          } else if (!ok(s)) {
            // selection commits to this summand's tau step, so it must be
            // reactive on its own
            return false;
          }
        }
        return true;
      }
    }
    return false;
  }
};

}  // namespace

bool syntactically_reactive(const Monitor& m) {
  if (!m.root || !m.alphabet) return false;
  ReactiveCheck check{m, m.alphabet->size(), {}, {}, {}};
  return check.ok(m.root);
}

namespace {

int level_of(const Term& t) {
  switch (t.kind) {
    case TermKind::ParAnd:
    case TermKind::ParOr:
      return 0;
    case TermKind::Choice:
      return 1;
    default:
      return 2;
  }
}

}  // namespace

std::string print_term(const TermPtr& root) {
  if (!root) return "";
  std::string out;
  struct Item {
    const Term* node;
    int req;
    const char* lit;
  };
  std::vector<Item> stack{{root.get(), 0, nullptr}};
  while (!stack.empty()) {
    Item it = stack.back();
    stack.pop_back();
    if (it.lit) {
      out += it.lit;
      continue;
    }
    const Term& t = *it.node;
    bool paren = level_of(t) < it.req;
    if (paren) out += '(';
    const char* close = paren ? ")" : nullptr;
    switch (t.kind) {
      case TermKind::Verdict:
        out += t.verdict == Verdict::Yes ? "yes"
               : t.verdict == Verdict::No ? "no"
                                          : "end";
        if (close) out += close;
        break;
      case TermKind::Var:
        out += t.label;
        if (close) out += close;
        break;
      case TermKind::Prefix:
        out += t.label;
        out += '.';
        if (close) stack.push_back({nullptr, 0, close});
        stack.push_back({t.left.get(), 2, nullptr});
        break;
      case TermKind::Rec:
        out += "rec ";
        out += t.label;
        out += '.';
        if (close) stack.push_back({nullptr, 0, close});
        stack.push_back({t.left.get(), 2, nullptr});
        break;
      case TermKind::Choice:
        if (close) stack.push_back({nullptr, 0, close});
        stack.push_back({t.right.get(), 2, nullptr});
        stack.push_back({nullptr, 0, " + "});
        stack.push_back({t.left.get(), 1, nullptr});
        break;
      case TermKind::ParAnd:
      case TermKind::ParOr:
        if (close) stack.push_back({nullptr, 0, close});
        stack.push_back({t.right.get(), 1, nullptr});
        stack.push_back({nullptr, 0, t.kind == TermKind::ParAnd ? " & " : " | "});
        stack.push_back({t.left.get(), 0, nullptr});
        break;
    }
  }
  return out;
}

std::string print_monitor(const Monitor& m) { return print_term(m.root); }

}  // namespace montk
