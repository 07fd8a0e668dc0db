#include <algorithm>
#include <unordered_map>

#include "montk/automata.hpp"
#include "montk/error.hpp"
#include "bdd.hpp"
#include "setops.hpp"

namespace montk {

namespace {

constexpr long long kDnfProductLimit = 1'000'000;
constexpr std::size_t kEvalCubeLimit = 200'000;

// Keep only minimal cubes, in (size, lex) order: a canonical antichain.
Dnf reduce(std::vector<std::vector<int>> cubes) {
  return {setops::minimal_antichain(std::move(cubes))};
}

}  // namespace

Dnf dnf_or(const Dnf& a, const Dnf& b) {
  std::vector<std::vector<int>> cubes = a.cubes;
  cubes.insert(cubes.end(), b.cubes.begin(), b.cubes.end());
  return reduce(std::move(cubes));
}

Dnf dnf_and(const Dnf& a, const Dnf& b) {
  if (static_cast<long long>(a.cubes.size()) *
          static_cast<long long>(b.cubes.size()) >
      kDnfProductLimit)
    throw ResourceGuardError("transition formula too large");
  std::vector<std::vector<int>> cubes;
  cubes.reserve(a.cubes.size() * b.cubes.size());
  for (const std::vector<int>& ca : a.cubes)
    for (const std::vector<int>& cb : b.cubes)
      cubes.push_back(setops::set_union(ca, cb));
  return reduce(std::move(cubes));
}

bool dnf_equal(const Dnf& a, const Dnf& b) { return a.cubes == b.cubes; }

std::string format_dnf(const Dnf& d, const std::vector<std::string>& names) {
  if (d.is_false()) return "false";
  std::string out;
  for (std::size_t i = 0; i < d.cubes.size(); ++i) {
    if (i) out += " | ";
    if (d.cubes[i].empty()) {
      out += "true";
      continue;
    }
    for (std::size_t j = 0; j < d.cubes[i].size(); ++j) {
      if (j) out += "&";
      out += names[static_cast<size_t>(d.cubes[i][j])];
    }
  }
  return out;
}

namespace {

std::string short_name(const TermPtr& t) {
  std::string s = print_term(t);
  if (s.size() > 48) s = s.substr(0, 45) + "...";
  return s;
}

// States shared by every formula representation: the action-prefixed
// subterms, an absorbing verdict sink, and (when some sum offers a bare
// target verdict) a pending state that turns into the sink one action later.
struct Skeleton {
  std::vector<TermPtr> nodes;  // structurally distinct, first-visit order
  std::vector<TermPtr> prefixes;
  std::unordered_map<TermPtr, int, TermPtrHash, TermPtrEq> prefix_id;
  bool need_pending = false;
  int sink = 0;
  int pending = 0;
  int num_states = 0;
};

Skeleton build_skeleton(const Monitor& monitor, Verdict target) {
  Skeleton sk;
  std::unordered_map<TermPtr, int, TermPtrHash, TermPtrEq> node_id;
  for (const TermPtr& n : subterms(monitor.root))
    if (node_id.emplace(n, static_cast<int>(sk.nodes.size())).second)
      sk.nodes.push_back(n);
  // Binder bodies may live outside the root's reach only when the monitor is
  // open; open monitors simply leave their free variables with no obligation.

  for (const TermPtr& n : sk.nodes)
    if (n->kind == TermKind::Prefix)
      if (sk.prefix_id.emplace(n, static_cast<int>(sk.prefixes.size())).second)
        sk.prefixes.push_back(n);

  auto bare = [&](const TermPtr& c) {
    return c->kind == TermKind::Verdict && c->verdict == target;
  };
  for (const TermPtr& n : sk.nodes)
    if (n->kind == TermKind::Choice && (bare(n->left) || bare(n->right)))
      sk.need_pending = true;

  sk.sink = static_cast<int>(sk.prefixes.size());
  sk.pending = sk.sink + 1;
  sk.num_states = sk.sink + 1 + (sk.need_pending ? 1 : 0);
  return sk;
}

// Characteristic obligation of every node, as a least fixpoint: recursion
// through rec/var starts from no obligation, so pure tau cycles stay false.
// The algebra supplies the formula representation.
template <class Alg>
std::unordered_map<TermPtr, typename Alg::Value, TermPtrHash, TermPtrEq>
compute_phi(const Monitor& monitor, const Skeleton& sk, Verdict target,
            Polarity polarity, Alg& alg) {
  using Value = typename Alg::Value;
  std::unordered_map<TermPtr, Value, TermPtrHash, TermPtrEq> phi;
  auto bare = [&](const TermPtr& c) {
    return c->kind == TermKind::Verdict && c->verdict == target;
  };
  auto get = [&](const TermPtr& n) -> Value {
    auto it = phi.find(n);
    return it == phi.end() ? alg.f() : it->second;
  };
  auto sigma = [&](const TermPtr& c) -> Value {
    if (c->kind == TermKind::Verdict)
      return bare(c) ? alg.atom(sk.pending) : alg.f();
    return get(c);
  };
  auto evaluate = [&](const TermPtr& n) -> Value {
    switch (n->kind) {
      case TermKind::Verdict:
        return n->verdict == target ? alg.atom(sk.sink) : alg.f();
      case TermKind::Prefix:
        return alg.atom(sk.prefix_id.at(n));
      case TermKind::Choice:
        return alg.or_(sigma(n->left), sigma(n->right));
      case TermKind::Rec:
        return get(n->left);
      case TermKind::Var: {
        auto it = monitor.binders.find(n->label);
        return it == monitor.binders.end() ? alg.f() : get(it->second->left);
      }
      case TermKind::ParAnd:
        return polarity == Polarity::Accept
                   ? alg.and_(get(n->left), get(n->right))
                   : alg.or_(get(n->left), get(n->right));
      case TermKind::ParOr:
        return polarity == Polarity::Accept
                   ? alg.or_(get(n->left), get(n->right))
                   : alg.and_(get(n->left), get(n->right));
    }
    return alg.f();
  };

  // Children first (reverse of the preorder node list) speeds convergence.
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto it = sk.nodes.rbegin(); it != sk.nodes.rend(); ++it) {
      Value next = evaluate(*it);
      auto cur = phi.find(*it);
      if (cur == phi.end()) {
        if (!alg.equal(next, alg.f())) {
          phi.emplace(*it, std::move(next));
          changed = true;
        }
      } else if (!alg.equal(cur->second, next)) {
        cur->second = std::move(next);
        changed = true;
      }
    }
  }
  return phi;
}

struct DnfAlg {
  using Value = Dnf;
  Dnf f() const { return Dnf::f(); }
  Dnf atom(int id) const { return Dnf::atom(id); }
  Dnf or_(const Dnf& a, const Dnf& b) const { return dnf_or(a, b); }
  Dnf and_(const Dnf& a, const Dnf& b) const { return dnf_and(a, b); }
  bool equal(const Dnf& a, const Dnf& b) const { return dnf_equal(a, b); }
};

struct BddAlg {
  using Value = int;
  BddArena& arena;
  int f() const { return BddArena::kFalse; }
  int atom(int id) const { return arena.var(id); }
  int or_(int a, int b) const { return arena.apply_or(a, b); }
  int and_(int a, int b) const { return arena.apply_and(a, b); }
  bool equal(int a, int b) const { return a == b; }
};

}  // namespace

Afa monitor_to_afa(const Monitor& monitor, Polarity polarity) {
  const Verdict target =
      polarity == Polarity::Accept ? Verdict::Yes : Verdict::No;
  Skeleton sk = build_skeleton(monitor, target);
  DnfAlg alg;
  auto phi = compute_phi(monitor, sk, target, polarity, alg);
  auto get = [&](const TermPtr& n) -> Dnf {
    auto it = phi.find(n);
    return it == phi.end() ? Dnf::f() : it->second;
  };

  Afa afa;
  afa.alphabet = monitor.alphabet;
  afa.polarity = polarity;
  afa.num_states = sk.num_states;
  afa.state_names.reserve(static_cast<size_t>(sk.num_states));
  for (const TermPtr& p : sk.prefixes) afa.state_names.push_back(short_name(p));
  afa.state_names.push_back(polarity == Polarity::Accept ? "sink-yes"
                                                         : "sink-no");
  if (sk.need_pending) afa.state_names.push_back("pending");

  const std::size_t acts = monitor.alphabet->size();
  afa.delta.assign(static_cast<size_t>(sk.num_states),
                   std::vector<Dnf>(acts, Dnf::f()));
  for (std::size_t i = 0; i < sk.prefixes.size(); ++i) {
    const TermPtr& p = sk.prefixes[i];
    int a = monitor.alphabet->index_of(p->label);
    afa.delta[i][static_cast<size_t>(a)] = get(p->left);
  }
  for (std::size_t a = 0; a < acts; ++a) {
    afa.delta[static_cast<size_t>(sk.sink)][a] = Dnf::atom(sk.sink);
    if (sk.need_pending)
      afa.delta[static_cast<size_t>(sk.pending)][a] = Dnf::atom(sk.sink);
  }
  afa.initial = get(monitor.root);
  afa.accepting.assign(static_cast<size_t>(sk.num_states), 0);
  afa.accepting[static_cast<size_t>(sk.sink)] = 1;
  return afa;
}

Dfa monitor_to_dfa(const Monitor& monitor, Polarity polarity,
                   const PowersetLimits& limits) {
  const Verdict target =
      polarity == Polarity::Accept ? Verdict::Yes : Verdict::No;
  Skeleton sk = build_skeleton(monitor, target);
  BddArena arena(limits.max_formula_nodes);
  BddAlg alg{arena};
  auto phi = compute_phi(monitor, sk, target, polarity, alg);
  auto get = [&](const TermPtr& n) -> int {
    auto it = phi.find(n);
    return it == phi.end() ? BddArena::kFalse : it->second;
  };

  const std::size_t acts = monitor.alphabet->size();
  std::vector<std::vector<int>> rows(
      acts,
      std::vector<int>(static_cast<size_t>(sk.num_states), BddArena::kFalse));
  for (std::size_t i = 0; i < sk.prefixes.size(); ++i) {
    const TermPtr& p = sk.prefixes[i];
    int a = monitor.alphabet->index_of(p->label);
    rows[static_cast<size_t>(a)][i] = get(p->left);
  }
  for (std::size_t a = 0; a < acts; ++a) {
    rows[a][static_cast<size_t>(sk.sink)] = arena.var(sk.sink);
    if (sk.need_pending)
      rows[a][static_cast<size_t>(sk.pending)] = arena.var(sk.sink);
  }
  std::vector<char> accepting(static_cast<size_t>(sk.num_states), 0);
  accepting[static_cast<size_t>(sk.sink)] = 1;
  return bdd_subset_dfa(arena, monitor.alphabet, get(monitor.root), rows,
                        accepting, limits);
}

bool afa_accepts(const Afa& afa, const Trace& trace) {
  require_over_alphabet(trace, afa.alphabet);
  Dnf cur = afa.initial;
  for (const std::string& action : trace) {
    if (cur.is_false()) return false;
    int a = afa.alphabet->index_of(action);
    Dnf next = Dnf::f();
    for (const std::vector<int>& cube : cur.cubes) {
      Dnf step = Dnf::t();
      for (int s : cube) {
        step = dnf_and(step, afa.delta[static_cast<size_t>(s)]
                                       [static_cast<size_t>(a)]);
        if (step.is_false()) break;
      }
      next = dnf_or(next, step);
      if (next.cubes.size() > kEvalCubeLimit)
        throw ResourceGuardError("obligation frontier too large");
    }
    cur = std::move(next);
  }
  for (const std::vector<int>& cube : cur.cubes) {
    bool all = true;
    for (int s : cube) all = all && afa.accepting[static_cast<size_t>(s)];
    if (all) return true;
  }
  return false;
}

struct AfaEvaluator::Impl {
  BddArena arena;
  AlphabetPtr alphabet;
  std::vector<std::vector<int>> rows;  // [action][state] -> formula id
  int initial;
  std::vector<char> accepting;

  Impl(const Afa& afa, long long max_formula_nodes)
      : arena(max_formula_nodes), alphabet(afa.alphabet) {
    const std::size_t acts = alphabet->size();
    const std::size_t n = static_cast<std::size_t>(afa.num_states);
    rows.assign(acts, std::vector<int>(n, BddArena::kFalse));
    for (std::size_t a = 0; a < acts; ++a)
      for (std::size_t q = 0; q < n; ++q)
        rows[a][q] = arena.from_cubes(afa.delta[q][a].cubes);
    initial = arena.from_cubes(afa.initial.cubes);
    accepting = afa.accepting;
  }
};

AfaEvaluator::AfaEvaluator(const Afa& afa, long long max_formula_nodes)
    : impl_(std::make_unique<Impl>(afa, max_formula_nodes)) {}

AfaEvaluator::~AfaEvaluator() = default;
AfaEvaluator::AfaEvaluator(AfaEvaluator&&) noexcept = default;
AfaEvaluator& AfaEvaluator::operator=(AfaEvaluator&&) noexcept = default;

bool AfaEvaluator::accepts(const Trace& trace) const {
  require_over_alphabet(trace, impl_->alphabet);
  int f = impl_->initial;
  for (const std::string& action : trace) {
    int a = impl_->alphabet->index_of(action);
    f = impl_->arena.substitute(f, impl_->rows[static_cast<size_t>(a)]);
  }
  return impl_->arena.eval(f, impl_->accepting);
}

}  // namespace montk
