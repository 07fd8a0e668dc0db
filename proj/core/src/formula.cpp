#include "montk/formula.hpp"

#include <functional>
#include <set>
#include <unordered_set>
#include <vector>

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

FormulaPtr make_leaf(FormulaKind kind, std::uint64_t tag) {
  auto f = std::make_shared<Formula>();
  f->kind = kind;
  f->hash = mix(11, tag);
  f->size_symbols = 1;
  return f;
}

FormulaPtr make_unary(FormulaKind kind, std::uint64_t tag, std::string label,
                      FormulaPtr child, long long own) {
  auto f = std::make_shared<Formula>();
  f->kind = kind;
  f->label = std::move(label);
  f->left = std::move(child);
  f->hash = mix(mix(tag, str_hash(f->label)), f->left->hash);
  f->size_symbols = own + f->left->size_symbols;
  return f;
}

FormulaPtr make_binary(FormulaKind kind, std::uint64_t tag, FormulaPtr l,
                       FormulaPtr r) {
  auto f = std::make_shared<Formula>();
  f->kind = kind;
  f->left = std::move(l);
  f->right = std::move(r);
  f->hash = mix(mix(tag, f->left->hash), f->right->hash);
  f->size_symbols = f->left->size_symbols + f->right->size_symbols + 1;
  return f;
}

}  // namespace

FormulaPtr Formula::tt() {
  static const FormulaPtr f = make_leaf(FormulaKind::TT, 1);
  return f;
}
FormulaPtr Formula::ff() {
  static const FormulaPtr f = make_leaf(FormulaKind::FF, 2);
  return f;
}
FormulaPtr Formula::conj(FormulaPtr lhs, FormulaPtr rhs) {
  return make_binary(FormulaKind::And, 12, std::move(lhs), std::move(rhs));
}
FormulaPtr Formula::disj(FormulaPtr lhs, FormulaPtr rhs) {
  return make_binary(FormulaKind::Or, 13, std::move(lhs), std::move(rhs));
}
FormulaPtr Formula::box(std::string action, FormulaPtr child) {
  return make_unary(FormulaKind::Box, 14, std::move(action), std::move(child), 2);
}
FormulaPtr Formula::diamond(std::string action, FormulaPtr child) {
  return make_unary(FormulaKind::Diamond, 15, std::move(action), std::move(child), 2);
}
FormulaPtr Formula::max(std::string var, FormulaPtr body) {
  return make_unary(FormulaKind::Max, 16, std::move(var), std::move(body), 3);
}
FormulaPtr Formula::min(std::string var, FormulaPtr body) {
  return make_unary(FormulaKind::Min, 17, std::move(var), std::move(body), 3);
}
FormulaPtr Formula::var(std::string name) {
  auto f = std::make_shared<Formula>();
  f->kind = FormulaKind::Var;
  f->label = std::move(name);
  f->hash = mix(18, str_hash(f->label));
  f->size_symbols = 1;
  return f;
}

bool structural_equal(const FormulaPtr& a, const FormulaPtr& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b) return false;
  if (a->hash != b->hash || a->kind != b->kind) return false;
  switch (a->kind) {
    case FormulaKind::TT:
    case FormulaKind::FF:
      return true;
    case FormulaKind::Var:
      return a->label == b->label;
    case FormulaKind::Box:
    case FormulaKind::Diamond:
    case FormulaKind::Max:
    case FormulaKind::Min:
      return a->label == b->label && structural_equal(a->left, b->left);
    case FormulaKind::And:
    case FormulaKind::Or:
      return structural_equal(a->left, b->left) &&
             structural_equal(a->right, b->right);
  }
  return false;
}

long long formula_size(const FormulaPtr& f) { return f ? f->size_symbols : 0; }

Fragments classify(const FormulaPtr& root) {
  Fragments fr;
  std::unordered_set<const Formula*> seen;
  std::vector<const Formula*> stack{root.get()};
  while (!stack.empty()) {
    const Formula* f = stack.back();
    stack.pop_back();
    if (!f || !seen.insert(f).second) continue;
    switch (f->kind) {
      case FormulaKind::Or:
        fr.safety = false;
        break;
      case FormulaKind::And:
        fr.cosafety = false;
        break;
      case FormulaKind::Diamond:
        fr.safety = false;
        break;
      case FormulaKind::Box:
        fr.cosafety = false;
        break;
      case FormulaKind::Min:
        fr.safety = false;
        fr.max_only = false;
        break;
      case FormulaKind::Max:
        fr.cosafety = false;
        fr.min_only = false;
        break;
      default:
        break;
    }
    if (f->left) stack.push_back(f->left.get());
    if (f->right) stack.push_back(f->right.get());
  }
  return fr;
}

namespace {

void collect_free(const FormulaPtr& f, std::set<std::string>& bound,
                  std::set<std::string>& free) {
  if (!f) return;
  switch (f->kind) {
    case FormulaKind::Var:
      if (!bound.count(f->label)) free.insert(f->label);
      return;
    case FormulaKind::Max:
    case FormulaKind::Min: {
      bool was_bound = bound.count(f->label) > 0;
      bound.insert(f->label);
      collect_free(f->left, bound, free);
      if (!was_bound) bound.erase(f->label);
      return;
    }
    default:
      collect_free(f->left, bound, free);
      collect_free(f->right, bound, free);
      return;
  }
}

}  // namespace

LogicFormula make_formula(FormulaPtr root, AlphabetPtr alphabet) {
  if (!root) throw PreconditionError("empty formula");
  if (!alphabet) throw AlphabetError("missing alphabet");
  for (const Formula* f : [&] {
         std::vector<const Formula*> all;
         std::vector<const Formula*> stack{root.get()};
         std::unordered_set<const Formula*> seen;
         while (!stack.empty()) {
           const Formula* g = stack.back();
           stack.pop_back();
           if (!g || !seen.insert(g).second) continue;
           all.push_back(g);
           if (g->left) stack.push_back(g->left.get());
           if (g->right) stack.push_back(g->right.get());
         }
         return all;
       }()) {
    if ((f->kind == FormulaKind::Box || f->kind == FormulaKind::Diamond) &&
        !alphabet->contains(f->label))
      throw AlphabetError("unknown action '" + f->label + "'");
  }
  std::set<std::string> bound, free;
  collect_free(root, bound, free);
  if (!free.empty())
    throw PreconditionError("unbound variable '" + *free.begin() + "'");
  LogicFormula out;
  out.root = std::move(root);
  out.alphabet = std::move(alphabet);
  out.fragments = classify(out.root);
  return out;
}

namespace {

int level_of(const Formula& f) {
  switch (f.kind) {
    case FormulaKind::Or: return 0;
    case FormulaKind::And: return 1;
    default: return 2;
  }
}

}  // namespace

std::string print_formula(const FormulaPtr& root) {
  if (!root) return "";
  std::string out;
  struct Item {
    const Formula* node;
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
    const Formula& f = *it.node;
    bool paren = level_of(f) < it.req;
    if (paren) out += '(';
    const char* close = paren ? ")" : nullptr;
    switch (f.kind) {
      case FormulaKind::TT:
        out += "tt";
        if (close) out += close;
        break;
      case FormulaKind::FF:
        out += "ff";
        if (close) out += close;
        break;
      case FormulaKind::Var:
        out += f.label;
        if (close) out += close;
        break;
      case FormulaKind::Box:
      case FormulaKind::Diamond:
        out += f.kind == FormulaKind::Box ? "[" : "<";
        out += f.label;
        out += f.kind == FormulaKind::Box ? "]" : ">";
        if (close) stack.push_back({nullptr, 0, close});
        stack.push_back({f.left.get(), 2, nullptr});
        break;
      case FormulaKind::Max:
      case FormulaKind::Min:
        out += f.kind == FormulaKind::Max ? "max " : "min ";
        out += f.label;
        out += '.';
        if (close) stack.push_back({nullptr, 0, close});
        stack.push_back({f.left.get(), 2, nullptr});
        break;
      case FormulaKind::And:
        if (close) stack.push_back({nullptr, 0, close});
        stack.push_back({f.right.get(), 2, nullptr});
        stack.push_back({nullptr, 0, " && "});
        stack.push_back({f.left.get(), 1, nullptr});
        break;
      case FormulaKind::Or:
        if (close) stack.push_back({nullptr, 0, close});
        stack.push_back({f.right.get(), 1, nullptr});
        stack.push_back({nullptr, 0, " || "});
        stack.push_back({f.left.get(), 0, nullptr});
        break;
    }
  }
  return out;
}

std::string print_formula(const LogicFormula& f) { return print_formula(f.root); }

}  // namespace montk
