#include <map>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "montk/automata.hpp"
#include "montk/dot.hpp"

namespace montk {

namespace {

std::string escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

void emit_state_nodes(std::ostringstream& out, int num_states,
                      const std::vector<std::string>& names,
                      const std::vector<char>& accepting) {
  for (int s = 0; s < num_states; ++s) {
    std::string label = s < static_cast<int>(names.size())
                            ? names[static_cast<size_t>(s)]
                            : std::to_string(s);
    out << "  q" << s << " [shape="
        << (accepting[static_cast<size_t>(s)] ? "doublecircle" : "circle")
        << ", label=\"" << escape(label) << "\"];\n";
  }
}

// Edges with the same endpoints are merged into one comma-separated label.
void emit_grouped_edges(std::ostringstream& out,
                        const std::map<std::pair<std::string, std::string>,
                                       std::vector<std::string>>& edges) {
  for (const auto& [endpoints, labels] : edges) {
    std::string text;
    for (const std::string& l : labels) {
      if (!text.empty()) text += ",";
      text += l;
    }
    out << "  " << endpoints.first << " -> " << endpoints.second << " [label=\""
        << escape(text) << "\"];\n";
  }
}

}  // namespace

std::string dot_afa(const Afa& afa) {
  std::ostringstream out;
  out << "digraph afa {\n  rankdir=LR;\n  node [fontsize=10];\n";
  emit_state_nodes(out, afa.num_states, afa.state_names, afa.accepting);
  int joints = 0;
  // a cube with several atoms becomes a point node fanning out; a cube with
  // none (the formula "true") becomes a terminal box
  auto emit_dnf = [&](const std::string& src, const Dnf& d,
                      const std::string& label) {
    for (const std::vector<int>& cube : d.cubes) {
      if (cube.size() == 1) {
        out << "  " << src << " -> q" << cube[0] << " [label=\""
            << escape(label) << "\"];\n";
      } else if (cube.empty()) {
        std::string t = "tt" + std::to_string(joints++);
        out << "  " << t << " [shape=box, label=\"tt\"];\n";
        out << "  " << src << " -> " << t << " [label=\"" << escape(label)
            << "\"];\n";
      } else {
        std::string joint = "and" + std::to_string(joints++);
        out << "  " << joint << " [shape=point];\n";
        out << "  " << src << " -> " << joint << " [label=\"" << escape(label)
            << "\", arrowhead=none];\n";
        for (int atom : cube) out << "  " << joint << " -> q" << atom << ";\n";
      }
    }
  };
  out << "  init [shape=none, label=\"\"];\n";
  emit_dnf("init", afa.initial, "");
  for (int s = 0; s < afa.num_states; ++s)
    for (std::size_t a = 0; a < afa.alphabet->size(); ++a)
      emit_dnf("q" + std::to_string(s), afa.delta[static_cast<size_t>(s)][a],
               afa.alphabet->action(a));
  out << "}\n";
  return out.str();
}

std::string dot_nfa(const Nfa& nfa) {
  std::ostringstream out;
  out << "digraph nfa {\n  rankdir=LR;\n  node [fontsize=10];\n";
  emit_state_nodes(out, nfa.num_states, nfa.state_names, nfa.accepting);
  out << "  init [shape=none, label=\"\"];\n";
  for (int s : nfa.initial) out << "  init -> q" << s << ";\n";
  std::map<std::pair<std::string, std::string>, std::vector<std::string>> edges;
  for (int s = 0; s < nfa.num_states; ++s)
    for (std::size_t a = 0; a < nfa.alphabet->size(); ++a)
      for (int t : nfa.delta[static_cast<size_t>(s)][a])
        edges[{"q" + std::to_string(s), "q" + std::to_string(t)}].push_back(
            nfa.alphabet->action(a));
  emit_grouped_edges(out, edges);
  out << "}\n";
  return out.str();
}

std::string dot_dfa(const Dfa& dfa) {
  std::ostringstream out;
  out << "digraph dfa {\n  rankdir=LR;\n  node [fontsize=10];\n";
  emit_state_nodes(out, dfa.num_states, dfa.state_names, dfa.accepting);
  out << "  init [shape=none, label=\"\"];\n";
  out << "  init -> q" << dfa.initial << ";\n";
  std::map<std::pair<std::string, std::string>, std::vector<std::string>> edges;
  for (int s = 0; s < dfa.num_states; ++s)
    for (std::size_t a = 0; a < dfa.alphabet->size(); ++a)
      edges[{"q" + std::to_string(s),
             "q" + std::to_string(dfa.delta[static_cast<size_t>(s)][a])}]
          .push_back(dfa.alphabet->action(a));
  emit_grouped_edges(out, edges);
  out << "}\n";
  return out.str();
}

std::string dot_monitor(const Monitor& monitor) {
  std::vector<TermPtr> nodes = subterms(monitor.root);
  std::unordered_map<const Term*, int> ids;
  for (std::size_t i = 0; i < nodes.size(); ++i)
    ids.emplace(nodes[i].get(), static_cast<int>(i));
  std::ostringstream out;
  out << "digraph monitor {\n  node [fontsize=10];\n";
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const Term& t = *nodes[i];
    std::string label;
    std::string shape = "ellipse";
    switch (t.kind) {
      case TermKind::Verdict:
        label = t.verdict == Verdict::Yes ? "yes"
                : t.verdict == Verdict::No ? "no"
                                           : "end";
        shape = "box";
        break;
      case TermKind::Prefix:
        label = t.label + ".";
        break;
      case TermKind::Choice:
        label = "+";
        break;
      case TermKind::Rec:
        label = "rec " + t.label;
        break;
      case TermKind::Var:
        label = t.label;
        break;
      case TermKind::ParAnd:
        label = "&";
        break;
      case TermKind::ParOr:
        label = "|";
        break;
    }
    out << "  n" << i << " [shape=" << shape << ", label=\"" << escape(label)
        << "\"];\n";
  }
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const Term& t = *nodes[i];
    if (t.left) out << "  n" << i << " -> n" << ids[t.left.get()] << ";\n";
    if (t.right) out << "  n" << i << " -> n" << ids[t.right.get()] << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace montk
