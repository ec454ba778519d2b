// tree_automaton.hpp -- parity tree automata over output-labeled input
// trees, Moore machines as their finite generators, and the two
// constructions tying word and tree views together: spreading a
// deterministic word automaton into a tree automaton, and collapsing a
// tree automaton into a deterministic safety word automaton by subset
// construction.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <queue>
#include <sstream>
#include <string>
#include <vector>

#include "rsafe/graph.hpp"
#include "rsafe/word_automaton.hpp"

namespace rsafe {

// One transition (q, label, f): on reading node label `out`, direction x
// continues in branch[x].
struct TreeTransition {
  std::uint32_t out = 0;
  std::vector<int> branch;  // indexed by input valuation
};

class ParityTreeAutomaton {
 public:
  ParityTreeAutomaton() = default;
  ParityTreeAutomaton(Signature sig, std::size_t num_states, int initial)
      : sig_(std::move(sig)), trans_(num_states), color_(num_states, 0), initial_(initial) {}

  const Signature& sig() const { return sig_; }
  std::size_t num_states() const { return trans_.size(); }
  int initial() const { return initial_; }
  int color(int q) const { return color_[q]; }
  void set_color(int q, int c) { color_[q] = c; }
  const std::vector<int>& colors() const { return color_; }

  const std::vector<TreeTransition>& transitions(int q) const { return trans_[q]; }
  void add_transition(int q, TreeTransition t) {
    if (t.branch.size() != sig_.num_inputs())
      throw automaton_error("tree transition: branch arity mismatch");
    trans_[q].push_back(std::move(t));
  }

  bool is_deterministic() const {
    for (const auto& row : trans_) {
      std::vector<char> seen(sig_.num_outputs(), 0);
      for (const auto& t : row) {
        if (seen[t.out]) return false;
        seen[t.out] = 1;
      }
    }
    return true;
  }

  // For deterministic automata: the transition on (q, out), or null.
  const TreeTransition* transition(int q, std::uint32_t out) const {
    for (const auto& t : trans_[q])
      if (t.out == out) return &t;
    return nullptr;
  }

  // State graph ignoring labels/directions.
  Digraph state_graph() const {
    Digraph g(num_states());
    for (std::size_t q = 0; q < num_states(); ++q) {
      std::vector<char> seen(num_states(), 0);
      for (const auto& t : trans_[q])
        for (int dst : t.branch)
          if (!seen[dst]) {
            seen[dst] = 1;
            g.add_edge(static_cast<int>(q), dst);
          }
    }
    return g;
  }

 private:
  Signature sig_;
  std::vector<std::vector<TreeTransition>> trans_;
  std::vector<int> color_;
  int initial_ = 0;
};

// Finite-state reactive system: emits output(state), then reads an input
// and moves on. Its unfolding is a full output-labeled input tree.
struct MooreMachine {
  Signature sig;
  std::vector<std::uint32_t> output;      // per state
  std::vector<std::vector<int>> next;     // [state][input valuation]
  int initial = 0;

  std::size_t num_states() const { return output.size(); }
};

// Spreading (deterministic total word automaton -> deterministic tree
// automaton with identical states and colors): on label y, direction x
// continues where the word automaton goes on letter (y, x).
inline ParityTreeAutomaton spread(const ParityWordAutomaton& a) {
  if (!a.is_deterministic() || !a.is_total())
    throw automaton_error("spread: input must be deterministic and total");
  const Signature& sig = a.sig();
  ParityTreeAutomaton t(sig, a.num_states(), a.initial());
  for (std::size_t q = 0; q < a.num_states(); ++q) {
    t.set_color(static_cast<int>(q), a.color(static_cast<int>(q)));
    for (std::uint32_t y = 0; y < sig.num_outputs(); ++y) {
      TreeTransition tr;
      tr.out = y;
      tr.branch.resize(sig.num_inputs());
      for (std::uint32_t x = 0; x < sig.num_inputs(); ++x)
        tr.branch[x] = a.det_successor(static_cast<int>(q), sig.letter_index({y, x}));
      t.add_transition(static_cast<int>(q), std::move(tr));
    }
  }
  return t;
}

// The collapse of a (possibly nondeterministic) tree automaton into a
// deterministic safety word automaton over (output, input) letters. The
// macro-successor on (y, x) collects every f(x) over transitions (q~, y, f)
// with q~ in the macro-state; the empty macro-state is identified with a
// missing transition, so the result is partial and all-color-0.
inline ParityWordAutomaton collapse_w(const ParityTreeAutomaton& a) {
  const Signature& sig = a.sig();

  std::map<std::vector<int>, int> index;
  std::vector<std::vector<int>> macros;
  auto intern = [&](std::vector<int> m) {
    auto [it, fresh] = index.try_emplace(m, static_cast<int>(macros.size()));
    if (fresh) macros.push_back(std::move(m));
    return it->second;
  };

  intern({a.initial()});
  std::vector<std::vector<int>> edges;  // [macro][letter] -> macro or -1
  for (std::size_t mi = 0; mi < macros.size(); ++mi) {
    edges.emplace_back(sig.num_letters(), -1);
    for (std::size_t li = 0; li < sig.num_letters(); ++li) {
      Letter l = sig.letter_at(li);
      std::vector<char> in_succ(a.num_states(), 0);
      for (int q : macros[mi])
        for (const auto& t : a.transitions(q))
          if (t.out == l.out) in_succ[t.branch[l.in]] = 1;
      std::vector<int> succ;
      for (std::size_t q = 0; q < a.num_states(); ++q)
        if (in_succ[q]) succ.push_back(static_cast<int>(q));
      if (!succ.empty()) edges[mi][li] = intern(std::move(succ));
    }
  }

  ParityWordAutomaton w(sig, macros.size(), 0);
  for (std::size_t q = 0; q < macros.size(); ++q)
    for (std::size_t li = 0; li < sig.num_letters(); ++li)
      if (edges[q][li] >= 0) w.add_edge(static_cast<int>(q), li, edges[q][li]);
  return w;
}

namespace detail {

// Product of a Moore machine with direction-indexed successor logic.
// Returns false on a reachable dead end (missing transition), otherwise
// checks that no reachable cycle has an odd maximum color.
template <typename Expand>
bool universal_product_accepts(std::size_t machine_states, int m0, int a0,
                               std::size_t automaton_states, Expand&& expand,
                               const std::vector<int>& a_color) {
  const std::size_t total = machine_states * automaton_states;
  auto id = [&](int s, int q) { return static_cast<int>(s * automaton_states + q); };

  Digraph g(total);
  std::vector<int> color(total, 0);
  std::vector<char> seen(total, 0);
  std::queue<std::pair<int, int>> bfs;
  bfs.emplace(m0, a0);
  seen[id(m0, a0)] = 1;
  while (!bfs.empty()) {
    auto [s, q] = bfs.front();
    bfs.pop();
    color[id(s, q)] = a_color[q];
    std::vector<std::pair<int, int>> succs;
    if (!expand(s, q, succs)) return false;
    for (auto [s2, q2] : succs) {
      g.add_edge(id(s, q), id(s2, q2));
      if (!seen[id(s2, q2)]) {
        seen[id(s2, q2)] = 1;
        bfs.emplace(s2, q2);
      }
    }
  }
  return !find_dominated_cycle(g, color, /*want_odd=*/true, &seen).has_value();
}

}  // namespace detail

// Does the full tree generated by the machine satisfy the (deterministic)
// tree automaton? Product with universal direction choice.
inline bool accepts_moore(const ParityTreeAutomaton& a, const MooreMachine& m) {
  if (a.sig() != m.sig) throw automaton_error("accepts_moore: signature mismatch");
  if (!a.is_deterministic())
    throw automaton_error("accepts_moore: tree automaton must be deterministic");
  auto expand = [&](int s, int q, std::vector<std::pair<int, int>>& out) {
    const TreeTransition* t = a.transition(q, m.output[s]);
    if (!t) return false;
    for (std::uint32_t x = 0; x < a.sig().num_inputs(); ++x)
      out.emplace_back(m.next[s][x], t->branch[x]);
    return true;
  };
  return detail::universal_product_accepts(m.num_states(), m.initial, a.initial(),
                                           a.num_states(), expand, a.colors());
}

// Word-automaton variant: all runs of the machine must be accepted. The
// automaton may be partial (safety reading: a missing move rejects).
inline bool accepts_moore(const ParityWordAutomaton& a, const MooreMachine& m) {
  if (a.sig() != m.sig) throw automaton_error("accepts_moore: signature mismatch");
  if (!a.is_deterministic())
    throw automaton_error("accepts_moore: word automaton must be deterministic");
  auto expand = [&](int s, int q, std::vector<std::pair<int, int>>& out) {
    for (std::uint32_t x = 0; x < a.sig().num_inputs(); ++x) {
      int q2 = a.det_successor(q, a.sig().letter_index({m.output[s], x}));
      if (q2 < 0) return false;
      out.emplace_back(m.next[s][x], q2);
    }
    return true;
  };
  return detail::universal_product_accepts(m.num_states(), m.initial, a.initial(),
                                           a.num_states(), expand, a.colors());
}

// ---------------------------------------------------------------------------
// Text formats. Tree automata:
//
//   tree-automaton
//   inputs c,e
//   outputs b,f
//   states 3
//   initial 0
//   colors 2 1 2
//   0 --{b}--> [{}:1, {c}:2, {e}:0, {c,e}:1]
//
// Moore machines use the same envelope with `moore`, per-state `state q
// {out}` lines and `q --{in}--> q'` transition lines.
// ---------------------------------------------------------------------------

namespace detail {

inline std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

inline std::uint32_t parse_valuation(const std::string& text,
                                     const std::vector<std::string>& aps) {
  std::size_t lb = text.find('{'), rb = text.find('}');
  if (lb == std::string::npos || rb == std::string::npos || rb < lb)
    throw automaton_error("expected '{...}' valuation in '" + text + "'");
  std::uint32_t v = 0;
  for (const auto& name : split_list(text.substr(lb + 1, rb - lb - 1))) {
    bool found = false;
    for (std::size_t i = 0; i < aps.size(); ++i)
      if (aps[i] == name) {
        v |= 1u << i;
        found = true;
      }
    if (!found) throw automaton_error("undeclared proposition '" + name + "'");
  }
  return v;
}

inline std::string valuation_text(std::uint32_t v, const std::vector<std::string>& aps) {
  std::string s = "{";
  bool first = true;
  for (std::size_t i = 0; i < aps.size(); ++i)
    if ((v >> i) & 1u) {
      if (!first) s += ",";
      s += aps[i];
      first = false;
    }
  return s + "}";
}

struct TextHeader {
  std::string kind;
  Signature sig;
  int states = -1, initial = -1;
  std::vector<int> colors;
  std::vector<std::string> body;
};

inline TextHeader parse_text_header(const std::string& text,
                                    const std::string& expected_kind) {
  std::istringstream is(text);
  std::string line;
  TextHeader h;
  std::vector<std::string> ins, outs;
  bool kind_seen = false;
  while (std::getline(is, line)) {
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    if (!kind_seen) {
      if (key != expected_kind)
        throw automaton_error("expected '" + expected_kind + "' file, got '" + key + "'");
      kind_seen = true;
      h.kind = key;
    } else if (key == "inputs") {
      std::string rest;
      std::getline(ls, rest);
      ins = split_list(rest);
    } else if (key == "outputs") {
      std::string rest;
      std::getline(ls, rest);
      outs = split_list(rest);
    } else if (key == "states") {
      ls >> h.states;
    } else if (key == "initial") {
      ls >> h.initial;
    } else if (key == "colors") {
      int c;
      while (ls >> c) h.colors.push_back(c);
    } else {
      std::string rest;
      std::getline(ls, rest);
      h.body.push_back(key + rest);
    }
  }
  if (!kind_seen || h.states < 0 || h.initial < 0)
    throw automaton_error("missing header in " + expected_kind + " file");
  h.sig = Signature(ins, outs);
  return h;
}

}  // namespace detail

inline std::string write_tree_automaton(const ParityTreeAutomaton& a) {
  const Signature& sig = a.sig();
  std::ostringstream os;
  os << "tree-automaton\n";
  os << "inputs ";
  for (std::size_t i = 0; i < sig.inputs().size(); ++i)
    os << (i ? "," : "") << sig.inputs()[i];
  os << "\noutputs ";
  for (std::size_t i = 0; i < sig.outputs().size(); ++i)
    os << (i ? "," : "") << sig.outputs()[i];
  os << "\nstates " << a.num_states() << "\ninitial " << a.initial() << "\ncolors";
  for (std::size_t q = 0; q < a.num_states(); ++q) os << ' ' << a.color(static_cast<int>(q));
  os << "\n";
  for (std::size_t q = 0; q < a.num_states(); ++q)
    for (const auto& t : a.transitions(static_cast<int>(q))) {
      os << q << " --" << detail::valuation_text(t.out, sig.outputs()) << "--> [";
      for (std::uint32_t x = 0; x < sig.num_inputs(); ++x)
        os << (x ? ", " : "") << detail::valuation_text(x, sig.inputs()) << ":" << t.branch[x];
      os << "]\n";
    }
  return os.str();
}

inline ParityTreeAutomaton read_tree_automaton(const std::string& text) {
  detail::TextHeader h = detail::parse_text_header(text, "tree-automaton");
  ParityTreeAutomaton a(h.sig, static_cast<std::size_t>(h.states), h.initial);
  if (h.colors.size() != static_cast<std::size_t>(h.states))
    throw automaton_error("tree-automaton: colors line must list every state");
  for (int q = 0; q < h.states; ++q) a.set_color(q, h.colors[q]);
  for (const auto& line : h.body) {
    std::size_t arrow = line.find("--");
    std::size_t arrow2 = line.find("-->");
    if (arrow == std::string::npos || arrow2 == std::string::npos)
      throw automaton_error("tree-automaton: malformed transition '" + line + "'");
    int q = std::stoi(line.substr(0, arrow));
    TreeTransition t;
    t.out = detail::parse_valuation(line.substr(arrow + 2, arrow2 - arrow - 2), h.sig.outputs());
    std::size_t lb = line.find('[', arrow2);
    std::size_t rb = line.rfind(']');
    if (lb == std::string::npos || rb == std::string::npos)
      throw automaton_error("tree-automaton: malformed branch list in '" + line + "'");
    t.branch.assign(h.sig.num_inputs(), -1);
    std::string inner = line.substr(lb + 1, rb - lb - 1);
    std::size_t pos = 0;
    while (pos < inner.size()) {
      std::size_t open = inner.find('{', pos);
      if (open == std::string::npos) break;
      std::size_t close = inner.find('}', open);
      std::size_t colon = inner.find(':', close);
      std::size_t comma = inner.find(',', colon);
      std::uint32_t x = detail::parse_valuation(inner.substr(open, close - open + 1), h.sig.inputs());
      int dst = std::stoi(inner.substr(colon + 1,
                                       (comma == std::string::npos ? inner.size() : comma) - colon - 1));
      t.branch[x] = dst;
      pos = comma == std::string::npos ? inner.size() : comma + 1;
    }
    for (int b : t.branch)
      if (b < 0 || b >= h.states)
        throw automaton_error("tree-automaton: incomplete or out-of-range branch in '" + line + "'");
    a.add_transition(q, std::move(t));
  }
  return a;
}

inline std::string write_moore(const MooreMachine& m) {
  const Signature& sig = m.sig;
  std::ostringstream os;
  os << "moore\n";
  os << "inputs ";
  for (std::size_t i = 0; i < sig.inputs().size(); ++i) os << (i ? "," : "") << sig.inputs()[i];
  os << "\noutputs ";
  for (std::size_t i = 0; i < sig.outputs().size(); ++i) os << (i ? "," : "") << sig.outputs()[i];
  os << "\nstates " << m.num_states() << "\ninitial " << m.initial << "\n";
  for (std::size_t q = 0; q < m.num_states(); ++q)
    os << "state " << q << " " << detail::valuation_text(m.output[q], sig.outputs()) << "\n";
  for (std::size_t q = 0; q < m.num_states(); ++q)
    for (std::uint32_t x = 0; x < sig.num_inputs(); ++x)
      os << q << " --" << detail::valuation_text(x, sig.inputs()) << "--> " << m.next[q][x] << "\n";
  return os.str();
}

inline MooreMachine read_moore(const std::string& text) {
  detail::TextHeader h = detail::parse_text_header(text, "moore");
  MooreMachine m;
  m.sig = h.sig;
  m.initial = h.initial;
  m.output.assign(h.states, 0);
  m.next.assign(h.states, std::vector<int>(h.sig.num_inputs(), -1));
  for (const auto& line : h.body) {
    if (line.rfind("state", 0) == 0) {
      std::istringstream ls(line.substr(5));
      int q;
      ls >> q;
      std::string rest;
      std::getline(ls, rest);
      m.output[q] = detail::parse_valuation(rest, h.sig.outputs());
    } else {
      std::size_t arrow = line.find("--");
      std::size_t arrow2 = line.find("-->");
      if (arrow == std::string::npos || arrow2 == std::string::npos)
        throw automaton_error("moore: malformed transition '" + line + "'");
      int q = std::stoi(line.substr(0, arrow));
      std::uint32_t x =
          detail::parse_valuation(line.substr(arrow + 2, arrow2 - arrow - 2), h.sig.inputs());
      int dst = std::stoi(line.substr(arrow2 + 3));
      m.next[q][x] = dst;
    }
  }
  for (const auto& row : m.next)
    for (int dst : row)
      if (dst < 0 || dst >= h.states)
        throw automaton_error("moore: transition function must be total");
  return m;
}

inline std::string write_dot(const ParityTreeAutomaton& a,
                             const std::string& name = "tree_automaton") {
  const Signature& sig = a.sig();
  std::ostringstream os;
  os << "digraph \"" << name << "\" {\n  rankdir=LR;\n  init [shape=point];\n";
  for (std::size_t q = 0; q < a.num_states(); ++q)
    os << "  " << q << " [shape=circle,label=\"" << q << "\\nc" << a.color(static_cast<int>(q))
       << "\"];\n";
  os << "  init -> " << a.initial() << ";\n";
  for (std::size_t q = 0; q < a.num_states(); ++q)
    for (const auto& t : a.transitions(static_cast<int>(q)))
      for (std::uint32_t x = 0; x < sig.num_inputs(); ++x)
        os << "  " << q << " -> " << t.branch[x] << " [label=\""
           << detail::valuation_text(t.out, sig.outputs()) << "/"
           << detail::valuation_text(x, sig.inputs()) << "\"];\n";
  os << "}\n";
  return os.str();
}

}  // namespace rsafe
