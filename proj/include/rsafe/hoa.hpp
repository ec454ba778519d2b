// hoa.hpp -- HOA v1 subset reader/writer for parity word automata over a
// partitioned alphabet, plus DOT export.
//
// The AP list carries the inputs first and the outputs second; the custom
// header line `spec-io: <k>` records how many of the APs are inputs. This
// header is our extension: HOA itself has no notion of a product alphabet.
//
// Supported acceptance: `parity max even <n>` (state in acceptance set c
// means color c), `Buchi` (set 0 membership maps to color 2, the rest to
// color 1), and `all` (safety, every color 0).

#pragma once

#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <queue>
#include <sstream>
#include <string>
#include <vector>

#include "rsafe/word_automaton.hpp"

namespace rsafe {

struct hoa_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

// Boolean label expressions over AP indices: ! & | t f ( ) INT.
class LabelExpr {
 public:
  explicit LabelExpr(const std::string& text) : text_(text) { root_ = parse_or(); skip_ws();
    if (pos_ != text_.size()) throw hoa_error("HOA: trailing input in label '" + text + "'");
  }

  bool eval(const std::vector<char>& valuation) const { return eval(root_, valuation); }

 private:
  struct Node {
    char kind;  // '!', '&', '|', 't', 'f', 'a'
    int ap = -1;
    int lhs = -1, rhs = -1;
  };

  int parse_or() {
    int l = parse_and();
    while (skip_ws(), peek() == '|') {
      ++pos_;
      int r = parse_and();
      l = add({'|', -1, l, r});
    }
    return l;
  }
  int parse_and() {
    int l = parse_unary();
    while (skip_ws(), peek() == '&') {
      ++pos_;
      int r = parse_unary();
      l = add({'&', -1, l, r});
    }
    return l;
  }
  int parse_unary() {
    skip_ws();
    char c = peek();
    if (c == '!') {
      ++pos_;
      return add({'!', -1, parse_unary(), -1});
    }
    if (c == '(') {
      ++pos_;
      int e = parse_or();
      skip_ws();
      if (peek() != ')') throw hoa_error("HOA: expected ')' in label");
      ++pos_;
      return e;
    }
    if (c == 't') { ++pos_; return add({'t'}); }
    if (c == 'f') { ++pos_; return add({'f'}); }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      int v = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
        v = v * 10 + (text_[pos_++] - '0');
      return add({'a', v, -1, -1});
    }
    throw hoa_error("HOA: malformed label '" + text_ + "'");
  }

  int add(Node n) {
    nodes_.push_back(n);
    return static_cast<int>(nodes_.size()) - 1;
  }
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eval(int i, const std::vector<char>& v) const {
    const Node& n = nodes_[i];
    switch (n.kind) {
      case 't': return true;
      case 'f': return false;
      case 'a':
        if (n.ap < 0 || static_cast<std::size_t>(n.ap) >= v.size())
          throw hoa_error("HOA: AP index out of range in label");
        return v[n.ap];
      case '!': return !eval(n.lhs, v);
      case '&': return eval(n.lhs, v) && eval(n.rhs, v);
      case '|': return eval(n.lhs, v) || eval(n.rhs, v);
    }
    return false;
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  std::vector<Node> nodes_;
  int root_ = -1;
};

inline std::string hoa_acceptance_formula(int num_colors) {
  // Max-even parity as a Fin/Inf nesting, highest color outermost.
  std::string s;
  for (int c = num_colors - 1; c >= 0; --c) {
    bool even = c % 2 == 0;
    std::string atom = (even ? "Inf(" : "Fin(") + std::to_string(c) + ")";
    if (s.empty()) {
      s = atom;
    } else if (even) {
      s = atom + " | (" + s + ")";
    } else {
      s = atom + " & (" + s + ")";
    }
  }
  return s.empty() ? "t" : s;
}

}  // namespace detail

inline ParityWordAutomaton read_hoa(const std::string& text) {
  std::istringstream is(text);
  std::string line;

  int num_states = -1, start = -1, spec_io = -1;
  std::vector<std::string> aps;
  std::string acc_name;
  bool in_body = false;

  struct RawEdge {
    std::string label;
    int dst;
  };
  std::vector<std::vector<RawEdge>> edges;
  std::vector<int> raw_color;
  int cur_state = -1;

  auto trim = [](std::string s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
  };

  std::string acc_line;
  while (std::getline(is, line)) {
    line = trim(line);
    if (line.empty()) continue;
    if (!in_body) {
      if (line == "--BODY--") {
        if (num_states < 0 || start < 0 || spec_io < 0)
          throw hoa_error("HOA: missing States:, Start: or spec-io: header");
        in_body = true;
        edges.assign(num_states, {});
        raw_color.assign(num_states, -1);
        continue;
      }
      std::istringstream ls(line);
      std::string key;
      ls >> key;
      if (key == "HOA:") {
        std::string v;
        ls >> v;
        if (v != "v1") throw hoa_error("HOA: unsupported version '" + v + "'");
      } else if (key == "States:") {
        ls >> num_states;
      } else if (key == "Start:") {
        ls >> start;
        int extra;
        if (ls >> extra) throw hoa_error("HOA: multiple start states unsupported");
      } else if (key == "AP:") {
        int n;
        ls >> n;
        for (int i = 0; i < n; ++i) {
          std::string q;
          ls >> std::ws;
          if (!std::getline(ls, q, '"') || !std::getline(ls, q, '"'))
            throw hoa_error("HOA: malformed AP: line");
          aps.push_back(q);
        }
      } else if (key == "spec-io:") {
        ls >> spec_io;
      } else if (key == "acc-name:") {
        std::getline(ls, acc_name);
        acc_name = trim(acc_name);
      } else if (key == "Acceptance:") {
        std::getline(ls, acc_line);
      } else if (key == "tool:" || key == "name:" || key == "properties:") {
        // ignored
      } else {
        throw hoa_error("HOA: unknown header '" + key + "'");
      }
    } else {
      if (line == "--END--") break;
      if (line.rfind("State:", 0) == 0) {
        std::istringstream ls(line.substr(6));
        ls >> cur_state;
        if (cur_state < 0 || cur_state >= num_states)
          throw hoa_error("HOA: state id out of range");
        std::size_t lb = line.find('{');
        if (lb != std::string::npos) {
          std::size_t rb = line.find('}', lb);
          if (rb == std::string::npos) throw hoa_error("HOA: malformed acc-sig");
          std::istringstream as(line.substr(lb + 1, rb - lb - 1));
          int c;
          if (as >> c) raw_color[cur_state] = c;
          int extra;
          if (as >> extra) throw hoa_error("HOA: multiple acceptance sets per state unsupported");
        }
      } else if (line[0] == '[') {
        if (cur_state < 0) throw hoa_error("HOA: edge before first State:");
        std::size_t rb = line.find(']');
        if (rb == std::string::npos) throw hoa_error("HOA: malformed edge label");
        std::string label = line.substr(1, rb - 1);
        int dst = std::stoi(trim(line.substr(rb + 1)));
        if (dst < 0 || dst >= num_states) throw hoa_error("HOA: edge target out of range");
        edges[cur_state].push_back({label, dst});
      } else {
        throw hoa_error("HOA: unexpected body line '" + line + "'");
      }
    }
  }
  if (!in_body) throw hoa_error("HOA: missing --BODY--");
  if (spec_io < 0 || spec_io > static_cast<int>(aps.size()))
    throw hoa_error("HOA: spec-io out of range");

  std::vector<std::string> ins(aps.begin(), aps.begin() + spec_io);
  std::vector<std::string> outs(aps.begin() + spec_io, aps.end());
  Signature sig(ins, outs);

  // Acceptance mapping.
  enum class Kind { Parity, Buchi, All } kind;
  if (acc_name.rfind("parity max even", 0) == 0)
    kind = Kind::Parity;
  else if (acc_name == "Buchi")
    kind = Kind::Buchi;
  else if (acc_name == "all")
    kind = Kind::All;
  else
    throw hoa_error("HOA: unsupported acceptance '" + acc_name + "'");

  ParityWordAutomaton a(sig, static_cast<std::size_t>(num_states), start);
  for (int q = 0; q < num_states; ++q) {
    switch (kind) {
      case Kind::Parity:
        a.set_color(q, raw_color[q] < 0 ? 0 : raw_color[q]);
        break;
      case Kind::Buchi:
        a.set_color(q, raw_color[q] == 0 ? 2 : 1);
        break;
      case Kind::All:
        if (raw_color[q] >= 0) throw hoa_error("HOA: acc-sig with 'all' acceptance");
        a.set_color(q, 0);
        break;
    }
  }

  const std::size_t num_ap = aps.size();
  for (int q = 0; q < num_states; ++q) {
    for (const auto& e : edges[q]) {
      detail::LabelExpr expr(e.label);
      for (std::size_t li = 0; li < sig.num_letters(); ++li) {
        Letter l = sig.letter_at(li);
        std::vector<char> val(num_ap, 0);
        for (int i = 0; i < spec_io; ++i) val[i] = (l.in >> i) & 1u;
        for (std::size_t i = spec_io; i < num_ap; ++i)
          val[i] = (l.out >> (i - spec_io)) & 1u;
        if (expr.eval(val)) a.add_edge(q, li, e.dst);
      }
    }
  }
  return a;
}

// Canonical renumbering: breadth-first from the initial state, scanning
// letters in canonical order. Unreachable states are dropped.
inline ParityWordAutomaton canonicalize(const ParityWordAutomaton& a) {
  std::vector<int> renum(a.num_states(), -1);
  std::vector<int> order;
  std::queue<int> q;
  renum[a.initial()] = 0;
  order.push_back(a.initial());
  q.push(a.initial());
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (std::size_t l = 0; l < a.sig().num_letters(); ++l)
      for (int dst : a.successors(u, l))
        if (renum[dst] < 0) {
          renum[dst] = static_cast<int>(order.size());
          order.push_back(dst);
          q.push(dst);
        }
  }
  ParityWordAutomaton b(a.sig(), order.size(), 0);
  for (std::size_t i = 0; i < order.size(); ++i) {
    b.set_color(static_cast<int>(i), a.color(order[i]));
    for (std::size_t l = 0; l < a.sig().num_letters(); ++l)
      for (int dst : a.successors(order[i], l)) b.add_edge(static_cast<int>(i), l, renum[dst]);
  }
  return b;
}

inline std::string write_hoa(const ParityWordAutomaton& a_in,
                             const std::string& name = "") {
  ParityWordAutomaton a = canonicalize(a_in);
  const Signature& sig = a.sig();
  std::ostringstream os;
  os << "HOA: v1\n";
  if (!name.empty()) os << "name: \"" << name << "\"\n";
  os << "States: " << a.num_states() << "\n";
  os << "Start: " << a.initial() << "\n";
  os << "AP: " << sig.inputs().size() + sig.outputs().size();
  for (const auto& p : sig.inputs()) os << " \"" << p << "\"";
  for (const auto& p : sig.outputs()) os << " \"" << p << "\"";
  os << "\n";
  os << "spec-io: " << sig.inputs().size() << "\n";

  const bool safety = a.is_safety();
  if (safety) {
    os << "acc-name: all\n";
    os << "Acceptance: 0 t\n";
  } else {
    int ncol = a.max_color() + 1;
    os << "acc-name: parity max even " << ncol << "\n";
    os << "Acceptance: " << ncol << " " << detail::hoa_acceptance_formula(ncol) << "\n";
  }
  os << "--BODY--\n";

  const std::size_t nin = sig.inputs().size();
  auto letter_label = [&](Letter l) {
    std::string s;
    for (std::size_t i = 0; i < nin; ++i) {
      if (!s.empty()) s += "&";
      if (!((l.in >> i) & 1u)) s += "!";
      s += std::to_string(i);
    }
    for (std::size_t i = 0; i < sig.outputs().size(); ++i) {
      if (!s.empty()) s += "&";
      if (!((l.out >> i) & 1u)) s += "!";
      s += std::to_string(nin + i);
    }
    return s.empty() ? std::string("t") : s;
  };

  for (std::size_t q = 0; q < a.num_states(); ++q) {
    os << "State: " << q;
    if (!safety) os << " {" << a.color(static_cast<int>(q)) << "}";
    os << "\n";
    for (std::size_t l = 0; l < sig.num_letters(); ++l)
      for (int dst : a.successors(static_cast<int>(q), l))
        os << "[" << letter_label(sig.letter_at(l)) << "] " << dst << "\n";
  }
  os << "--END--\n";
  return os.str();
}

inline std::string write_dot(const ParityWordAutomaton& a,
                             const std::string& name = "automaton") {
  const Signature& sig = a.sig();
  std::ostringstream os;
  os << "digraph \"" << name << "\" {\n  rankdir=LR;\n  init [shape=point];\n";
  for (std::size_t q = 0; q < a.num_states(); ++q)
    os << "  " << q << " [shape=circle,label=\"" << q << "\\nc" << a.color(static_cast<int>(q))
       << "\"];\n";
  os << "  init -> " << a.initial() << ";\n";
  for (std::size_t q = 0; q < a.num_states(); ++q)
    for (std::size_t l = 0; l < sig.num_letters(); ++l)
      for (int dst : a.successors(static_cast<int>(q), l))
        os << "  " << q << " -> " << dst << " [label=\""
           << sig.letter_to_string(sig.letter_at(l)) << "\"];\n";
  os << "}\n";
  return os.str();
}

}  // namespace rsafe
