// determinize.hpp -- nondeterministic Buchi to deterministic parity word
// automata via Safra trees with Piterman-style compact naming.
//
// A macro-state is an ordered tree of nodes carrying disjoint-by-level
// sets of NBA states; node names are kept compact (1..m) and renamed
// order-preservingly after every step. Reading a letter:
//   1. every node with an accepting part spawns a youngest child holding
//      that part (fresh names, in preorder),
//   2. all labels move through the NBA transitions,
//   3. duplicated states are kept only in the oldest sibling (and removed
//      from younger subtrees),
//   4. empty nodes die (e = least dead name),
//   5. a node whose children cover it exactly drops all descendants and
//      reports progress (f = least such name).
// The step priority is 2f if f < e, else 2e-1, else neutral; priorities
// are attached to the target state and mapped to max-even colors. An NBA
// with n states yields colors bounded by 2n+1.
//
// Already-deterministic inputs bypass the construction and only get
// completed, keeping their Buchi colors.

#pragma once

#include <limits>
#include <map>
#include <string>
#include <vector>

#include "rsafe/word_automaton.hpp"

namespace rsafe {

namespace detail {

struct SafraNode {
  int name;
  std::vector<char> label;     // over NBA states
  std::vector<int> children;   // indices, oldest first
};

struct SafraTree {
  std::vector<SafraNode> nodes;
  int root = -1;  // -1: empty tree (rejecting sink)

  bool empty() const { return root < 0; }

  std::string key() const {
    std::string s;
    if (root < 0) return s;
    append(s, root);
    return s;
  }

 private:
  void append(std::string& s, int idx) const {
    const SafraNode& n = nodes[idx];
    s += static_cast<char>('0' + n.name % 10);
    s += std::to_string(n.name);
    s += ':';
    for (char b : n.label) s += b ? '1' : '0';
    s += '[';
    for (int c : n.children) append(s, c);
    s += ']';
  }
};

class SafraBuilder {
 public:
  SafraBuilder(const ParityWordAutomaton& nba) : nba_(nba), n_(static_cast<int>(nba.num_states())) {
    for (int q = 0; q < n_; ++q) accepting_.push_back(nba.color(q) == 2);
  }

  SafraTree initial_tree() const {
    SafraTree t;
    std::vector<char> l(n_, 0);
    l[nba_.initial()] = 1;
    t.nodes.push_back({1, l, {}});
    t.root = 0;
    return t;
  }

  // Returns the successor tree and the step priority in the internal
  // min-parity convention (1..2n+1, even accepting, smaller stronger).
  std::pair<SafraTree, int> step(const SafraTree& t, std::size_t letter) const {
    const int neutral = 2 * n_ + 1;
    if (t.empty()) return {t, neutral};

    SafraTree w = t;
    int next_name = 0;
    for (const auto& nd : w.nodes) next_name = std::max(next_name, nd.name);
    ++next_name;

    // 1. Spawn accepting children (preorder over the original nodes).
    std::vector<int> preorder;
    collect_preorder(w, w.root, preorder);
    for (int idx : preorder) {
      std::vector<char> part(n_, 0);
      bool any = false;
      for (int q = 0; q < n_; ++q)
        if (w.nodes[idx].label[q] && accepting_[q]) {
          part[q] = 1;
          any = true;
        }
      if (!any) continue;
      w.nodes.push_back({next_name++, part, {}});
      w.nodes[idx].children.push_back(static_cast<int>(w.nodes.size()) - 1);
    }

    // 2. Powerset transition on every label.
    for (auto& nd : w.nodes) {
      std::vector<char> succ(n_, 0);
      for (int q = 0; q < n_; ++q) {
        if (!nd.label[q]) continue;
        for (int dst : nba_.successors(q, letter)) succ[dst] = 1;
      }
      nd.label = std::move(succ);
    }

    // 3. Horizontal merge: older siblings keep duplicated states.
    horizontal_merge(w, w.root);

    // 4. Remove empty nodes.
    int e = std::numeric_limits<int>::max();
    remove_empty(w, e);

    // 5. Vertical merge.
    int f = std::numeric_limits<int>::max();
    if (!w.empty()) vertical_merge(w, w.root, f);

    int priority = neutral;
    if (f < e)
      priority = 2 * f;
    else if (e != std::numeric_limits<int>::max())
      priority = 2 * e - 1;

    if (!w.empty()) compact(w);
    return {w, priority};
  }

  int num_nba_states() const { return n_; }

 private:
  static void collect_preorder(const SafraTree& t, int idx, std::vector<int>& out) {
    out.push_back(idx);
    for (int c : t.nodes[idx].children) collect_preorder(t, c, out);
  }

  void erase_from_subtree(SafraTree& t, int idx, const std::vector<char>& victims) const {
    for (int q = 0; q < n_; ++q)
      if (victims[q]) t.nodes[idx].label[q] = 0;
    for (int c : t.nodes[idx].children) erase_from_subtree(t, c, victims);
  }

  void horizontal_merge(SafraTree& t, int idx) const {
    std::vector<char> seen(n_, 0);
    for (int c : t.nodes[idx].children) {
      erase_from_subtree(t, c, seen);
      for (int q = 0; q < n_; ++q)
        if (t.nodes[c].label[q]) seen[q] = 1;
    }
    for (int c : t.nodes[idx].children) horizontal_merge(t, c);
  }

  // Rebuilds the tree without empty-label nodes; records the least dead
  // name in `e`. An empty node's subtree is empty as well.
  void remove_empty(SafraTree& t, int& e) const {
    SafraTree out;
    if (!t.empty()) out.root = copy_nonempty(t, t.root, out, e);
    t = std::move(out);
  }

  int copy_nonempty(const SafraTree& t, int idx, SafraTree& out, int& e) const {
    const SafraNode& nd = t.nodes[idx];
    bool any = false;
    for (char b : nd.label) any |= (b != 0);
    if (!any) {
      record_dead(t, idx, e);
      return -1;
    }
    out.nodes.push_back({nd.name, nd.label, {}});
    int self = static_cast<int>(out.nodes.size()) - 1;
    for (int c : nd.children) {
      int cc = copy_nonempty(t, c, out, e);
      if (cc >= 0) out.nodes[self].children.push_back(cc);
    }
    return self;
  }

  static void record_dead(const SafraTree& t, int idx, int& e) {
    e = std::min(e, t.nodes[idx].name);
    for (int c : t.nodes[idx].children) record_dead(t, c, e);
  }

  void vertical_merge(SafraTree& t, int idx, int& f) const {
    SafraNode& nd = t.nodes[idx];
    if (!nd.children.empty()) {
      std::vector<char> uni(n_, 0);
      for (int c : nd.children)
        for (int q = 0; q < n_; ++q)
          if (t.nodes[c].label[q]) uni[q] = 1;
      if (uni == nd.label) {
        // Progress: the whole label is in accepting-descended parts.
        nd.children.clear();  // descendant removal; names freed silently
        f = std::min(f, nd.name);
        return;
      }
    }
    for (int c : nd.children) vertical_merge(t, c, f);
  }

  // Order-preserving renaming onto 1..m, then drop unreachable node
  // records left by child-list surgery.
  void compact(SafraTree& t) const {
    SafraTree out;
    std::vector<int> live;
    collect_preorder(t, t.root, live);
    std::vector<int> names;
    for (int idx : live) names.push_back(t.nodes[idx].name);
    std::sort(names.begin(), names.end());
    auto rank = [&](int name) {
      return static_cast<int>(std::lower_bound(names.begin(), names.end(), name) -
                              names.begin()) + 1;
    };
    out.root = copy_renamed(t, t.root, out, rank);
    t = std::move(out);
  }

  template <typename Rank>
  int copy_renamed(const SafraTree& t, int idx, SafraTree& out, Rank rank) const {
    const SafraNode& nd = t.nodes[idx];
    out.nodes.push_back({rank(nd.name), nd.label, {}});
    int self = static_cast<int>(out.nodes.size()) - 1;
    for (int c : nd.children) {
      // The recursive call may reallocate out.nodes; index after it returns.
      int cc = copy_renamed(t, c, out, rank);
      out.nodes[self].children.push_back(cc);
    }
    return self;
  }

  const ParityWordAutomaton& nba_;
  int n_;
  std::vector<char> accepting_;
};

}  // namespace detail

// NBA -> deterministic total max-parity automaton with the same language.
// Throws resource_error when the construction exceeds `max_states`.
inline ParityWordAutomaton determinize(const ParityWordAutomaton& nba,
                                       std::size_t max_states = 200000) {
  if (!nba.is_buchi())
    throw automaton_error("determinize: input must carry Buchi colors");

  if (nba.is_deterministic()) {
    // Already deterministic: keep the Buchi coloring, just totalize.
    return complete(nba);
  }

  const Signature& sig = nba.sig();
  detail::SafraBuilder builder(nba);
  const int n = builder.num_nba_states();
  const int neutral = 2 * n + 1;
  auto to_max_even = [&](int p) { return 2 * n + 2 - p; };

  struct MacroState {
    detail::SafraTree tree;
    int priority;
  };
  std::map<std::pair<std::string, int>, int> index;
  std::vector<MacroState> states;
  auto intern = [&](detail::SafraTree t, int p) {
    auto key = std::make_pair(t.key(), p);
    auto [it, fresh] = index.try_emplace(key, static_cast<int>(states.size()));
    if (fresh) states.push_back({std::move(t), p});
    return it->second;
  };

  intern(builder.initial_tree(), neutral);

  std::vector<std::vector<int>> edges;  // [state][letter] -> dst
  for (std::size_t si = 0; si < states.size(); ++si) {
    edges.emplace_back(sig.num_letters(), -1);
    for (std::size_t li = 0; li < sig.num_letters(); ++li) {
      auto [succ, p] = builder.step(states[si].tree, li);
      const int state_priority = succ.empty() ? 1 : p;
      edges[si][li] = intern(std::move(succ), state_priority);
      if (states.size() > max_states)
        throw resource_error("determinize: state budget of " +
                             std::to_string(max_states) + " exceeded");
    }
  }

  ParityWordAutomaton dpw(sig, states.size(), 0);
  for (std::size_t q = 0; q < states.size(); ++q) {
    int color = states[q].tree.empty() ? 1 : to_max_even(states[q].priority);
    dpw.set_color(static_cast<int>(q), color);
    for (std::size_t li = 0; li < sig.num_letters(); ++li)
      dpw.add_edge(static_cast<int>(q), li, edges[q][li]);
  }
  return dpw;
}

}  // namespace rsafe
