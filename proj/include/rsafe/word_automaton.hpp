// word_automaton.hpp -- explicit-state parity word automata over the
// product alphabet, with completion, pruning, linear-time-safety
// classification and lasso membership.
//
// Acceptance is max-parity throughout: a run is accepting iff the maximum
// color seen infinitely often is even. Safety automata carry color 0 on
// every state; Buchi automata use {1, 2} (2 accepting).

#pragma once

#include <optional>
#include <queue>
#include <stdexcept>
#include <vector>

#include "rsafe/graph.hpp"
#include "rsafe/signature.hpp"

namespace rsafe {

struct automaton_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class ParityWordAutomaton {
 public:
  ParityWordAutomaton() = default;
  ParityWordAutomaton(Signature sig, std::size_t num_states, int initial)
      : sig_(std::move(sig)),
        trans_(num_states, std::vector<std::vector<int>>(sig_.num_letters())),
        color_(num_states, 0),
        initial_(initial) {}

  const Signature& sig() const { return sig_; }
  std::size_t num_states() const { return trans_.size(); }
  int initial() const { return initial_; }
  int color(int q) const { return color_[q]; }
  void set_color(int q, int c) { color_[q] = c; }
  const std::vector<int>& colors() const { return color_; }

  const std::vector<int>& successors(int q, std::size_t letter) const {
    return trans_[q][letter];
  }
  void add_edge(int q, Letter l, int dst) {
    trans_[q][sig_.letter_index(l)].push_back(dst);
  }
  void add_edge(int q, std::size_t letter, int dst) {
    trans_[q][letter].push_back(dst);
  }

  // -1 when the (deterministic) automaton has no move.
  int det_successor(int q, std::size_t letter) const {
    const auto& s = trans_[q][letter];
    return s.empty() ? -1 : s.front();
  }

  bool is_deterministic() const {
    for (const auto& row : trans_)
      for (const auto& s : row)
        if (s.size() > 1) return false;
    return true;
  }

  bool is_total() const {
    for (const auto& row : trans_)
      for (const auto& s : row)
        if (s.empty()) return false;
    return true;
  }

  bool is_safety() const {
    for (int c : color_)
      if (c != 0) return false;
    return true;
  }

  bool is_buchi() const {
    for (int c : color_)
      if (c != 0 && c != 1 && c != 2) return false;
    return true;
  }

  int max_color() const {
    int m = 0;
    for (int c : color_) m = std::max(m, c);
    return m;
  }

  Digraph state_graph() const {
    Digraph g(num_states());
    for (std::size_t q = 0; q < num_states(); ++q) {
      std::vector<char> seen(num_states(), 0);
      for (const auto& s : trans_[q])
        for (int dst : s)
          if (!seen[dst]) {
            seen[dst] = 1;
            g.add_edge(static_cast<int>(q), dst);
          }
    }
    return g;
  }

 private:
  Signature sig_;
  // trans_[state][letter] -> successor set.
  std::vector<std::vector<std::vector<int>>> trans_;
  std::vector<int> color_;
  int initial_ = 0;
};

// Totalizes a deterministic automaton by directing every missing move into
// a fresh rejecting sink of color 1. Already-total inputs come back as-is.
inline ParityWordAutomaton complete(const ParityWordAutomaton& a) {
  if (!a.is_deterministic())
    throw automaton_error("complete: input must be deterministic");
  if (a.is_total()) return a;

  ParityWordAutomaton b(a.sig(), a.num_states() + 1, a.initial());
  const int sink = static_cast<int>(a.num_states());
  for (std::size_t q = 0; q < a.num_states(); ++q) {
    b.set_color(static_cast<int>(q), a.color(static_cast<int>(q)));
    for (std::size_t l = 0; l < a.sig().num_letters(); ++l) {
      int dst = a.det_successor(static_cast<int>(q), l);
      b.add_edge(static_cast<int>(q), l, dst >= 0 ? dst : sink);
    }
  }
  b.set_color(sink, 1);
  for (std::size_t l = 0; l < a.sig().num_letters(); ++l) b.add_edge(sink, l, sink);
  return b;
}

// States with nonempty word language: those from which some cycle with an
// even maximum color is reachable.
inline std::vector<char> live_states(const ParityWordAutomaton& a) {
  const int n = static_cast<int>(a.num_states());
  Digraph g = a.state_graph();

  // Mark states on even-dominated cycles, then propagate backwards.
  std::vector<char> on_good(n, 0);
  for (int c = a.max_color(); c >= 0; --c) {
    if (c % 2 != 0) continue;
    std::vector<char> sub(n, 0);
    for (int v = 0; v < n; ++v)
      if (a.color(v) <= c) sub[v] = 1;
    SccResult scc = tarjan_scc(g, &sub);
    std::vector<int> comp_count(scc.count, 0);
    std::vector<char> comp_self(scc.count, 0);
    for (int v = 0; v < n; ++v) {
      if (!sub[v]) continue;
      ++comp_count[scc.comp[v]];
      for (int w : g.adj[v])
        if (w == v) comp_self[scc.comp[v]] = 1;
    }
    std::vector<char> comp_has_c(scc.count, 0);
    for (int v = 0; v < n; ++v)
      if (sub[v] && a.color(v) == c) comp_has_c[scc.comp[v]] = 1;
    for (int v = 0; v < n; ++v)
      if (sub[v] && comp_has_c[scc.comp[v]] &&
          (comp_count[scc.comp[v]] > 1 || comp_self[scc.comp[v]]))
        on_good[v] = 1;
  }

  // Reverse reachability to the good cycles.
  Digraph rg(n);
  for (int v = 0; v < n; ++v)
    for (int w : g.adj[v]) rg.add_edge(w, v);
  std::vector<char> live(n, 0);
  std::queue<int> q;
  for (int v = 0; v < n; ++v)
    if (on_good[v]) {
      live[v] = 1;
      q.push(v);
    }
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (int w : rg.adj[u])
      if (!live[w]) {
        live[w] = 1;
        q.push(w);
      }
  }
  return live;
}

// Removes states with empty word language (and the transitions into them).
// The language is unchanged; the result may be partial. An automaton with
// an empty language shrinks to its initial state with no transitions.
inline ParityWordAutomaton prune_word(const ParityWordAutomaton& a) {
  if (!a.is_deterministic())
    throw automaton_error("prune_word: input must be deterministic");
  std::vector<char> live = live_states(a);
  const int n = static_cast<int>(a.num_states());

  std::vector<int> renum(n, -1);
  int next = 0;
  if (!live[a.initial()]) {
    ParityWordAutomaton dead(a.sig(), 1, 0);
    dead.set_color(0, a.color(a.initial()));
    return dead;
  }
  for (int v = 0; v < n; ++v)
    if (live[v]) renum[v] = next++;

  ParityWordAutomaton b(a.sig(), static_cast<std::size_t>(next), renum[a.initial()]);
  for (int v = 0; v < n; ++v) {
    if (!live[v]) continue;
    b.set_color(renum[v], a.color(v));
    for (std::size_t l = 0; l < a.sig().num_letters(); ++l) {
      int dst = a.det_successor(v, l);
      if (dst >= 0 && live[dst]) b.add_edge(renum[v], l, renum[dst]);
    }
  }
  return b;
}

// Linear-time safety test for a deterministic total automaton: prune the
// empty-language states, then the language is a safety property iff no
// reachable cycle among the survivors has an odd maximum color.
inline bool classify_linear_safety(const ParityWordAutomaton& a) {
  if (!a.is_deterministic() || !a.is_total())
    throw automaton_error("classify_linear_safety: input must be deterministic and total");
  ParityWordAutomaton p = prune_word(a);
  Digraph g = p.state_graph();
  std::vector<char> reach = reachable_from(g, p.initial());
  return !find_dominated_cycle(g, p.colors(), /*want_odd=*/true, &reach).has_value();
}

// Deterministic lasso membership: follow the run; the word is accepted iff
// the run exists forever and the cycle it settles into has an even maximum
// color.
inline bool accepts_lasso_det(const ParityWordAutomaton& a, const Lasso& w) {
  if (w.loop.empty()) throw automaton_error("lasso loop must be nonempty");
  int q = a.initial();
  for (Letter l : w.stem) {
    q = a.det_successor(q, a.sig().letter_index(l));
    if (q < 0) return false;
  }
  // Positions in the loop: track (state, loop index) until repetition.
  std::vector<std::vector<int>> visit_step(a.num_states(),
                                           std::vector<int>(w.loop.size(), -1));
  std::vector<int> trail_state, trail_color;
  int pos = 0, step = 0;
  while (visit_step[q][pos] < 0) {
    visit_step[q][pos] = step++;
    trail_state.push_back(q);
    trail_color.push_back(a.color(q));
    q = a.det_successor(q, a.sig().letter_index(w.loop[pos]));
    if (q < 0) return false;
    pos = (pos + 1) % static_cast<int>(w.loop.size());
  }
  int first = visit_step[q][pos];
  int max_c = 0;
  for (std::size_t i = first; i < trail_color.size(); ++i)
    max_c = std::max(max_c, trail_color[i]);
  return max_c % 2 == 0;
}

// Nondeterministic lasso membership via the product with the lasso shape:
// accepted iff the product graph has a reachable cycle with an even
// maximum color.
inline bool accepts_lasso_nondet(const ParityWordAutomaton& a, const Lasso& w) {
  if (w.loop.empty()) throw automaton_error("lasso loop must be nonempty");
  const int n = static_cast<int>(a.num_states());
  const int positions = static_cast<int>(w.stem.size() + w.loop.size());
  auto letter_at = [&](int p) {
    return p < static_cast<int>(w.stem.size()) ? w.stem[p]
                                               : w.loop[p - w.stem.size()];
  };
  auto next_pos = [&](int p) {
    return p + 1 < positions ? p + 1 : static_cast<int>(w.stem.size());
  };
  auto id = [&](int q, int p) { return q * positions + p; };

  Digraph g(static_cast<std::size_t>(n) * positions);
  std::vector<int> color(static_cast<std::size_t>(n) * positions, 0);
  for (int q = 0; q < n; ++q)
    for (int p = 0; p < positions; ++p) {
      color[id(q, p)] = a.color(q);
      for (int dst : a.successors(q, a.sig().letter_index(letter_at(p))))
        g.add_edge(id(q, p), id(dst, next_pos(p)));
    }
  std::vector<char> reach = reachable_from(g, id(a.initial(), 0));
  return find_dominated_cycle(g, color, /*want_odd=*/false, &reach).has_value();
}

}  // namespace rsafe
