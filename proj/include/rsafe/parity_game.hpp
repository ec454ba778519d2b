// parity_game.hpp -- max-parity games with Zielonka's recursive solver,
// plus the two game-backed analyses the decision procedure needs:
// per-state emptiness of parity tree automata (pruning) and
// rejecting-cycle detection with a lasso witness.
//
// Player 0 ("Output") wins a play iff the maximum color occurring
// infinitely often is even.

#pragma once

#include <optional>
#include <vector>

#include "rsafe/graph.hpp"
#include "rsafe/tree_automaton.hpp"

namespace rsafe {

struct ParityGame {
  struct Vertex {
    int owner;  // 0 = Output, 1 = Input
    int color;
  };
  std::vector<Vertex> vertices;
  std::vector<std::vector<int>> succ;

  std::size_t size() const { return vertices.size(); }
  int add_vertex(int owner, int color) {
    vertices.push_back({owner, color});
    succ.emplace_back();
    return static_cast<int>(vertices.size()) - 1;
  }
  void add_edge(int u, int v) { succ[u].push_back(v); }

  bool is_total() const {
    for (const auto& s : succ)
      if (s.empty()) return false;
    return true;
  }
};

struct GameSolution {
  std::vector<int> winner;    // 0 or 1 per vertex
  std::vector<int> strategy;  // successor for vertices owned by their winner, else -1
};

namespace detail {

class ZielonkaSolver {
 public:
  explicit ZielonkaSolver(const ParityGame& g) : g_(g), pred_(g.size()) {
    for (std::size_t u = 0; u < g.size(); ++u)
      for (int v : g.succ[u]) pred_[v].push_back(static_cast<int>(u));
  }

  GameSolution solve() {
    GameSolution s;
    s.winner.assign(g_.size(), -1);
    s.strategy.assign(g_.size(), -1);
    std::vector<char> region(g_.size(), 1);
    recurse(region, s);
    return s;
  }

 private:
  // Attractor of `target` for `player` within `region`; marks attracted
  // vertices in `attracted` and records the pulling edge for vertices of
  // `player` outside the target.
  void attractor(const std::vector<char>& region, std::vector<char>& attracted,
                 int player, std::vector<int>& strategy) const {
    const int n = static_cast<int>(g_.size());
    std::vector<int> out_degree(n, 0);
    std::vector<int> queue;
    for (int v = 0; v < n; ++v) {
      if (!region[v]) continue;
      for (int w : g_.succ[v])
        if (region[w]) ++out_degree[v];
      if (attracted[v]) queue.push_back(v);
    }
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      int v = queue[qi];
      for (int u : pred_[v]) {
        if (!region[u] || attracted[u]) continue;
        if (g_.vertices[u].owner == player) {
          attracted[u] = 1;
          strategy[u] = v;
          queue.push_back(u);
        } else if (--out_degree[u] == 0) {
          attracted[u] = 1;
          queue.push_back(u);
        }
      }
    }
  }

  void recurse(const std::vector<char>& region, GameSolution& s) const {
    const int n = static_cast<int>(g_.size());
    int p = -1;
    for (int v = 0; v < n; ++v)
      if (region[v]) p = std::max(p, g_.vertices[v].color);
    if (p < 0) return;
    const int sigma = (p % 2 == 0) ? 0 : 1;

    std::vector<char> a(n, 0);
    for (int v = 0; v < n; ++v)
      if (region[v] && g_.vertices[v].color == p) a[v] = 1;
    std::vector<int> attr_strat(n, -1);
    attractor(region, a, sigma, attr_strat);

    std::vector<char> rest(n, 0);
    for (int v = 0; v < n; ++v) rest[v] = region[v] && !a[v];
    recurse(rest, s);

    bool opponent_wins_some = false;
    for (int v = 0; v < n; ++v)
      if (rest[v] && s.winner[v] == 1 - sigma) opponent_wins_some = true;

    if (!opponent_wins_some) {
      for (int v = 0; v < n; ++v) {
        if (!region[v]) continue;
        if (!a[v]) continue;  // rest keeps its recursion results
        s.winner[v] = sigma;
        if (g_.vertices[v].owner != sigma) {
          s.strategy[v] = -1;
          continue;
        }
        if (attr_strat[v] >= 0) {
          s.strategy[v] = attr_strat[v];
        } else {
          // Top-color vertex: any move staying in the region works.
          s.strategy[v] = -1;
          for (int w : g_.succ[v])
            if (region[w]) {
              s.strategy[v] = w;
              break;
            }
        }
      }
      return;
    }

    // Opponent wins part of the subgame; their region grows by attraction.
    std::vector<char> b(n, 0);
    for (int v = 0; v < n; ++v)
      if (rest[v] && s.winner[v] == 1 - sigma) b[v] = 1;
    std::vector<int> b_strat(n, -1);
    attractor(region, b, 1 - sigma, b_strat);
    for (int v = 0; v < n; ++v) {
      if (!region[v] || !b[v]) continue;
      bool from_recursion = rest[v] && s.winner[v] == 1 - sigma;
      s.winner[v] = 1 - sigma;
      if (g_.vertices[v].owner == 1 - sigma) {
        if (!from_recursion) s.strategy[v] = b_strat[v];
      } else {
        s.strategy[v] = -1;
      }
    }

    std::vector<char> remaining(n, 0);
    for (int v = 0; v < n; ++v) remaining[v] = region[v] && !b[v];
    recurse(remaining, s);
  }

  const ParityGame& g_;
  std::vector<std::vector<int>> pred_;
};

}  // namespace detail

inline GameSolution solve(const ParityGame& g) {
  if (!g.is_total()) throw automaton_error("solve: game must be total");
  return detail::ZielonkaSolver(g).solve();
}

// States of the tree automaton with nonempty language, via the standard
// emptiness game: Output picks a transition from an automaton state
// (which carries the state's color), Input picks a direction from a
// neutral color-0 vertex. Stateless dead ends are totalized with a losing
// sink for Output.
inline std::vector<char> nonempty_states(const ParityTreeAutomaton& a) {
  const int n = static_cast<int>(a.num_states());
  ParityGame g;
  for (int q = 0; q < n; ++q) g.add_vertex(0, a.color(q));
  const int sink = g.add_vertex(0, 1);
  g.add_edge(sink, sink);
  for (int q = 0; q < n; ++q) {
    if (a.transitions(q).empty()) {
      g.add_edge(q, sink);
      continue;
    }
    for (const auto& t : a.transitions(q)) {
      int mid = g.add_vertex(1, 0);
      g.add_edge(q, mid);
      for (int dst : t.branch) g.add_edge(mid, dst);
    }
  }
  GameSolution s = solve(g);
  std::vector<char> nonempty(n, 0);
  for (int q = 0; q < n; ++q) nonempty[q] = (s.winner[q] == 0);
  return nonempty;
}

// Removes empty-language states, the transitions that mention them, and
// everything unreachable from the initial state. An automaton whose own
// language is empty shrinks to a lone initial state without transitions.
inline ParityTreeAutomaton prune(const ParityTreeAutomaton& a) {
  const int n = static_cast<int>(a.num_states());
  std::vector<char> keep = nonempty_states(a);

  if (!keep[a.initial()]) {
    ParityTreeAutomaton dead(a.sig(), 1, 0);
    dead.set_color(0, a.color(a.initial()));
    return dead;
  }

  // Reachability through surviving transitions only.
  std::vector<char> reach(n, 0);
  std::vector<int> stack{a.initial()};
  reach[a.initial()] = 1;
  while (!stack.empty()) {
    int q = stack.back();
    stack.pop_back();
    for (const auto& t : a.transitions(q)) {
      bool alive = true;
      for (int dst : t.branch) alive = alive && keep[dst];
      if (!alive) continue;
      for (int dst : t.branch)
        if (!reach[dst]) {
          reach[dst] = 1;
          stack.push_back(dst);
        }
    }
  }

  std::vector<int> renum(n, -1);
  int next = 0;
  for (int q = 0; q < n; ++q)
    if (keep[q] && reach[q]) renum[q] = next++;

  ParityTreeAutomaton b(a.sig(), static_cast<std::size_t>(next), renum[a.initial()]);
  for (int q = 0; q < n; ++q) {
    if (renum[q] < 0) continue;
    b.set_color(renum[q], a.color(q));
    for (const auto& t : a.transitions(q)) {
      bool alive = true;
      for (int dst : t.branch) alive = alive && keep[dst];
      if (!alive) continue;
      TreeTransition tt;
      tt.out = t.out;
      for (int dst : t.branch) tt.branch.push_back(renum[dst]);
      b.add_transition(renum[q], std::move(tt));
    }
  }
  return b;
}

// One step of a tree-automaton lasso witness: the state visited, the label
// chosen there, and the direction taken.
struct TreeStep {
  int state;
  std::uint32_t out;
  std::uint32_t in;
};

struct TreeLasso {
  std::vector<TreeStep> stem;
  std::vector<TreeStep> loop;
};

// Searches for a reachable cycle with odd maximum color in a pruned,
// reachable tree automaton; returns a lasso witness or nullopt.
inline std::optional<TreeLasso> has_rejecting_cycle(const ParityTreeAutomaton& a) {
  {
    std::vector<char> ne = nonempty_states(a);
    for (char b : ne)
      if (!b) throw automaton_error("has_rejecting_cycle: input must be pruned");
  }
  Digraph g = a.state_graph();
  std::vector<char> reach = reachable_from(g, a.initial());
  auto cycle = find_dominated_cycle(g, a.colors(), /*want_odd=*/true, &reach);
  if (!cycle) return std::nullopt;

  auto edge_letter = [&](int q, int dst) -> std::pair<std::uint32_t, std::uint32_t> {
    for (const auto& t : a.transitions(q))
      for (std::uint32_t x = 0; x < a.sig().num_inputs(); ++x)
        if (t.branch[x] == dst) return {t.out, x};
    throw automaton_error("has_rejecting_cycle: internal edge lookup failed");
  };

  TreeLasso w;
  // Shortest stem to the cycle entry.
  const int entry = cycle->front();
  std::vector<int> parent(a.num_states(), -2);
  std::vector<int> bfs{a.initial()};
  parent[a.initial()] = -1;
  for (std::size_t i = 0; i < bfs.size() && parent[entry] == -2; ++i)
    for (int dst : g.adj[bfs[i]])
      if (parent[dst] == -2) {
        parent[dst] = bfs[i];
        bfs.push_back(dst);
      }
  std::vector<int> path;
  for (int cur = entry; cur != -1; cur = parent[cur]) path.push_back(cur);
  std::reverse(path.begin(), path.end());
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    auto [y, x] = edge_letter(path[i], path[i + 1]);
    w.stem.push_back({path[i], y, x});
  }
  for (std::size_t i = 0; i < cycle->size(); ++i) {
    int q = (*cycle)[i];
    int dst = (*cycle)[(i + 1) % cycle->size()];
    auto [y, x] = edge_letter(q, dst);
    w.loop.push_back({q, y, x});
  }
  return w;
}

inline Lasso project_to_letters(const TreeLasso& t) {
  Lasso w;
  for (const auto& s : t.stem) w.stem.push_back({s.out, s.in});
  for (const auto& s : t.loop) w.loop.push_back({s.out, s.in});
  return w;
}

inline std::string write_dot(const ParityGame& g, const std::string& name = "arena") {
  std::ostringstream os;
  os << "digraph \"" << name << "\" {\n";
  for (std::size_t v = 0; v < g.size(); ++v)
    os << "  " << v << " [shape=" << (g.vertices[v].owner == 0 ? "ellipse" : "box")
       << ",label=\"" << v << "\\nc" << g.vertices[v].color << "\"];\n";
  for (std::size_t v = 0; v < g.size(); ++v)
    for (int w : g.succ[v]) os << "  " << v << " -> " << w << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace rsafe
