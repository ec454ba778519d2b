// graph.hpp -- small digraph utilities shared by the automata passes:
// Tarjan SCCs, reachability, and detection of color-dominated cycles
// under the max-parity reading.

#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <queue>
#include <vector>

namespace rsafe {

// Adjacency-list digraph over vertices 0..n-1.
struct Digraph {
  explicit Digraph(std::size_t n = 0) : adj(n) {}
  std::vector<std::vector<int>> adj;

  std::size_t size() const { return adj.size(); }
  void add_edge(int u, int v) { adj[u].push_back(v); }
};

inline std::vector<char> reachable_from(const Digraph& g, int start) {
  std::vector<char> seen(g.size(), 0);
  if (start < 0 || static_cast<std::size_t>(start) >= g.size()) return seen;
  std::queue<int> q;
  q.push(start);
  seen[start] = 1;
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (int v : g.adj[u])
      if (!seen[v]) {
        seen[v] = 1;
        q.push(v);
      }
  }
  return seen;
}

// Tarjan, iterative. Returns the component id of each vertex; ids are in
// reverse topological order. `comp_size` and `has_self_edge` let callers
// decide which components are nontrivial cycles.
struct SccResult {
  std::vector<int> comp;
  int count = 0;
};

inline SccResult tarjan_scc(const Digraph& g,
                            const std::vector<char>* enabled = nullptr) {
  const int n = static_cast<int>(g.size());
  SccResult r;
  r.comp.assign(n, -1);
  std::vector<int> low(n, -1), num(n, -1), stk;
  std::vector<char> on_stack(n, 0);
  int counter = 0;

  struct Frame {
    int v;
    std::size_t edge;
  };
  std::vector<Frame> frames;

  auto active = [&](int v) { return !enabled || (*enabled)[v]; };

  for (int root = 0; root < n; ++root) {
    if (num[root] != -1 || !active(root)) continue;
    frames.push_back({root, 0});
    num[root] = low[root] = counter++;
    stk.push_back(root);
    on_stack[root] = 1;
    while (!frames.empty()) {
      auto& [v, ei] = frames.back();
      if (ei < g.adj[v].size()) {
        int w = g.adj[v][ei++];
        if (!active(w)) continue;
        if (num[w] == -1) {
          num[w] = low[w] = counter++;
          stk.push_back(w);
          on_stack[w] = 1;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], num[w]);
        }
      } else {
        if (low[v] == num[v]) {
          while (true) {
            int w = stk.back();
            stk.pop_back();
            on_stack[w] = 0;
            r.comp[w] = r.count;
            if (w == v) break;
          }
          ++r.count;
        }
        int finished = v;
        frames.pop_back();
        if (!frames.empty())
          low[frames.back().v] = std::min(low[frames.back().v], low[finished]);
      }
    }
  }
  return r;
}

// Searches for a cycle whose maximum color has the requested parity
// (want_odd ? odd : even), among vertices where enabled[v] (if given).
// Returns the cycle as a vertex sequence v0 v1 ... vk with an implied edge
// vk -> v0, or nullopt.
//
// Works color-by-color from the top: for color c of the right parity,
// restrict to vertices with color <= c and look for a nontrivial SCC (or a
// self-loop) containing a color-c vertex.
inline std::optional<std::vector<int>> find_dominated_cycle(
    const Digraph& g, const std::vector<int>& color, bool want_odd,
    const std::vector<char>* enabled = nullptr) {
  const int n = static_cast<int>(g.size());
  int max_color = 0;
  for (int v = 0; v < n; ++v)
    if ((!enabled || (*enabled)[v])) max_color = std::max(max_color, color[v]);

  for (int c = max_color; c >= 0; --c) {
    if ((c % 2 == 1) != want_odd) continue;
    std::vector<char> sub(n, 0);
    for (int v = 0; v < n; ++v)
      if ((!enabled || (*enabled)[v]) && color[v] <= c) sub[v] = 1;
    SccResult scc = tarjan_scc(g, &sub);

    std::vector<int> comp_count(scc.count, 0);
    for (int v = 0; v < n; ++v)
      if (sub[v]) ++comp_count[scc.comp[v]];

    for (int v = 0; v < n; ++v) {
      if (!sub[v] || color[v] != c) continue;
      int cc = scc.comp[v];
      bool self_loop = false;
      for (int w : g.adj[v])
        if (w == v && sub[v]) self_loop = true;
      if (comp_count[cc] == 1 && !self_loop) continue;
      // Found the pivot; walk a cycle v -> ... -> v inside the component.
      if (self_loop) return std::vector<int>{v};
      // BFS from successors of v back to v, staying in the component.
      std::vector<int> parent(n, -2);
      std::queue<int> q;
      for (int w : g.adj[v])
        if (sub[w] && scc.comp[w] == cc && parent[w] == -2) {
          parent[w] = v;
          q.push(w);
        }
      while (!q.empty()) {
        int u = q.front();
        q.pop();
        if (u == v) break;
        for (int w : g.adj[u])
          if (sub[w] && scc.comp[w] == cc && parent[w] == -2) {
            parent[w] = u;
            q.push(w);
          }
      }
      // Reconstruct v ... v (parent chain ends at v).
      std::vector<int> cyc;
      int cur = v;
      do {
        cur = parent[cur];
        cyc.push_back(cur);
      } while (cur != v);
      std::reverse(cyc.begin(), cyc.end());
      return cyc;
    }
  }
  return std::nullopt;
}

}  // namespace rsafe
