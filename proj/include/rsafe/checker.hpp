// checker.hpp -- the end-to-end reactive-safety decision procedure.
//
// Every front end (LTL formula, nondeterministic Buchi automaton,
// deterministic parity automaton) is reduced to a deterministic total
// parity word automaton, spread into a tree automaton, pruned, and
// searched for a rejecting cycle. No rejecting cycle means the property is
// a reactive safety property and the collapse of the pruned tree automaton
// is a tight deterministic safety monitor; a rejecting cycle yields a
// lasso witness of non-safety.

#pragma once

#include <optional>
#include <variant>

#include "rsafe/determinize.hpp"
#include "rsafe/ltl.hpp"
#include "rsafe/ltl_to_nba.hpp"
#include "rsafe/parity_game.hpp"
#include "rsafe/tree_automaton.hpp"
#include "rsafe/word_automaton.hpp"

namespace rsafe {

enum class SafetyClass { LinearSafe, ReactiveSafeNotLinear, NotReactiveSafe };

inline const char* to_string(SafetyClass c) {
  switch (c) {
    case SafetyClass::LinearSafe:
      return "LINEAR-SAFE";
    case SafetyClass::ReactiveSafeNotLinear:
      return "REACTIVE-SAFE";
    case SafetyClass::NotReactiveSafe:
      return "NOT-REACTIVE-SAFE";
  }
  return "";
}

struct Verdict {
  SafetyClass cls;
  // Present unless the class is NotReactiveSafe: a tight deterministic
  // safety word automaton equivalent over all systems with the signature.
  std::optional<ParityWordAutomaton> monitor;
  // Present iff the class is NotReactiveSafe.
  std::optional<Lasso> witness;
};

// Intermediate stage dumps, filled on request (--dot-dir in the CLI).
struct CheckArtifacts {
  std::optional<ParityWordAutomaton> nba;
  std::optional<ParityWordAutomaton> dpw;
  std::optional<ParityTreeAutomaton> spread_automaton;
  std::optional<ParityTreeAutomaton> pruned;
};

namespace detail {

// Greedy stem minimization: the loop is fixed; re-anchor the stem at the
// earliest loop state reachable from the initial state by a shortest path.
inline void minimize_witness_stem(const ParityTreeAutomaton& a, TreeLasso& w) {
  Digraph g = a.state_graph();
  std::vector<int> dist(a.num_states(), -1), parent(a.num_states(), -1);
  std::vector<int> bfs{a.initial()};
  dist[a.initial()] = 0;
  for (std::size_t i = 0; i < bfs.size(); ++i)
    for (int dst : g.adj[bfs[i]])
      if (dist[dst] < 0) {
        dist[dst] = dist[bfs[i]] + 1;
        parent[dst] = bfs[i];
        bfs.push_back(dst);
      }
  std::size_t best = 0;
  for (std::size_t i = 1; i < w.loop.size(); ++i)
    if (dist[w.loop[i].state] >= 0 && dist[w.loop[i].state] < dist[w.loop[best].state]) best = i;
  std::rotate(w.loop.begin(), w.loop.begin() + best, w.loop.end());

  auto edge_letter = [&](int q, int dst) -> std::pair<std::uint32_t, std::uint32_t> {
    for (const auto& t : a.transitions(q))
      for (std::uint32_t x = 0; x < a.sig().num_inputs(); ++x)
        if (t.branch[x] == dst) return {t.out, x};
    throw automaton_error("minimize_witness_stem: edge lookup failed");
  };
  std::vector<int> path;
  for (int cur = w.loop.front().state; cur != -1; cur = parent[cur]) path.push_back(cur);
  std::reverse(path.begin(), path.end());
  w.stem.clear();
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    auto [y, x] = edge_letter(path[i], path[i + 1]);
    w.stem.push_back({path[i], y, x});
  }
}

inline Verdict check_dpw(const ParityWordAutomaton& dpw_in, CheckArtifacts* artifacts) {
  ParityWordAutomaton dpw = complete(dpw_in);
  if (artifacts) artifacts->dpw = dpw;

  ParityTreeAutomaton tree = spread(dpw);
  if (artifacts) artifacts->spread_automaton = tree;

  ParityTreeAutomaton trimmed = prune(tree);
  if (artifacts) artifacts->pruned = trimmed;

  Verdict v;
  if (trimmed.transitions(trimmed.initial()).empty() && trimmed.num_states() == 1) {
    // Empty tree language: reactive safe with the reject-all monitor. The
    // linear/reactive distinction still follows the word language (e.g.
    // "eventually c" on inputs empties the tree language yet is liveness).
    v.cls = classify_linear_safety(dpw) ? SafetyClass::LinearSafe
                                        : SafetyClass::ReactiveSafeNotLinear;
    ParityWordAutomaton reject_all(dpw.sig(), 1, 0);
    v.monitor = reject_all;
    return v;
  }

  if (auto cyc = has_rejecting_cycle(trimmed)) {
    minimize_witness_stem(trimmed, *cyc);
    v.cls = SafetyClass::NotReactiveSafe;
    v.witness = project_to_letters(*cyc);
    return v;
  }

  v.monitor = collapse_w(trimmed);
  v.cls = classify_linear_safety(dpw) ? SafetyClass::LinearSafe
                                      : SafetyClass::ReactiveSafeNotLinear;
  return v;
}

}  // namespace detail

inline Verdict check_reactive_safety(const ParityWordAutomaton& a,
                                     std::size_t max_states = 200000,
                                     CheckArtifacts* artifacts = nullptr) {
  if (a.is_deterministic()) return detail::check_dpw(a, artifacts);
  if (!a.is_buchi())
    throw automaton_error(
        "check_reactive_safety: nondeterministic input must be a Buchi automaton");
  if (artifacts) artifacts->nba = a;
  return detail::check_dpw(determinize(a, max_states), artifacts);
}

inline Verdict check_reactive_safety(const Formula& f, const Signature& sig,
                                     std::size_t max_states = 200000,
                                     CheckArtifacts* artifacts = nullptr) {
  ParityWordAutomaton nba = ltl_to_nba(to_nnf(f), sig);
  if (artifacts) artifacts->nba = nba;
  return detail::check_dpw(determinize(nba, max_states), artifacts);
}

// Tree-automaton front end. A reactive-safe tree language is by definition
// the spreading of a linear-time safety word property (the monitor), so a
// positive verdict is reported as LinearSafe.
inline Verdict check_reactive_safety(const ParityTreeAutomaton& a,
                                     CheckArtifacts* artifacts = nullptr) {
  ParityTreeAutomaton trimmed = prune(a);
  if (artifacts) artifacts->pruned = trimmed;

  Verdict v;
  if (trimmed.transitions(trimmed.initial()).empty() && trimmed.num_states() == 1) {
    v.cls = SafetyClass::LinearSafe;
    v.monitor = ParityWordAutomaton(a.sig(), 1, 0);
    return v;
  }
  if (!a.is_deterministic())
    throw automaton_error(
        "check_reactive_safety: nondeterministic tree automata are not supported");
  if (auto cyc = has_rejecting_cycle(trimmed)) {
    detail::minimize_witness_stem(trimmed, *cyc);
    v.cls = SafetyClass::NotReactiveSafe;
    v.witness = project_to_letters(*cyc);
    return v;
  }
  v.monitor = collapse_w(trimmed);
  v.cls = SafetyClass::LinearSafe;
  return v;
}

// Language equality of deterministic safety word automata. Safety
// languages are determined by their sets of extensible prefixes, so after
// trimming states that admit no infinite run, the two automata are
// equivalent iff the product never reaches a letter enabled on exactly one
// side.
inline bool monitor_equivalent(const ParityWordAutomaton& m1, const ParityWordAutomaton& m2) {
  if (m1.sig() != m2.sig())
    throw automaton_error("monitor_equivalent: alphabet mismatch");
  if (!m1.is_deterministic() || !m2.is_deterministic() || !m1.is_safety() || !m2.is_safety())
    throw automaton_error("monitor_equivalent: inputs must be deterministic safety automata");

  // Trim states with no infinite run (iteratively drop dead ends).
  auto trim = [](const ParityWordAutomaton& a) {
    std::vector<char> alive(a.num_states(), 1);
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t q = 0; q < a.num_states(); ++q) {
        if (!alive[q]) continue;
        bool has_succ = false;
        for (std::size_t l = 0; l < a.sig().num_letters(); ++l) {
          int dst = a.det_successor(static_cast<int>(q), l);
          if (dst >= 0 && alive[dst]) has_succ = true;
        }
        if (!has_succ) {
          alive[q] = 0;
          changed = true;
        }
      }
    }
    return alive;
  };
  std::vector<char> alive1 = trim(m1), alive2 = trim(m2);

  const int dead = -1;
  std::map<std::pair<int, int>, char> seen;
  std::vector<std::pair<int, int>> stack;
  int s1 = alive1[m1.initial()] ? m1.initial() : dead;
  int s2 = alive2[m2.initial()] ? m2.initial() : dead;
  stack.emplace_back(s1, s2);
  seen[{s1, s2}] = 1;
  while (!stack.empty()) {
    auto [q1, q2] = stack.back();
    stack.pop_back();
    if ((q1 == dead) != (q2 == dead)) return false;
    if (q1 == dead) continue;
    for (std::size_t l = 0; l < m1.sig().num_letters(); ++l) {
      int d1 = m1.det_successor(q1, l);
      if (d1 >= 0 && !alive1[d1]) d1 = dead;
      int d2 = m2.det_successor(q2, l);
      if (d2 >= 0 && !alive2[d2]) d2 = dead;
      if (!seen.count({d1, d2})) {
        seen[{d1, d2}] = 1;
        stack.emplace_back(d1, d2);
      }
    }
  }
  return true;
}

}  // namespace rsafe
