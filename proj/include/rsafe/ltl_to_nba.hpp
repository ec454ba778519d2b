// ltl_to_nba.hpp -- tableau translation from NNF LTL to nondeterministic
// Buchi word automata.
//
// A state is a set of pending obligations (closure formulas that must hold
// on the remaining word) plus a degeneralization counter over the U/F
// subformulas. Reading a letter unfolds the obligations with the usual
// one-step expansion rules; the nondeterminism comes from the disjunctive
// and fulfil-or-postpone choices. The counter advances past an U/F
// obligation whenever the step did not postpone it, and states that have
// completed a full round are accepting (color 2; all others color 1).

#pragma once

#include <map>
#include <vector>

#include "rsafe/ltl.hpp"
#include "rsafe/word_automaton.hpp"

namespace rsafe {

namespace detail {

struct Closure {
  struct Entry {
    Op op;
    std::string atom;
    int lhs = -1, rhs = -1;
  };
  std::vector<Entry> entries;
  std::vector<int> uf;  // closure ids of Until/Eventually formulas

  int index_of(const Formula& f) {
    for (std::size_t i = 0; i < keys.size(); ++i)
      if (structurally_equal(keys[i], f)) return static_cast<int>(i);
    int l = f->lhs ? index_of(f->lhs) : -1;
    int r = f->rhs ? index_of(f->rhs) : -1;
    keys.push_back(f);
    entries.push_back({f->op, f->atom, l, r});
    if (f->op == Op::Until || f->op == Op::Eventually)
      uf.push_back(static_cast<int>(entries.size()) - 1);
    return static_cast<int>(entries.size()) - 1;
  }

  std::vector<Formula> keys;
};

}  // namespace detail

inline ParityWordAutomaton ltl_to_nba(const Formula& formula, const Signature& sig) {
  Formula f = formula;
  if (!is_nnf(f))
    throw automaton_error("ltl_to_nba: input must be in negation normal form");

  detail::Closure cl;
  const int root = cl.index_of(f);
  const int m = static_cast<int>(cl.entries.size());
  const int k = static_cast<int>(cl.uf.size());

  using Mask = std::vector<char>;  // over closure ids / uf indices

  // All (next-set, postponed-set) outcomes of expanding `todo` under the
  // given letter.
  struct Outcome {
    Mask next;
    Mask postponed;
  };
  std::vector<Outcome> outcomes;

  auto uf_pos = [&](int id) {
    for (int i = 0; i < k; ++i)
      if (cl.uf[i] == id) return i;
    return -1;
  };

  std::function<void(std::vector<int>, Mask, Mask, Mask, Letter)> expand =
      [&](std::vector<int> todo, Mask processed, Mask next, Mask postponed, Letter letter) {
        while (!todo.empty()) {
          int id = todo.back();
          todo.pop_back();
          if (processed[id]) continue;
          processed[id] = 1;
          const auto& e = cl.entries[id];
          switch (e.op) {
            case Op::True:
              break;
            case Op::False:
              return;
            case Op::Atom:
              if (!sig.holds(e.atom, letter)) return;
              break;
            case Op::Not:
              if (sig.holds(cl.entries[e.lhs].atom, letter)) return;
              break;
            case Op::And:
              todo.push_back(e.lhs);
              todo.push_back(e.rhs);
              break;
            case Op::Or: {
              auto t1 = todo;
              t1.push_back(e.lhs);
              expand(std::move(t1), processed, next, postponed, letter);
              todo.push_back(e.rhs);
              break;
            }
            case Op::Next:
              next[e.lhs] = 1;
              break;
            case Op::Globally:
              todo.push_back(e.lhs);
              next[id] = 1;
              break;
            case Op::Eventually: {
              auto t1 = todo;
              t1.push_back(e.lhs);
              expand(std::move(t1), processed, next, postponed, letter);
              next[id] = 1;
              postponed[uf_pos(id)] = 1;
              break;
            }
            case Op::Until: {
              auto t1 = todo;
              t1.push_back(e.rhs);
              expand(std::move(t1), processed, next, postponed, letter);
              todo.push_back(e.lhs);
              next[id] = 1;
              postponed[uf_pos(id)] = 1;
              break;
            }
            case Op::Release: {
              auto t1 = todo;
              t1.push_back(e.rhs);
              t1.push_back(e.lhs);
              expand(std::move(t1), processed, next, postponed, letter);
              todo.push_back(e.rhs);
              next[id] = 1;
              break;
            }
          }
        }
        outcomes.push_back({next, postponed});
      };

  // State = (obligation set, counter in 0..k); counter == k is accepting.
  struct State {
    Mask set;
    int counter;
    bool operator<(const State& o) const {
      return set != o.set ? set < o.set : counter < o.counter;
    }
  };

  std::map<State, int> index;
  std::vector<State> states;
  auto intern = [&](const State& s) {
    auto [it, fresh] = index.try_emplace(s, static_cast<int>(states.size()));
    if (fresh) states.push_back(s);
    return it->second;
  };

  Mask init(m, 0);
  init[root] = 1;
  intern({init, 0});

  std::vector<std::vector<std::pair<std::size_t, int>>> edges;  // (letter, dst)
  for (std::size_t si = 0; si < states.size(); ++si) {
    edges.emplace_back();
    const State s = states[si];
    for (std::size_t li = 0; li < sig.num_letters(); ++li) {
      Letter letter = sig.letter_at(li);
      std::vector<int> todo;
      for (int id = 0; id < m; ++id)
        if (s.set[id]) todo.push_back(id);
      outcomes.clear();
      expand(std::move(todo), Mask(m, 0), Mask(m, 0), Mask(std::max(k, 1), 0), letter);

      std::vector<State> dedup;
      for (const auto& out : outcomes) {
        int j = s.counter == k ? 0 : s.counter;
        while (j < k && !out.postponed[j]) ++j;
        State t{out.next, j};
        bool seen = false;
        for (const auto& d : dedup)
          if (!(d < t) && !(t < d)) seen = true;
        if (seen) continue;
        dedup.push_back(t);
        edges[si].emplace_back(li, intern(t));
      }
    }
  }

  ParityWordAutomaton nba(sig, states.size(), 0);
  for (std::size_t q = 0; q < states.size(); ++q) {
    nba.set_color(static_cast<int>(q), states[q].counter == k ? 2 : 1);
    for (auto [li, dst] : edges[q]) nba.add_edge(static_cast<int>(q), li, dst);
  }
  return nba;
}

}  // namespace rsafe
