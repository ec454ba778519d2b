// oracle.hpp -- brute-force machinery used to ground the rest of the
// library: canonical enumeration of Moore machines and a direct LTL
// evaluator on ultimately periodic words.

#pragma once

#include <functional>
#include <vector>

#include "rsafe/ltl.hpp"
#include "rsafe/tree_automaton.hpp"

namespace rsafe {

// Invokes `visit` once per Moore machine with up to `max_states` states,
// one representative per isomorphism class. Representatives are in
// breadth-first canonical form: states are numbered in discovery order
// when scanning transitions from the initial state with inputs in
// canonical order, and every state is reachable. Such a form is unique
// per class (a reachable deterministic structure has no nontrivial
// automorphism fixing the initial state), so machines are generated
// directly in canonical form with no duplicate filtering.
inline void enumerate_moore(const Signature& sig, int max_states,
                            const std::function<void(const MooreMachine&)>& visit) {
  double bound = 1;
  for (int i = 0; i < max_states; ++i)
    bound *= static_cast<double>(sig.num_inputs()) * static_cast<double>(sig.num_outputs());
  if (bound > 1e7)
    throw resource_error("enumerate_moore: search space guard exceeded");

  const int num_in = static_cast<int>(sig.num_inputs());
  const int num_out = static_cast<int>(sig.num_outputs());

  MooreMachine m;
  m.sig = sig;
  m.initial = 0;

  // Transition slots are filled in BFS order; a slot may point at any
  // already-discovered state or mint the next fresh one.
  std::vector<int> trans;  // slot s*num_in + x
  std::function<void(int, int)> rec_trans = [&](int pos, int discovered) {
    if (pos == discovered * num_in) {
      // Structure complete; attach all output labelings.
      m.output.assign(discovered, 0);
      m.next.assign(discovered, std::vector<int>(num_in));
      for (int s = 0; s < discovered; ++s)
        for (int x = 0; x < num_in; ++x) m.next[s][x] = trans[s * num_in + x];
      std::function<void(int)> rec_out = [&](int s) {
        if (s == discovered) {
          visit(m);
          return;
        }
        for (int o = 0; o < num_out; ++o) {
          m.output[s] = static_cast<std::uint32_t>(o);
          rec_out(s + 1);
        }
      };
      rec_out(0);
      return;
    }
    const int limit = discovered < max_states ? discovered + 1 : discovered;
    for (int target = 0; target < limit; ++target) {
      trans.push_back(target);
      rec_trans(pos + 1, std::max(discovered, target + 1));
      trans.pop_back();
    }
  };
  rec_trans(0, 1);
}

inline std::vector<MooreMachine> enumerate_moore(const Signature& sig, int max_states) {
  std::vector<MooreMachine> out;
  enumerate_moore(sig, max_states, [&](const MooreMachine& m) { out.push_back(m); });
  return out;
}

// Direct LTL satisfaction on the lasso word stem . loop^omega, by fixpoint
// over the |stem| + |loop| distinct suffix positions.
inline bool eval_ltl_lasso(const Formula& f, const Signature& sig, const Lasso& w) {
  if (w.loop.empty()) throw automaton_error("eval_ltl_lasso: loop must be nonempty");
  const int positions = static_cast<int>(w.stem.size() + w.loop.size());
  auto letter_at = [&](int p) {
    return p < static_cast<int>(w.stem.size()) ? w.stem[p] : w.loop[p - w.stem.size()];
  };
  auto next = [&](int p) {
    return p + 1 < positions ? p + 1 : static_cast<int>(w.stem.size());
  };

  std::function<std::vector<char>(const Formula&)> eval =
      [&](const Formula& g) -> std::vector<char> {
    std::vector<char> v(positions, 0);
    switch (g->op) {
      case Op::True:
        std::fill(v.begin(), v.end(), 1);
        break;
      case Op::False:
        break;
      case Op::Atom:
        for (int p = 0; p < positions; ++p) v[p] = sig.holds(g->atom, letter_at(p));
        break;
      case Op::Not: {
        auto a = eval(g->lhs);
        for (int p = 0; p < positions; ++p) v[p] = !a[p];
        break;
      }
      case Op::And: {
        auto a = eval(g->lhs), b = eval(g->rhs);
        for (int p = 0; p < positions; ++p) v[p] = a[p] && b[p];
        break;
      }
      case Op::Or: {
        auto a = eval(g->lhs), b = eval(g->rhs);
        for (int p = 0; p < positions; ++p) v[p] = a[p] || b[p];
        break;
      }
      case Op::Next: {
        auto a = eval(g->lhs);
        for (int p = 0; p < positions; ++p) v[p] = a[next(p)];
        break;
      }
      case Op::Eventually: {
        auto a = eval(g->lhs);
        // Least fixpoint of v[p] = a[p] || v[next(p)].
        for (int round = 0; round < positions; ++round)
          for (int p = positions - 1; p >= 0; --p) v[p] = a[p] || v[next(p)];
        break;
      }
      case Op::Globally: {
        auto a = eval(g->lhs);
        std::fill(v.begin(), v.end(), 1);
        for (int round = 0; round < positions; ++round)
          for (int p = positions - 1; p >= 0; --p) v[p] = a[p] && v[next(p)];
        break;
      }
      case Op::Until: {
        auto a = eval(g->lhs), b = eval(g->rhs);
        for (int round = 0; round < positions; ++round)
          for (int p = positions - 1; p >= 0; --p) v[p] = b[p] || (a[p] && v[next(p)]);
        break;
      }
      case Op::Release: {
        auto a = eval(g->lhs), b = eval(g->rhs);
        std::fill(v.begin(), v.end(), 1);
        for (int round = 0; round < positions; ++round)
          for (int p = positions - 1; p >= 0; --p) v[p] = b[p] && (a[p] || v[next(p)]);
        break;
      }
    }
    return v;
  };
  return eval(f)[0] != 0;
}

}  // namespace rsafe
