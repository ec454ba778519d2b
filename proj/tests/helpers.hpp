// helpers.hpp -- shared random generators and brute-force oracles for the
// test suite. The oracles deliberately avoid the library's graph machinery
// so that cross-checks are independent: lasso membership is decided by
// plain run simulation and safety by bounded lasso enumeration.

#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "rsafe/rsafe.hpp"

namespace testutil {

using rsafe::Formula;
using rsafe::Lasso;
using rsafe::Letter;
using rsafe::MooreMachine;
using rsafe::ParityWordAutomaton;
using rsafe::Signature;

inline Letter random_letter(const Signature& sig, std::mt19937& rng) {
  std::uniform_int_distribution<std::size_t> d(0, sig.num_letters() - 1);
  return sig.letter_at(d(rng));
}

inline Lasso random_lasso(const Signature& sig, std::mt19937& rng, int max_stem = 5,
                          int max_loop = 4) {
  std::uniform_int_distribution<int> stem_d(0, max_stem), loop_d(1, max_loop);
  Lasso w;
  int stem = stem_d(rng), loop = loop_d(rng);
  for (int i = 0; i < stem; ++i) w.stem.push_back(random_letter(sig, rng));
  for (int i = 0; i < loop; ++i) w.loop.push_back(random_letter(sig, rng));
  return w;
}

inline Formula random_formula(const Signature& sig, std::mt19937& rng, int depth) {
  std::vector<std::string> aps = sig.inputs();
  aps.insert(aps.end(), sig.outputs().begin(), sig.outputs().end());
  std::uniform_int_distribution<int> op_d(0, depth <= 0 ? 2 : 10);
  switch (op_d(rng)) {
    case 0:
      return rsafe::mk_atom(aps[std::uniform_int_distribution<std::size_t>(0, aps.size() - 1)(rng)]);
    case 1:
      return rsafe::mk_true();
    case 2:
      return rsafe::mk_false();
    case 3:
      return rsafe::mk_not(random_formula(sig, rng, depth - 1));
    case 4:
      return rsafe::mk_and(random_formula(sig, rng, depth - 1), random_formula(sig, rng, depth - 1));
    case 5:
      return rsafe::mk_or(random_formula(sig, rng, depth - 1), random_formula(sig, rng, depth - 1));
    case 6:
      return rsafe::mk_next(random_formula(sig, rng, depth - 1));
    case 7:
      return rsafe::mk_eventually(random_formula(sig, rng, depth - 1));
    case 8:
      return rsafe::mk_globally(random_formula(sig, rng, depth - 1));
    case 9:
      return rsafe::mk_until(random_formula(sig, rng, depth - 1), random_formula(sig, rng, depth - 1));
    default:
      return rsafe::mk_release(random_formula(sig, rng, depth - 1), random_formula(sig, rng, depth - 1));
  }
}

// Random deterministic total parity word automaton with colors in
// [0, max_color].
inline ParityWordAutomaton random_dpw(const Signature& sig, std::mt19937& rng, int num_states,
                                      int max_color) {
  ParityWordAutomaton a(sig, static_cast<std::size_t>(num_states), 0);
  std::uniform_int_distribution<int> state_d(0, num_states - 1), color_d(0, max_color);
  for (int q = 0; q < num_states; ++q) {
    a.set_color(q, color_d(rng));
    for (std::size_t l = 0; l < sig.num_letters(); ++l) a.add_edge(q, l, state_d(rng));
  }
  return a;
}

// Random nondeterministic Buchi automaton; every state keeps at least one
// outgoing edge overall so runs are usually possible but not guaranteed.
inline ParityWordAutomaton random_nba(const Signature& sig, std::mt19937& rng, int num_states) {
  ParityWordAutomaton a(sig, static_cast<std::size_t>(num_states), 0);
  std::uniform_int_distribution<int> state_d(0, num_states - 1);
  std::uniform_int_distribution<int> coin(0, 2);
  for (int q = 0; q < num_states; ++q) {
    a.set_color(q, coin(rng) == 0 ? 2 : 1);
    for (std::size_t l = 0; l < sig.num_letters(); ++l) {
      int fan = coin(rng);  // 0, 1 or 2 successors per letter
      for (int i = 0; i < fan; ++i) a.add_edge(q, l, state_d(rng));
    }
    a.add_edge(q, static_cast<std::size_t>(state_d(rng)) % sig.num_letters(), state_d(rng));
  }
  return a;
}

// Random deterministic partial safety automaton (all colors 0).
inline ParityWordAutomaton random_safety(const Signature& sig, std::mt19937& rng, int num_states,
                                         int missing_percent = 25) {
  ParityWordAutomaton a(sig, static_cast<std::size_t>(num_states), 0);
  std::uniform_int_distribution<int> state_d(0, num_states - 1), pct(0, 99);
  for (int q = 0; q < num_states; ++q)
    for (std::size_t l = 0; l < sig.num_letters(); ++l)
      if (pct(rng) >= missing_percent) a.add_edge(q, l, state_d(rng));
  return a;
}

inline MooreMachine random_moore(const Signature& sig, std::mt19937& rng, int num_states) {
  MooreMachine m;
  m.sig = sig;
  m.initial = 0;
  std::uniform_int_distribution<int> state_d(0, num_states - 1);
  std::uniform_int_distribution<std::uint32_t> out_d(0, static_cast<std::uint32_t>(sig.num_outputs()) - 1);
  for (int q = 0; q < num_states; ++q) {
    m.output.push_back(out_d(rng));
    m.next.emplace_back();
    for (std::size_t x = 0; x < sig.num_inputs(); ++x) m.next.back().push_back(state_d(rng));
  }
  return m;
}

// Direct lasso-run simulation, independent of the library's cycle search:
// follow the deterministic run until (state, loop position) repeats and
// inspect the maximum color on the repeating segment.
inline bool simulate_lasso(const ParityWordAutomaton& a, const Lasso& w) {
  int q = a.initial();
  for (Letter l : w.stem) {
    q = a.det_successor(q, a.sig().letter_index(l));
    if (q < 0) return false;
  }
  std::vector<std::vector<int>> step(a.num_states(), std::vector<int>(w.loop.size(), -1));
  std::vector<int> colors;
  int pos = 0;
  while (step[q][pos] < 0) {
    step[q][pos] = static_cast<int>(colors.size());
    colors.push_back(a.color(q));
    q = a.det_successor(q, a.sig().letter_index(w.loop[pos]));
    if (q < 0) return false;
    pos = (pos + 1) % static_cast<int>(w.loop.size());
  }
  int mc = 0;
  for (std::size_t i = step[q][pos]; i < colors.size(); ++i) mc = std::max(mc, colors[i]);
  return mc % 2 == 0;
}

// Enumerates all lassos with the given stem/loop bounds and calls visit.
inline void for_all_lassos(const Signature& sig, int max_stem, int max_loop,
                           const std::function<void(const Lasso&)>& visit) {
  const int L = static_cast<int>(sig.num_letters());
  std::function<void(Lasso&, int, int)> rec_loop = [&](Lasso& w, int remaining, int) {
    if (!w.loop.empty()) visit(w);
    if (remaining == 0) return;
    for (int l = 0; l < L; ++l) {
      w.loop.push_back(sig.letter_at(static_cast<std::size_t>(l)));
      rec_loop(w, remaining - 1, 0);
      w.loop.pop_back();
    }
  };
  std::function<void(Lasso&, int)> rec_stem = [&](Lasso& w, int remaining) {
    rec_loop(w, max_loop, 0);
    if (remaining == 0) return;
    for (int l = 0; l < L; ++l) {
      w.stem.push_back(sig.letter_at(static_cast<std::size_t>(l)));
      rec_stem(w, remaining - 1);
      w.stem.pop_back();
    }
  };
  Lasso w;
  rec_stem(w, max_stem);
}

// Brute-force linear-time safety for a deterministic total automaton:
// not safe iff some lasso (bounded by the state count, which is enough to
// expose any rejecting cycle among live states) is rejected although every
// prefix still has a nonempty residual. Residual nonemptiness is itself
// decided by bounded lasso enumeration and run simulation.
inline bool brute_force_linear_safety(const ParityWordAutomaton& a) {
  const int n = static_cast<int>(a.num_states());

  std::vector<char> nonempty(a.num_states(), 0);
  for (std::size_t q = 0; q < a.num_states(); ++q) {
    // Run simulation from q: reuse simulate_lasso by re-rooting.
    ParityWordAutomaton rerooted(a.sig(), a.num_states(), static_cast<int>(q));
    for (std::size_t s = 0; s < a.num_states(); ++s) {
      rerooted.set_color(static_cast<int>(s), a.color(static_cast<int>(s)));
      for (std::size_t l = 0; l < a.sig().num_letters(); ++l)
        rerooted.add_edge(static_cast<int>(s), l, a.det_successor(static_cast<int>(s), l));
    }
    bool found = false;
    for_all_lassos(a.sig(), n - 1, n, [&](const Lasso& w) {
      if (!found && simulate_lasso(rerooted, w)) found = true;
    });
    nonempty[q] = found;
  }

  bool counterexample = false;
  for_all_lassos(a.sig(), n - 1, n, [&](const Lasso& w) {
    if (counterexample) return;
    if (simulate_lasso(a, w)) return;
    // Rejected; check every prefix has a nonempty residual.
    int q = a.initial();
    if (!nonempty[q]) return;
    for (Letter l : w.stem) {
      q = a.det_successor(q, a.sig().letter_index(l));
      if (!nonempty[q]) return;
    }
    // The loop must stay inside nonempty states for n rounds to cover the
    // whole eventual cycle.
    for (int round = 0; round < n; ++round)
      for (Letter l : w.loop) {
        q = a.det_successor(q, a.sig().letter_index(l));
        if (!nonempty[q]) return;
      }
    counterexample = true;
  });
  return !counterexample;
}

}  // namespace testutil
