#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "helpers.hpp"
#include "rsafe/rsafe.hpp"

using namespace rsafe;

namespace {
const Signature kSmall({"x"}, {"y"});

// Canonical serialization after BFS renaming from the initial state;
// machines are isomorphic (fixing the initial state) iff these agree.
std::string canonical_key(const MooreMachine& m) {
  std::vector<int> renum(m.num_states(), -1);
  std::vector<int> order{m.initial};
  renum[m.initial] = 0;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (std::size_t x = 0; x < m.sig.num_inputs(); ++x) {
      int dst = m.next[order[i]][x];
      if (renum[dst] < 0) {
        renum[dst] = static_cast<int>(order.size());
        order.push_back(dst);
      }
    }
  std::string key = std::to_string(order.size()) + ";";
  for (int q : order) {
    key += std::to_string(m.output[q]) + ":";
    for (std::size_t x = 0; x < m.sig.num_inputs(); ++x)
      key += std::to_string(renum[m.next[q][x]]) + ",";
    key += ";";
  }
  return key;
}

// Independent census: every total machine on exactly d states (d up to
// max_states) whose states are all reachable, deduplicated by canonical
// key.
std::set<std::string> brute_force_census(const Signature& sig, int max_states) {
  std::set<std::string> keys;
  const int num_in = static_cast<int>(sig.num_inputs());
  const int num_out = static_cast<int>(sig.num_outputs());
  for (int d = 1; d <= max_states; ++d) {
    MooreMachine m;
    m.sig = sig;
    m.initial = 0;
    m.output.assign(d, 0);
    m.next.assign(d, std::vector<int>(num_in, 0));
    const int slots = d * num_in;
    std::function<void(int)> rec_out = [&](int s) {
      if (s == d) {
        // Keep only machines using all d states.
        std::vector<char> seen(d, 0);
        std::vector<int> stack{0};
        seen[0] = 1;
        int found = 1;
        while (!stack.empty()) {
          int q = stack.back();
          stack.pop_back();
          for (int x = 0; x < num_in; ++x)
            if (!seen[m.next[q][x]]) {
              seen[m.next[q][x]] = 1;
              ++found;
              stack.push_back(m.next[q][x]);
            }
        }
        if (found == d) keys.insert(canonical_key(m));
        return;
      }
      for (int o = 0; o < num_out; ++o) {
        m.output[s] = static_cast<std::uint32_t>(o);
        rec_out(s + 1);
      }
    };
    std::function<void(int)> rec_trans = [&](int slot) {
      if (slot == slots) {
        rec_out(0);
        return;
      }
      for (int t = 0; t < d; ++t) {
        m.next[slot / num_in][slot % num_in] = t;
        rec_trans(slot + 1);
      }
    };
    rec_trans(0);
  }
  return keys;
}
}  // namespace

TEST_CASE("enumerate_moore lists each isomorphism class exactly once") {
  for (int max_states = 1; max_states <= 3; ++max_states) {
    std::set<std::string> census = brute_force_census(kSmall, max_states);
    std::set<std::string> seen;
    std::size_t visits = 0;
    enumerate_moore(kSmall, max_states, [&](const MooreMachine& m) {
      ++visits;
      CHECK(m.num_states() <= static_cast<std::size_t>(max_states));
      std::string key = canonical_key(m);
      CHECK(!seen.count(key));  // no duplicates
      CHECK(census.count(key));  // nothing outside the census
      seen.insert(key);
    });
    INFO("max_states " << max_states);
    CHECK(visits == census.size());
    CHECK(seen == census);
  }
}

TEST_CASE("enumerated machines come out in canonical BFS form") {
  enumerate_moore(kSmall, 3, [&](const MooreMachine& m) {
    // Discovery order must be the identity.
    std::vector<int> renum(m.num_states(), -1);
    std::vector<int> order{0};
    renum[0] = 0;
    for (std::size_t i = 0; i < order.size(); ++i)
      for (std::size_t x = 0; x < m.sig.num_inputs(); ++x) {
        int dst = m.next[order[i]][x];
        if (renum[dst] < 0) {
          renum[dst] = static_cast<int>(order.size());
          order.push_back(dst);
        }
      }
    CHECK(order.size() == m.num_states());
    for (std::size_t q = 0; q < m.num_states(); ++q)
      CHECK(renum[q] == static_cast<int>(q));
  });
}

TEST_CASE("enumerate_moore guards its search space") {
  const Signature big({"c", "e"}, {"b", "f"});
  CHECK_THROWS_AS(enumerate_moore(big, 7, [](const MooreMachine&) {}), resource_error);
}

TEST_CASE("eval_ltl_lasso at loop boundaries") {
  const Signature sig({}, {"y"});
  const Letter y{1, 0}, n{0, 0};
  auto ev = [&](const std::string& text, const Lasso& w) {
    return eval_ltl_lasso(parse_ltl(text, sig), sig, w);
  };
  // X across the stem/loop seam and around the loop.
  CHECK(ev("X y", {{n}, {y}}));
  CHECK(ev("X X y", {{n}, {y}}));  // loop of length 1 repeats
  CHECK(!ev("X X y", {{n}, {y, n}}));
  // U with the witness found only by looking ahead into the loop.
  CHECK(ev("y U (X y)", {{}, {y, n, y}}));   // fulfilled at position 1
  CHECK(!ev("y U (X y)", {{y}, {n, n}}));    // no position is followed by y
  CHECK(ev("(y | true) U (X y)", {{}, {n, y}}));
  // G/F over the loop ignore the stem.
  CHECK(ev("G y", {{n}, {y}}) == false);
  CHECK(ev("F (G y)", {{n}, {y}}));
  CHECK(ev("G (F y)", {{}, {n, n, y}}));
  CHECK(!ev("G (F y)", {{y, y}, {n}}));
  // R: right side must hold up to and including the release point.
  CHECK(ev("false R y", {{}, {y}}));
  CHECK(!ev("false R y", {{y}, {y, n}}));
}

TEST_CASE("eval_ltl_lasso rejects an empty loop") {
  const Signature sig({}, {"y"});
  CHECK_THROWS_AS(eval_ltl_lasso(mk_true(), sig, Lasso{{Letter{1, 0}}, {}}), automaton_error);
}
