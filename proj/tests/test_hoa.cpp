#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "rsafe/rsafe.hpp"

using namespace rsafe;

namespace {
const Signature kSmall({"x"}, {"y"});
}

TEST_CASE("reading a hand-written parity HOA") {
  const std::string text =
      "HOA: v1\n"
      "States: 2\n"
      "Start: 0\n"
      "AP: 2 \"x\" \"y\"\n"
      "spec-io: 1\n"
      "acc-name: parity max even 3\n"
      "Acceptance: 3 Inf(2) | (Fin(1) & Inf(0))\n"
      "--BODY--\n"
      "State: 0 {2}\n"
      "[0] 1\n"
      "[!0] 0\n"
      "State: 1 {1}\n"
      "[t] 1\n"
      "--END--\n";
  ParityWordAutomaton a = read_hoa(text);
  CHECK(a.num_states() == 2);
  CHECK(a.initial() == 0);
  CHECK(a.sig().inputs() == std::vector<std::string>{"x"});
  CHECK(a.sig().outputs() == std::vector<std::string>{"y"});
  CHECK(a.color(0) == 2);
  CHECK(a.color(1) == 1);
  // [0] means input x true, irrespective of y.
  CHECK(a.det_successor(0, a.sig().letter_index({0, 1})) == 1);
  CHECK(a.det_successor(0, a.sig().letter_index({1, 1})) == 1);
  CHECK(a.det_successor(0, a.sig().letter_index({0, 0})) == 0);
  CHECK(a.det_successor(1, a.sig().letter_index({1, 0})) == 1);
}

TEST_CASE("Buchi acceptance maps set 0 to color 2") {
  const std::string text =
      "HOA: v1\n"
      "States: 2\n"
      "Start: 0\n"
      "AP: 1 \"y\"\n"
      "spec-io: 0\n"
      "acc-name: Buchi\n"
      "Acceptance: 1 Inf(0)\n"
      "--BODY--\n"
      "State: 0\n"
      "[t] 1\n"
      "State: 1 {0}\n"
      "[0] 1\n"
      "--END--\n";
  ParityWordAutomaton a = read_hoa(text);
  CHECK(a.color(0) == 1);
  CHECK(a.color(1) == 2);
  CHECK(a.is_buchi());
}

TEST_CASE("'all' acceptance yields a safety automaton") {
  const std::string text =
      "HOA: v1\n"
      "States: 1\n"
      "Start: 0\n"
      "AP: 2 \"x\" \"y\"\n"
      "spec-io: 1\n"
      "acc-name: all\n"
      "Acceptance: 0 t\n"
      "--BODY--\n"
      "State: 0\n"
      "[1] 0\n"
      "--END--\n";
  ParityWordAutomaton a = read_hoa(text);
  CHECK(a.is_safety());
  CHECK(a.det_successor(0, a.sig().letter_index({1, 0})) == 0);
  CHECK(a.det_successor(0, a.sig().letter_index({0, 0})) == -1);
}

TEST_CASE("malformed inputs are rejected") {
  CHECK_THROWS_AS(read_hoa("HOA: v2\n--BODY--\n--END--\n"), hoa_error);
  CHECK_THROWS_AS(read_hoa("HOA: v1\nStates: 1\nStart: 0\nAP: 0\n"
                           "acc-name: all\nAcceptance: 0 t\n--BODY--\nState: 0\n--END--\n"),
                  hoa_error);  // missing spec-io
  CHECK_THROWS_AS(read_hoa("HOA: v1\nbogus: 1\n--BODY--\n--END--\n"), hoa_error);
  CHECK_THROWS_AS(read_hoa("HOA: v1\nStates: 1\nStart: 0\nAP: 1 \"y\"\nspec-io: 0\n"
                           "acc-name: all\nAcceptance: 0 t\n--BODY--\nState: 0\n[t] 7\n--END--\n"),
                  hoa_error);  // edge target out of range
}

TEST_CASE("write-read round trip is the identity on canonical automata") {
  std::mt19937 rng(2024);
  for (int i = 0; i < 50; ++i) {
    ParityWordAutomaton a = testutil::random_dpw(kSmall, rng, 5, 4);
    std::string first = write_hoa(a);
    ParityWordAutomaton b = read_hoa(first);
    CHECK(write_hoa(b) == first);
    CHECK(a.sig() == b.sig());
    for (int j = 0; j < 10; ++j) {
      Lasso w = testutil::random_lasso(kSmall, rng);
      CHECK(accepts_lasso_det(a, w) == accepts_lasso_det(b, w));
    }
  }
}

TEST_CASE("round trip preserves nondeterministic Buchi languages") {
  std::mt19937 rng(77);
  for (int i = 0; i < 30; ++i) {
    ParityWordAutomaton a = testutil::random_nba(kSmall, rng, 4);
    ParityWordAutomaton b = read_hoa(write_hoa(a));
    for (int j = 0; j < 10; ++j) {
      Lasso w = testutil::random_lasso(kSmall, rng);
      CHECK(accepts_lasso_nondet(a, w) == accepts_lasso_nondet(b, w));
    }
  }
}

TEST_CASE("canonicalize drops unreachable states and renumbers by BFS") {
  ParityWordAutomaton a(kSmall, 3, 1);
  a.set_color(1, 2);
  a.set_color(2, 1);
  for (std::size_t l = 0; l < kSmall.num_letters(); ++l) {
    a.add_edge(1, l, 2);
    a.add_edge(2, l, 1);
    a.add_edge(0, l, 0);  // unreachable
  }
  ParityWordAutomaton b = canonicalize(a);
  CHECK(b.num_states() == 2);
  CHECK(b.initial() == 0);
  CHECK(b.color(0) == 2);
  CHECK(b.color(1) == 1);
}

TEST_CASE("DOT export mentions every state") {
  std::mt19937 rng(5);
  ParityWordAutomaton a = testutil::random_dpw(kSmall, rng, 3, 2);
  std::string dot = write_dot(a, "g");
  CHECK(dot.find("digraph \"g\"") != std::string::npos);
  CHECK(dot.find("init ->") != std::string::npos);
}
