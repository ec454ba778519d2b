#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "rsafe/rsafe.hpp"

using namespace rsafe;

namespace {
const Signature kSmall({"x"}, {"y"});  // 4 letters

// Deterministic automaton for "always y" (safety, partial).
ParityWordAutomaton always_y() {
  ParityWordAutomaton a(kSmall, 1, 0);
  for (std::uint32_t x = 0; x < 2; ++x) a.add_edge(0, Letter{1, x}, 0);
  return a;
}

// Deterministic Buchi automaton for "eventually y".
ParityWordAutomaton eventually_y() {
  ParityWordAutomaton a(kSmall, 2, 0);
  a.set_color(0, 1);
  a.set_color(1, 2);
  for (std::uint32_t x = 0; x < 2; ++x) {
    a.add_edge(0, Letter{0, x}, 0);
    a.add_edge(0, Letter{1, x}, 1);
    for (std::uint32_t y = 0; y < 2; ++y) a.add_edge(1, Letter{y, x}, 1);
  }
  return a;
}
}  // namespace

TEST_CASE("complete adds a rejecting sink") {
  ParityWordAutomaton a = always_y();
  CHECK(!a.is_total());
  ParityWordAutomaton b = complete(a);
  CHECK(b.is_total());
  CHECK(b.is_deterministic());
  CHECK(b.num_states() == 2);
  CHECK(b.color(1) == 1);
  // The language is unchanged.
  std::mt19937 rng(7);
  for (int i = 0; i < 50; ++i) {
    Lasso w = testutil::random_lasso(kSmall, rng);
    CHECK(accepts_lasso_det(a, w) == accepts_lasso_det(b, w));
  }
  // Completing a total automaton is the identity on states.
  CHECK(complete(b).num_states() == b.num_states());
}

TEST_CASE("lasso membership on hand examples") {
  ParityWordAutomaton g = complete(always_y());
  Lasso all_y{{}, {Letter{1, 0}}};
  Lasso once_no_y{{Letter{1, 0}, Letter{0, 1}}, {Letter{1, 1}}};
  CHECK(accepts_lasso_det(g, all_y));
  CHECK(!accepts_lasso_det(g, once_no_y));

  ParityWordAutomaton f = eventually_y();
  Lasso never_y{{}, {Letter{0, 0}}};
  Lasso late_y{{Letter{0, 0}, Letter{0, 1}}, {Letter{1, 0}}};
  CHECK(!accepts_lasso_det(f, never_y));
  CHECK(accepts_lasso_det(f, late_y));
}

TEST_CASE("deterministic and nondeterministic membership agree") {
  std::mt19937 rng(42);
  for (int i = 0; i < 100; ++i) {
    ParityWordAutomaton a = testutil::random_dpw(kSmall, rng, 4, 3);
    for (int j = 0; j < 10; ++j) {
      Lasso w = testutil::random_lasso(kSmall, rng);
      bool d = accepts_lasso_det(a, w);
      CHECK(d == accepts_lasso_nondet(a, w));
      CHECK(d == testutil::simulate_lasso(a, w));
    }
  }
}

TEST_CASE("prune_word preserves the language") {
  std::mt19937 rng(4242);
  for (int i = 0; i < 100; ++i) {
    ParityWordAutomaton a = testutil::random_dpw(kSmall, rng, 5, 3);
    ParityWordAutomaton p = prune_word(a);
    CHECK(p.is_deterministic());
    for (int j = 0; j < 20; ++j) {
      Lasso w = testutil::random_lasso(kSmall, rng);
      CHECK(accepts_lasso_det(a, w) == accepts_lasso_det(p, w));
    }
  }
}

TEST_CASE("prune_word shrinks an empty-language automaton to one state") {
  ParityWordAutomaton a(kSmall, 2, 0);
  a.set_color(0, 1);
  a.set_color(1, 1);
  for (std::size_t l = 0; l < kSmall.num_letters(); ++l) {
    a.add_edge(0, l, 1);
    a.add_edge(1, l, 0);
  }
  ParityWordAutomaton p = prune_word(a);
  CHECK(p.num_states() == 1);
  for (std::size_t l = 0; l < kSmall.num_letters(); ++l)
    CHECK(p.det_successor(0, l) == -1);
}

TEST_CASE("classify_linear_safety on hand examples") {
  CHECK(classify_linear_safety(complete(always_y())));
  CHECK(!classify_linear_safety(eventually_y()));
}

TEST_CASE("classify_linear_safety matches the brute-force oracle") {
  std::mt19937 rng(31337);
  int safe_seen = 0, unsafe_seen = 0;
  for (int i = 0; i < 60; ++i) {
    ParityWordAutomaton a = testutil::random_dpw(kSmall, rng, 4, 3);
    bool lib = classify_linear_safety(a);
    bool oracle = testutil::brute_force_linear_safety(a);
    CHECK(lib == oracle);
    (lib ? safe_seen : unsafe_seen)++;
  }
  // The sample must actually exercise both verdicts.
  CHECK(safe_seen > 0);
  CHECK(unsafe_seen > 0);
}
