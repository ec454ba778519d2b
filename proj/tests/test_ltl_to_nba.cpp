#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "rsafe/rsafe.hpp"

using namespace rsafe;

namespace {
const Signature kSig({"c"}, {"b"});

bool nba_accepts(const Formula& f, const Lasso& w) {
  return accepts_lasso_nondet(ltl_to_nba(to_nnf(f), kSig), w);
}

Formula parse(const std::string& s) { return parse_ltl(s, kSig); }

const Letter kB{1, 0};       // b, no c
const Letter kC{0, 1};       // c, no b
const Letter kNone{0, 0};    // neither
const Letter kBoth{1, 1};    // both
}  // namespace

TEST_CASE("non-NNF input is rejected") {
  CHECK_THROWS_AS(ltl_to_nba(parse("!(c U b)"), kSig), automaton_error);
}

TEST_CASE("hand-checked truth table") {
  // (formula, stem, loop, expected) quadruples evaluated by hand.
  struct Row {
    const char* f;
    Lasso w;
    bool expected;
  };
  const std::vector<Row> rows = {
      {"b", {{}, {kB}}, true},
      {"b", {{}, {kC}}, false},
      {"X b", {{kNone}, {kB}}, true},
      {"X b", {{kB}, {kC}}, false},
      {"F b", {{kNone, kNone}, {kB, kNone}}, true},
      {"F b", {{kB}, {kNone}}, true},
      {"F b", {{}, {kC}}, false},
      {"G b", {{}, {kB, kBoth}}, true},
      {"G b", {{kB}, {kB, kNone}}, false},
      {"c U b", {{kC, kC}, {kB}}, true},
      {"c U b", {{kC, kNone}, {kB}}, false},
      {"c U b", {{}, {kC}}, false},
      {"c R b", {{}, {kB}}, true},
      {"c R b", {{kB, kBoth}, {kNone}}, true},
      {"c R b", {{kB}, {kC}}, false},
      {"G (c -> X b)", {{}, {kC, kB}}, true},
      {"G (c -> X b)", {{}, {kC, kNone}}, false},
      {"G F b", {{}, {kNone, kB}}, true},
      {"G F b", {{kB, kB}, {kNone}}, false},
      {"F G b", {{kNone}, {kB}}, true},
      {"F G b", {{}, {kB, kNone}}, false},
  };
  for (const auto& row : rows) {
    INFO(row.f << " on " << lasso_to_string(kSig, row.w));
    CHECK(eval_ltl_lasso(parse(row.f), kSig, row.w) == row.expected);
    CHECK(nba_accepts(parse(row.f), row.w) == row.expected);
  }
}

TEST_CASE("fairness-under-nesting does not starve obligations") {
  // G(X F b): every degeneralization round must wait for the F to be
  // fulfilled, not merely absent from the obligation set.
  Formula f = parse("G (X (F b))");
  CHECK(nba_accepts(f, {{}, {kNone, kB}}));
  CHECK(!nba_accepts(f, {{kB, kB, kB}, {kNone}}));
  // Two interleaved eventualities.
  Formula g = parse("(F b) & (F c) & G (b -> F c)");
  CHECK(nba_accepts(g, {{kB}, {kC}}));
  CHECK(!nba_accepts(g, {{kC}, {kB}}));
}

TEST_CASE("automaton and direct evaluation agree on random formulas") {
  std::mt19937 rng(20240817);
  for (int i = 0; i < 100; ++i) {
    Formula f = to_nnf(testutil::random_formula(kSig, rng, 4));
    ParityWordAutomaton nba = ltl_to_nba(f, kSig);
    CHECK(nba.is_buchi());
    for (int j = 0; j < 12; ++j) {
      Lasso w = testutil::random_lasso(kSig, rng);
      INFO(print_ltl(f) << " on " << lasso_to_string(kSig, w));
      CHECK(accepts_lasso_nondet(nba, w) == eval_ltl_lasso(f, kSig, w));
    }
  }
}

TEST_CASE("trivial formulas") {
  ParityWordAutomaton t = ltl_to_nba(mk_true(), kSig);
  ParityWordAutomaton f = ltl_to_nba(mk_false(), kSig);
  std::mt19937 rng(3);
  for (int j = 0; j < 10; ++j) {
    Lasso w = testutil::random_lasso(kSig, rng);
    CHECK(accepts_lasso_nondet(t, w));
    CHECK(!accepts_lasso_nondet(f, w));
  }
}
