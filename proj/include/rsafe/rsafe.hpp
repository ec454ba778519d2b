#pragma once

#include "rsafe/checker.hpp"
#include "rsafe/determinize.hpp"
#include "rsafe/graph.hpp"
#include "rsafe/hoa.hpp"
#include "rsafe/ltl.hpp"
#include "rsafe/ltl_to_nba.hpp"
#include "rsafe/oracle.hpp"
#include "rsafe/parity_game.hpp"
#include "rsafe/signature.hpp"
#include "rsafe/tree_automaton.hpp"
#include "rsafe/word_automaton.hpp"
