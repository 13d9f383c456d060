#pragma once

#include "cake/piece.hpp"
#include "cake/tiebreak.hpp"
#include "cake/valuation.hpp"

#include <map>
#include <vector>

namespace cake {

struct PartialOutcome {
    std::map<int, Piece> shares;
    Piece residue;
    int core_rounds = 0;
    int subcore_calls = 0;
    int upgrades = 0;
    int literal_fallbacks = 0;  // SubCore calls answered by the exact search
};

// One Core round per agent with rotating cutters: envy-free, and every agent
// gets at least 1/n of its value of `cake`. Cutters who value the remaining
// residue at zero are skipped.
PartialOutcome proportional_ef_partial(const Piece& cake, const std::vector<int>& agents, Oracle& oracle,
                                       ImaginaryLedger& ledger);

// Envy-free partial allocation where every share is one interval worth at
// least 1/(3n) of its owner's value of `cake`. Throws CannotFormDivisions if a
// divider cannot mark n pieces of that value.
PartialOutcome connected_pieces(const Piece& cake, const std::vector<int>& agents, Oracle& oracle,
                                ImaginaryLedger& ledger);

}  // namespace cake
