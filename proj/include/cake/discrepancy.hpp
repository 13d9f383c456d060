#pragma once

#include "cake/piece.hpp"
#include "cake/snapshot.hpp"
#include "cake/valuation.hpp"

#include <functional>
#include <vector>

namespace cake {

struct DiscrepancyOutcome {
    bool split = false;
    std::vector<int> D;        // value the set-aside piece at >= n times the residue
    std::vector<int> D_prime;  // value it at <= residue / n
    Piece residue;
    int core_rounds = 0;
};

// Runs one Core round with the given cutter, commits its shares and returns
// the shrunken residue.
using CoreRunner = std::function<Piece(int cutter, const Piece& residue)>;

// `residue` excludes the discrepant piece and already holds the pass's
// extracted pieces again. Core rounds shrink the residue until no agent
// values the piece within a factor n of the residue, and, when no split is
// possible, until the trimmer's bonus is significant. Throws BudgetExhausted
// past round_cap rounds.
DiscrepancyOutcome discrepancy(const Piece& piece, int trimmer, const Rat& trimmer_bonus, const Piece& residue,
                               const std::vector<int>& agents, const Params& params, Oracle& oracle,
                               const CoreRunner& run_core, long round_cap);

}  // namespace cake
