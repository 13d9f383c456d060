#pragma once

#include "cake/subcore.hpp"

#include <map>
#include <utility>
#include <vector>

namespace cake {

struct CoreOutcome {
    int cutter = -1;
    std::vector<int> agents;
    std::vector<Piece> cut_pieces;
    std::vector<Infinitesimal> tags;
    std::map<int, Piece> shares;
    std::map<int, int> slot_of;
    Piece residue_before;
    Piece leftover;
    SubCoreStats stats;

    bool holds_full_piece(int agent) const { return shares.at(agent) == cut_pieces.at(slot_of.at(agent)); }
};

// The cutter splits the residue into |agents| pieces it values equally,
// SubCore serves everyone else with zero benchmarks, and the cutter takes the
// lowest-index untouched piece. Throws EmptyResidue if the cutter values the
// residue at zero.
CoreOutcome core(int cutter, const std::vector<int>& agents, const Piece& residue, Oracle& oracle,
                 ImaginaryLedger& ledger);

// The non-cutter whose share the cutter values least, and the cutter's margin
// V_cutter(residue)/n - V_cutter(that share).
std::pair<int, Rat> cutter_advantage(const CoreOutcome& outcome, const Profile& vals);

}  // namespace cake
