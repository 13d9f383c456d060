#pragma once

#include "cake/goleft.hpp"
#include "cake/piece.hpp"
#include "cake/snapshot.hpp"
#include "cake/tiebreak.hpp"
#include "cake/valuation.hpp"

#include <map>
#include <string>
#include <vector>

namespace cake {

struct MainStats {
    long core_rounds = 0;
    long snapshots = 0;
    long band_rounds = 0;
    long checkpoints = 0;
    long resets = 0;
    long discrepancy_calls = 0;
    long discrepancy_splits = 0;
    std::vector<std::pair<std::vector<int>, std::vector<int>>> splits;  // (D, D') per split
    long dominance_recursions = 0;
    long goleft_runs = 0;
    long goleft_separations = 0;
    long goleft_insufficient = 0;
    long goleft_rolled_back = 0;
    long goleft_no_separation = 0;
    long missing_iso_group = 0;
    long exchanges = 0;
    long attachments = 0;
    long value_checks = 0;
    std::vector<QuotaEvent> quotas;
    std::vector<std::vector<int>> separations;  // sets returned by GoLeft
    long conversions = 0;
    long conversions_confirmed = 0;    // the GoLeft set became dominated
    long conversions_nonvacuous = 0;   // ... while some residue was left
    long conversions_substituted = 0;  // another dominated set was used
    long restarts = 0;
    int max_depth = 0;
    long subcore_fallbacks = 0;
};

struct MainResult {
    std::vector<Piece> shares;  // indexed by agent id
    Piece residue;
    bool complete = false;
    std::string stopped;  // why a partial result was returned
    MainStats stats;
};

// Envy-free division of `cake` among `agents`. Base cases for up to three
// agents; otherwise snapshots, band tightening, extraction with discrepancy
// handling, GoLeft, and recursion on a dominated set. Every phase boundary is
// checked for envy-freeness and conservation (InvariantViolation on failure).
// When the query budget runs out the last checked state is returned with
// complete = false.
MainResult run_main(const Piece& cake, const std::vector<int>& agents, const Params& params, Oracle& oracle,
                    ImaginaryLedger& ledger);

// Level state handed to the resume entry points. Extracted pieces listed in
// the snapshots are neither held nor part of the residue.
struct LevelState {
    std::map<int, Piece> shares;
    Piece residue;
    std::vector<Snapshot> snapshots;
    std::vector<int> working;  // snapshot positions for GoLeft; empty picks an isomorphic group
};

// Starts a level at its discrepancy step with `piece` held aside from the
// rest of `cake`. A split recurses on both parts; otherwise the piece rejoins
// the residue and the level carries on from snapshot generation.
MainResult run_main_from_discrepancy(const Piece& cake, const Piece& piece, int trimmer, const Rat& trimmer_bonus,
                                     const std::vector<int>& agents, const Params& params, Oracle& oracle,
                                     ImaginaryLedger& ledger);

// Starts a level at GoLeft with the given state, followed by conversion and
// recursion as in a normal run.
MainResult run_main_from_goleft(const Piece& cake, const LevelState& state, const std::vector<int>& agents,
                                const Params& params, Oracle& oracle, ImaginaryLedger& ledger);

}  // namespace cake
