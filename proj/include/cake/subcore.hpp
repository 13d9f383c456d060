#pragma once

#include "cake/piece.hpp"
#include "cake/tiebreak.hpp"
#include "cake/valuation.hpp"

#include <map>
#include <string>
#include <vector>

namespace cake {

// A piece as seen by one SubCore frame: the part of root piece `slot` right
// of the current left margin, with its shared imaginary tag.
struct Offer {
    int slot = -1;
    Piece part;
    Infinitesimal tag;
    int margin_agent = -1;  // whose trim set the margin; -1 for the input margin
};

struct SubCoreInput {
    std::vector<Piece> pieces;
    std::vector<Infinitesimal> tags;
    std::vector<int> agents;                    // processing order
    std::map<int, AugmentedValue> benchmarks;  // absent means zero
};

struct SubCoreStats {
    long frames = 0;
    int max_depth = 0;
    int max_branching = 0;  // recursive calls made by a single frame
    long trims = 0;
    bool searched = false;        // the literal run failed and the exact search answered
    std::string literal_failure;  // why the literal run was rejected
};

struct SubCoreResult {
    std::map<int, Offer> assignment;
    std::vector<bool> allocated;  // per slot
    SubCoreStats stats;
};

// Runs the literal procedure and verifies its output physically; on a
// protocol error or a failed check it falls back to an exact search. Throws
// BenchmarkInfeasible when no neat benchmark-meeting allocation exists.
SubCoreResult subcore(const SubCoreInput& input, Oracle& oracle, ImaginaryLedger& ledger);

AugmentedValue augmented(Oracle& oracle, int agent, const Offer& offer);

}  // namespace cake
