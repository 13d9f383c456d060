#pragma once

#include "cake/piece.hpp"
#include "cake/rational.hpp"
#include "cake/valuation.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

namespace cake {

enum class Mode { Strict, Adaptive };

// Towers n^(n^(...)) of the given height. Returns nullopt when the value
// would exceed max_bits.
std::optional<BigInt> power_tower(int n, int height, unsigned long max_bits = 1UL << 27);

struct Params {
    int n = 0;
    Mode mode = Mode::Adaptive;
    // Strict-mode constants; absent when too large to hold in memory.
    std::optional<BigInt> C, C_prime, B, B_prime;
    // Adaptive knobs.
    Rat threshold = Rat(1, 1 << 20);
    long snapshot_cap = 4096;  // Core rounds per snapshot generation
    int max_restarts = 64;
    std::optional<std::uint64_t> max_queries;

    static Params adaptive(int n, const Rat& threshold = Rat(1, 1 << 20));
    // Throws UnsupportedParameters when the tower cannot be materialized and
    // the agent count is past the base cases.
    static Params strict(int n);
};

// ((n-2)/n)^exponent, exact.
Rat bound_f(const BigInt& exponent, int n);

// value >= V(residue) * threshold, with threshold f(B) in strict mode.
bool is_significant(const Rat& value, const Rat& residue_value, const Params& params);

struct Extraction {
    int extractor = -1;
    Piece piece;
    bool released = false;  // went back to the residue or was shared out
};

// One Core run. Classes are keyed by the agent that originally received the
// piece; holders change only inside GoLeft.
struct Snapshot {
    int id = -1;
    int cutter = -1;
    std::map<int, Piece> pieces;
    std::map<int, int> holder;
    std::map<int, std::vector<Extraction>> extractions;
    std::map<int, int> attached;
    std::map<int, std::set<int>> history;

    static Snapshot from_core(int id, int cutter, const std::map<int, Piece>& shares);
};

// V_i(own class) - V_i(class k), both taken from the snapshot's geometry.
Rat bonus(Oracle& oracle, const Snapshot& s, int agent, int k);

struct ExtractionResult {
    std::vector<Extraction> extracted;  // left to right
    Piece residue;                      // after removing the extracted pieces
    bool discrepant = false;
    Piece discrepant_piece;
    int trimmer = -1;  // agent whose trim closes the discrepant piece
    Rat trimmer_bonus;
};

// Every agent other than the class owner whose bonus on the class is
// insignificant trims a residue prefix worth that bonus. Consecutive trims
// delimit candidate pieces; each unanimously insignificant one is extracted,
// and the first one that only some agents find significant halts the pass.
ExtractionResult extract_for_piece(const Snapshot& s, int k, const Piece& residue, const std::vector<int>& agents,
                                   const Params& params, Oracle& oracle);

using IsoSignature = std::map<int, std::vector<int>>;

IsoSignature iso_signature(const Snapshot& s);

// Ids of all snapshots in a signature group with at least `target` members;
// among qualifying groups, the one whose earliest member came first. Empty
// when no group qualifies.
std::vector<int> find_isomorphic_subset(const std::vector<Snapshot>& snapshots, long target);

}  // namespace cake
