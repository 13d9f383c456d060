#include "cake/core.hpp"

#include "cake/errors.hpp"

namespace cake {

CoreOutcome core(int cutter, const std::vector<int>& agents, const Piece& residue, Oracle& oracle,
                 ImaginaryLedger& ledger) {
    CoreOutcome out;
    out.cutter = cutter;
    out.agents = agents;
    out.residue_before = residue;
    if (residue.empty()) throw EmptyResidue("residue is empty");
    const long n = static_cast<long>(agents.size());
    Rat total = oracle.eval(cutter, residue);
    if (total == 0) throw EmptyResidue("cutter " + oracle.label(cutter) + " values the residue at zero");

    Piece rest = residue;
    for (long k = 0; k + 1 < n; ++k) {
        Rat x = oracle.cut_in_piece(cutter, rest, total / n);
        out.cut_pieces.push_back(leftmost_prefix(rest, x));
        rest = rightmost_suffix(rest, x);
    }
    out.cut_pieces.push_back(rest);
    for (long k = 0; k < n; ++k) out.tags.push_back(Infinitesimal::of(ledger.issue_epsilon(cutter)));

    SubCoreInput in;
    in.pieces = out.cut_pieces;
    in.tags = out.tags;
    for (int a : agents)
        if (a != cutter) in.agents.push_back(a);
    SubCoreResult sc = subcore(in, oracle, ledger);
    out.stats = sc.stats;

    int free_slot = -1;
    for (long k = 0; k < n && free_slot == -1; ++k)
        if (!sc.allocated[k]) free_slot = static_cast<int>(k);
    if (free_slot == -1) throw SubCoreFailure("no unallocated piece left for the cutter");

    for (const auto& [a, o] : sc.assignment) {
        out.shares[a] = o.part;
        out.slot_of[a] = o.slot;
    }
    out.shares[cutter] = out.cut_pieces[free_slot];
    out.slot_of[cutter] = free_slot;

    Piece given;
    for (const auto& [a, p] : out.shares) given = piece_union(given, p);
    out.leftover = piece_subtract(residue, given);
    oracle.note("core cutter " + oracle.label(cutter) + " leftover " + out.leftover.str());
    return out;
}

std::pair<int, Rat> cutter_advantage(const CoreOutcome& outcome, const Profile& vals) {
    const Valuation& v = vals.at(outcome.cutter);
    const long n = static_cast<long>(outcome.agents.size());
    Rat fair = v.value(outcome.residue_before) / n;
    int victim = -1;
    Rat least;
    for (int a : outcome.agents) {
        if (a == outcome.cutter) continue;
        Rat here = v.value(outcome.shares.at(a));
        if (victim == -1 || here < least) {
            victim = a;
            least = here;
        }
    }
    if (victim == -1) return {-1, Rat(0)};
    return {victim, fair - least};
}

}  // namespace cake
