#include "cake/partial.hpp"

#include "cake/core.hpp"
#include "cake/errors.hpp"

namespace cake {

PartialOutcome proportional_ef_partial(const Piece& cake, const std::vector<int>& agents, Oracle& oracle,
                                       ImaginaryLedger& ledger) {
    PartialOutcome out;
    out.residue = cake;
    for (int a : agents) out.shares[a] = Piece();
    for (int cutter : agents) {
        if (out.residue.empty()) break;
        if (oracle.eval(cutter, out.residue) == 0) continue;
        CoreOutcome round = core(cutter, agents, out.residue, oracle, ledger);
        ++out.core_rounds;
        out.subcore_calls += 1;
        out.literal_fallbacks += round.stats.searched ? 1 : 0;
        for (const auto& [a, p] : round.shares) out.shares[a] = piece_union(out.shares[a], p);
        out.residue = round.leftover;
    }
    return out;
}

PartialOutcome connected_pieces(const Piece& cake, const std::vector<int>& agents, Oracle& oracle,
                                ImaginaryLedger& ledger) {
    PartialOutcome out;
    const long n = static_cast<long>(agents.size());
    std::map<int, Rat> unit;
    for (int a : agents) unit[a] = oracle.eval(a, cake) / (3 * n);
    std::map<int, Piece> held;

    auto residue = [&]() {
        Piece r = cake;
        for (const auto& [a, p] : held) r = piece_subtract(r, p);
        return r;
    };

    for (int divider : agents) {
        if (held.count(divider)) continue;
        // Marks run left to right inside each component; the first n marked
        // pieces form the division.
        std::vector<Piece> marked;
        for (const Piece& comp : components(residue())) {
            Piece rest = comp;
            while (static_cast<long>(marked.size()) < n && !rest.empty() && oracle.eval(divider, rest) >= unit[divider]) {
                Rat x = oracle.cut_in_piece(divider, rest, unit[divider]);
                marked.push_back(leftmost_prefix(rest, x));
                rest = rightmost_suffix(rest, x);
            }
            if (static_cast<long>(marked.size()) == n) break;
        }
        if (static_cast<long>(marked.size()) < n)
            throw CannotFormDivisions("agent " + oracle.label(divider) + " marks only " + std::to_string(marked.size()) +
                                      " pieces");

        SubCoreInput in;
        in.pieces = marked;
        for (std::size_t k = 0; k < marked.size(); ++k)
            in.tags.push_back(Infinitesimal::of(ledger.issue_epsilon(divider)));
        for (int a : agents)
            if (a != divider) in.agents.push_back(a);
        SubCoreResult sc = subcore(in, oracle, ledger);
        ++out.subcore_calls;
        out.literal_fallbacks += sc.stats.searched ? 1 : 0;

        int free_slot = -1;
        for (std::size_t k = 0; k < marked.size() && free_slot == -1; ++k)
            if (!sc.allocated[k]) free_slot = static_cast<int>(k);
        if (free_slot == -1) throw SubCoreFailure("no untouched division left for the divider");
        held[divider] = marked[free_slot];

        for (const auto& [a, offer] : sc.assignment) {
            Rat v = oracle.eval(a, offer.part);
            auto it = held.find(a);
            Rat before = it == held.end() ? Rat(0) : oracle.eval(a, it->second);
            if (v > before && v > unit[a]) {
                held[a] = offer.part;
                ++out.upgrades;
            }
        }
        oracle.note("connected divider " + oracle.label(divider) + " holders " + std::to_string(held.size()));
    }
    for (int a : agents) out.shares[a] = held.count(a) ? held[a] : Piece();
    out.residue = residue();
    return out;
}

}  // namespace cake
