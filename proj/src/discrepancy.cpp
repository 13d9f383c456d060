#include "cake/discrepancy.hpp"

#include "cake/errors.hpp"

namespace cake {

DiscrepancyOutcome discrepancy(const Piece& piece, int trimmer, const Rat& trimmer_bonus, const Piece& residue,
                               const std::vector<int>& agents, const Params& params, Oracle& oracle,
                               const CoreRunner& run_core, long round_cap) {
    DiscrepancyOutcome out;
    out.residue = residue;
    const long n = static_cast<long>(agents.size());
    std::map<int, Rat> in_piece;
    for (int a : agents) in_piece[a] = oracle.eval(a, piece);

    auto shrink = [&](int cutter) {
        if (++out.core_rounds > round_cap) throw BudgetExhausted("discrepancy exceeded its Core round cap");
        Rat before = oracle.eval(cutter, out.residue);
        out.residue = run_core(cutter, out.residue);
        if (oracle.eval(cutter, out.residue) >= before)
            throw InvariantViolation("Core round did not shrink the cutter's residue");
    };

    for (;;) {
        std::map<int, Rat> rest;
        for (int a : agents) rest[a] = oracle.eval(a, out.residue);
        int in_band = -1;
        for (int a : agents)
            if (rest[a] > 0 && rest[a] <= n * in_piece[a] && in_piece[a] <= n * rest[a]) {
                in_band = a;
                break;
            }
        if (in_band != -1) {
            shrink(in_band);
            continue;
        }
        out.D.clear();
        out.D_prime.clear();
        for (int a : agents) {
            if (in_piece[a] >= n * rest[a]) {
                out.D.push_back(a);
            } else {
                if (n * in_piece[a] > rest[a]) throw InvariantViolation("agent left inside the discrepancy band");
                out.D_prime.push_back(a);
            }
        }
        out.split = !out.D.empty() && !out.D_prime.empty();
        if (!out.split && rest[trimmer] > 0 && !is_significant(trimmer_bonus, rest[trimmer], params)) {
            shrink(trimmer);
            continue;
        }
        break;
    }
    if (!out.split) {
        out.D.clear();
        out.D_prime.clear();
        if (!is_significant(trimmer_bonus, oracle.eval(trimmer, out.residue), params))
            throw InvariantViolation("trimmer's bonus still insignificant after discrepancy");
    }
    oracle.note(std::string("discrepancy ") + (out.split ? "split" : "no split") + " after " +
                std::to_string(out.core_rounds) + " Core rounds");
    return out;
}

}  // namespace cake
