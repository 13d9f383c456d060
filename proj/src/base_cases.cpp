#include "cake/base_cases.hpp"

#include <array>

namespace cake {

namespace {

// Splits p into consecutive parts the agent values at p's value / count each.
std::vector<Piece> equal_parts(const Piece& p, int agent, int count, Oracle& oracle) {
    std::vector<Piece> out;
    Rat each = oracle.eval(agent, p) / count;
    Piece rest = p;
    for (int k = 0; k + 1 < count; ++k) {
        if (rest.empty()) {
            out.emplace_back();
            continue;
        }
        Rat x = oracle.cut_in_piece(agent, rest, each);
        out.push_back(leftmost_prefix(rest, x));
        rest = rightmost_suffix(rest, x);
    }
    out.push_back(rest);
    return out;
}

// Index of the agent's most valued part among the unclaimed ones; lowest
// index on ties.
int favourite(int agent, const std::vector<Piece>& parts, const std::vector<bool>& taken, Oracle& oracle) {
    int best = -1;
    Rat best_v;
    for (std::size_t k = 0; k < parts.size(); ++k) {
        if (taken[k]) continue;
        Rat v = oracle.eval(agent, parts[k]);
        if (best == -1 || v > best_v) {
            best = static_cast<int>(k);
            best_v = v;
        }
    }
    return best;
}

}  // namespace

std::map<int, Piece> divide_and_choose(const Piece& cake, int cutter, int chooser, Oracle& oracle) {
    std::vector<Piece> halves = equal_parts(cake, cutter, 2, oracle);
    int pick = favourite(chooser, halves, {false, false}, oracle);
    return {{chooser, halves[pick]}, {cutter, halves[1 - pick]}};
}

std::map<int, Piece> selfridge_conway(const Piece& cake, int cutter, int trimmer, int chooser, Oracle& oracle) {
    std::vector<Piece> thirds = equal_parts(cake, cutter, 3, oracle);

    // The trimmer cuts its favourite down to its second favourite.
    std::array<Rat, 3> tv;
    for (int k = 0; k < 3; ++k) tv[k] = oracle.eval(trimmer, thirds[k]);
    int top = 0;
    for (int k = 1; k < 3; ++k)
        if (tv[k] > tv[top]) top = k;
    int second = top == 0 ? 1 : 0;
    for (int k = 0; k < 3; ++k)
        if (k != top && tv[k] > tv[second]) second = k;
    Piece trimmings;
    int trimmed = -1;
    if (tv[top] > tv[second]) {
        Rat x = oracle.cut_in_piece(trimmer, thirds[top], tv[top] - tv[second]);
        trimmings = leftmost_prefix(thirds[top], x);
        thirds[top] = rightmost_suffix(thirds[top], x);
        trimmed = top;
    }

    std::map<int, Piece> out;
    std::vector<bool> taken(3, false);
    int c_pick = favourite(chooser, thirds, taken, oracle);
    taken[c_pick] = true;
    int t_pick = (trimmed != -1 && !taken[trimmed]) ? trimmed : favourite(trimmer, thirds, taken, oracle);
    taken[t_pick] = true;
    int r_pick = favourite(cutter, thirds, taken, oracle);
    out[chooser] = thirds[c_pick];
    out[trimmer] = thirds[t_pick];
    out[cutter] = thirds[r_pick];
    if (trimmings.empty()) return out;

    // Whoever of chooser and trimmer holds the trimmed piece picks first on
    // the trimmings; the other one divides them.
    int holder = c_pick == trimmed ? chooser : trimmer;
    int divider = holder == chooser ? trimmer : chooser;
    std::vector<Piece> bits = equal_parts(trimmings, divider, 3, oracle);
    std::vector<bool> used(3, false);
    int h = favourite(holder, bits, used, oracle);
    used[h] = true;
    int c = favourite(cutter, bits, used, oracle);
    used[c] = true;
    int d = favourite(divider, bits, used, oracle);
    out[holder] = piece_union(out[holder], bits[h]);
    out[cutter] = piece_union(out[cutter], bits[c]);
    out[divider] = piece_union(out[divider], bits[d]);
    return out;
}

}  // namespace cake
