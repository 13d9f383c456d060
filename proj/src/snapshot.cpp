#include "cake/snapshot.hpp"

#include "cake/errors.hpp"

#include <algorithm>
#include <cmath>

namespace cake {

std::optional<BigInt> power_tower(int n, int height, unsigned long max_bits) {
    if (n < 1 || height < 1) throw UnsupportedParameters("tower needs n >= 1 and height >= 1");
    BigInt value = n;
    const double bits_per_unit = std::log2(static_cast<double>(std::max(n, 2)));
    for (int h = 1; h < height; ++h) {
        if (value > BigInt(static_cast<unsigned long>(max_bits / bits_per_unit))) return std::nullopt;
        BigInt next;
        mpz_pow_ui(next.get_mpz_t(), BigInt(n).get_mpz_t(), value.get_ui());
        value = next;
    }
    return value;
}

Params Params::adaptive(int n, const Rat& threshold) {
    if (threshold <= 0 || threshold >= 1) throw UnsupportedParameters("threshold must lie strictly between 0 and 1");
    Params p;
    p.n = n;
    p.mode = Mode::Adaptive;
    p.threshold = threshold;
    return p;
}

Params Params::strict(int n) {
    Params p = adaptive(n);
    p.mode = Mode::Strict;
    p.C = power_tower(n, 3);
    p.C_prime = power_tower(n, 4);
    p.B = power_tower(n, 5);
    p.B_prime = power_tower(n, 6);
    if (n >= 4 && !(p.C && p.C_prime && p.B))
        throw UnsupportedParameters("strict constants for n=" + std::to_string(n) + " cannot be materialized");
    return p;
}

Rat bound_f(const BigInt& exponent, int n) {
    if (n < 3) throw UnsupportedParameters("bound function needs n >= 3");
    if (exponent < 0 || !exponent.fits_ulong_p()) throw UnsupportedParameters("exponent too large to evaluate");
    return rat_pow(Rat(n - 2, n), exponent.get_ui());
}

bool is_significant(const Rat& value, const Rat& residue_value, const Params& params) {
    if (params.mode == Mode::Strict) {
        if (!params.B) throw UnsupportedParameters("strict significance needs B");
        return value >= residue_value * bound_f(*params.B, params.n);
    }
    return value >= residue_value * params.threshold;
}

Snapshot Snapshot::from_core(int id, int cutter, const std::map<int, Piece>& shares) {
    Snapshot s;
    s.id = id;
    s.cutter = cutter;
    for (const auto& [a, p] : shares) {
        s.pieces[a] = p;
        s.holder[a] = a;
        s.extractions[a] = {};
        s.attached[a] = 0;
        s.history[a] = {a};
    }
    return s;
}

Rat bonus(Oracle& oracle, const Snapshot& s, int agent, int k) {
    if (agent == k) return 0;
    return oracle.eval(agent, s.pieces.at(agent)) - oracle.eval(agent, s.pieces.at(k));
}

ExtractionResult extract_for_piece(const Snapshot& s, int k, const Piece& residue, const std::vector<int>& agents,
                                   const Params& params, Oracle& oracle) {
    ExtractionResult out;
    out.residue = residue;
    if (residue.empty()) return out;

    std::map<int, Rat> before;
    for (int a : agents) before[a] = oracle.eval(a, residue);

    struct Mark {
        Rat x;
        int order;
        int agent;
        Rat bonus;
    };
    std::vector<Mark> marks;
    for (std::size_t pos = 0; pos < agents.size(); ++pos) {
        int i = agents[pos];
        if (i == k) continue;
        Rat b = bonus(oracle, s, i, k);
        if (is_significant(b, before[i], params)) continue;
        marks.push_back(Mark{oracle.cut_in_piece(i, residue, b), static_cast<int>(pos), i, b});
    }
    std::sort(marks.begin(), marks.end(), [](const Mark& a, const Mark& b) {
        if (a.x != b.x) return a.x < b.x;
        return a.order < b.order;
    });

    Piece taken;
    for (const Mark& m : marks) {
        Piece e = piece_subtract(leftmost_prefix(residue, m.x), taken);
        taken = piece_union(taken, e);
        int significant_to = 0;
        for (int a : agents)
            if (is_significant(oracle.eval(a, e), before[a], params)) ++significant_to;
        if (significant_to == 0) {
            out.extracted.push_back(Extraction{m.agent, e});
            out.residue = piece_subtract(out.residue, e);
            continue;
        }
        out.discrepant = true;
        out.discrepant_piece = e;
        out.trimmer = m.agent;
        out.trimmer_bonus = m.bonus;
        break;
    }
    return out;
}

IsoSignature iso_signature(const Snapshot& s) {
    IsoSignature sig;
    for (const auto& [k, list] : s.extractions) {
        auto& seq = sig[k];
        for (const Extraction& e : list) seq.push_back(e.extractor);
    }
    return sig;
}

std::vector<int> find_isomorphic_subset(const std::vector<Snapshot>& snapshots, long target) {
    std::map<IsoSignature, std::vector<int>> groups;
    for (const Snapshot& s : snapshots) groups[iso_signature(s)].push_back(s.id);
    std::vector<int> best;
    for (auto& [sig, ids] : groups) {
        if (static_cast<long>(ids.size()) < target) continue;
        std::sort(ids.begin(), ids.end());
        if (best.empty() || ids.front() < best.front()) best = ids;
    }
    return best;
}

}  // namespace cake
