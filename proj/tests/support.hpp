#pragma once

#include "cake/main_protocol.hpp"
#include "cake/snapshot.hpp"
#include "cake/valuation.hpp"
#include "cake/verify.hpp"

#include <cstdint>
#include <map>
#include <random>
#include <vector>

namespace cake::testing {

inline std::vector<int> iota_agents(int n) {
    std::vector<int> a(n);
    for (int i = 0; i < n; ++i) a[i] = i;
    return a;
}

inline Allocation as_allocation(const std::vector<Piece>& shares, const Piece& origin = Piece::whole()) {
    Allocation a;
    a.shares = shares;
    a.origin = origin;
    a.residue = piece_subtract(origin, piece_union_all(shares));
    return a;
}

inline Allocation as_allocation(const std::map<int, Piece>& shares, std::size_t n) {
    std::vector<Piece> v(n);
    for (const auto& [a, p] : shares) v[a] = p;
    return as_allocation(v);
}

// Agents below n/2 value only [0,1/2], the rest only [1/2,1], each with
// random densities on `parts` equal sub-segments.
inline Profile two_block(int n, std::uint64_t seed, int parts = 4) {
    std::mt19937_64 rng(seed);
    Profile p;
    for (int i = 0; i < n; ++i) {
        const bool left = i < n / 2;
        std::vector<Segment> segs;
        const Rat lo = left ? Rat(0) : rat(1, 2);
        if (!left) segs.push_back({Rat(0), rat(1, 2), Rat(0)});
        for (int k = 0; k < parts; ++k)
            segs.push_back({lo + rat(k, 2 * parts), lo + rat(k + 1, 2 * parts), Rat(1 + static_cast<long>(rng() % 9))});
        if (left) segs.push_back({rat(1, 2), Rat(1), Rat(0)});
        p.emplace_back(segs);
    }
    return p;
}

inline Profile identical(int n, std::uint64_t seed, int k = 4) {
    Profile one = random_instance(1, k, seed, 1);
    return Profile(n, one[0]);
}

// Each agent's densities are a common random profile plus a small private
// bump on one segment.
inline Profile near_identical(int n, std::uint64_t seed, int k = 6) {
    std::mt19937_64 rng(seed);
    Profile base = random_instance(1, k, seed, 1);
    Profile p;
    for (int i = 0; i < n; ++i) {
        std::vector<Segment> segs = base[0].segments();
        auto& s = segs[rng() % segs.size()];
        s.density += rat(1 + static_cast<long>(rng() % 3), 100);
        p.emplace_back(segs);
    }
    return p;
}

// A level state ready for GoLeft. [0,1/2] holds `slabs` identical Core
// snapshots: slab s is cut into n cells and cell k goes to agent k. Agent i
// values its own cell at density 2, other cells at 1, except that an agent
// listed as the extractor of class k values cell k at 2 - 10^-6, making its
// bonus on that class insignificant. [1/2,1] is the residue with small random
// densities. Extraction runs for every class of every snapshot.
struct GoLeftScene {
    Profile vals;
    LevelState state;
    std::map<int, int> extractor_of;
};

inline GoLeftScene goleft_scene(int n, int slabs, const std::map<int, int>& extractor_of, std::uint64_t seed,
                                const Params& params) {
    GoLeftScene sc;
    sc.extractor_of = extractor_of;
    std::mt19937_64 rng(seed);
    const long cells = static_cast<long>(n) * slabs;
    const int residue_parts = 3;
    for (int i = 0; i < n; ++i) {
        std::vector<Segment> segs;
        for (long c = 0; c < cells; ++c) {
            const int k = static_cast<int>(c % n);
            Rat d = k == i ? Rat(2) : Rat(1);
            if (auto it = extractor_of.find(k); it != extractor_of.end() && it->second == i) d = 2 - rat(1, 1000000);
            segs.push_back({rat(c, 2 * cells), rat(c + 1, 2 * cells), d});
        }
        for (int q = 0; q < residue_parts; ++q)
            segs.push_back({rat(residue_parts + q, 2 * residue_parts), rat(residue_parts + q + 1, 2 * residue_parts),
                            rat(1 + static_cast<long>(rng() % 9), 100)});
        sc.vals.emplace_back(segs);
    }
    Oracle oracle(sc.vals);
    const std::vector<int> agents = iota_agents(n);
    Piece residue = Piece::interval(rat(1, 2), 1);
    std::vector<std::vector<Interval>> held(n);
    for (int s = 0; s < slabs; ++s) {
        std::map<int, Piece> shares;
        for (int k = 0; k < n; ++k) {
            const long c = static_cast<long>(s) * n + k;
            shares[k] = Piece::interval(rat(c, 2 * cells), rat(c + 1, 2 * cells));
            held[k].push_back(shares[k].intervals().front());
        }
        Snapshot snap = Snapshot::from_core(s, 0, shares);
        for (int k = 0; k < n; ++k) {
            ExtractionResult r = extract_for_piece(snap, k, residue, agents, params, oracle);
            snap.extractions[k] = r.extracted;
            residue = r.residue;
        }
        sc.state.snapshots.push_back(std::move(snap));
    }
    for (int k = 0; k < n; ++k) sc.state.shares[k] = Piece::normalize(held[k]);
    sc.state.residue = residue;
    return sc;
}

}  // namespace cake::testing
