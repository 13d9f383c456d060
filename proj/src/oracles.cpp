#include "cake/oracles.hpp"

#include "cake/errors.hpp"
#include "cake/subcore.hpp"
#include "cake/tiebreak.hpp"
#include "cake/verify.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>

namespace cake {

namespace {

// sum coef[k] * x[k] >= bound
struct Halfspace {
    std::vector<Rat> coef;
    Rat bound;
};

// Solves the square system given by `rows` taken as equalities. False when
// singular.
bool solve(const std::vector<const Halfspace*>& rows, std::vector<Rat>& x) {
    const std::size_t m = rows.size();
    std::vector<std::vector<Rat>> a(m, std::vector<Rat>(m + 1));
    for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t c = 0; c < m; ++c) a[r][c] = rows[r]->coef[c];
        a[r][m] = rows[r]->bound;
    }
    for (std::size_t c = 0; c < m; ++c) {
        std::size_t p = c;
        while (p < m && a[p][c] == 0) ++p;
        if (p == m) return false;
        std::swap(a[p], a[c]);
        for (std::size_t r = 0; r < m; ++r) {
            if (r == c || a[r][c] == 0) continue;
            Rat f = a[r][c] / a[c][c];
            for (std::size_t k = c; k <= m; ++k) a[r][k] -= f * a[c][k];
        }
    }
    x.assign(m, Rat(0));
    for (std::size_t c = 0; c < m; ++c) x[c] = a[c][m] / a[c][c];
    return true;
}

// A point of the bounded polytope, found among its vertices.
std::optional<std::vector<Rat>> feasible_vertex(const std::vector<Halfspace>& hs, std::size_t m) {
    std::vector<std::size_t> pick(m);
    std::iota(pick.begin(), pick.end(), 0);
    if (hs.size() < m) return std::nullopt;
    std::vector<Rat> x;
    for (;;) {
        std::vector<const Halfspace*> rows;
        for (std::size_t i : pick) rows.push_back(&hs[i]);
        if (solve(rows, x)) {
            bool ok = true;
            for (const Halfspace& h : hs) {
                Rat lhs = 0;
                for (std::size_t k = 0; k < m; ++k) lhs += h.coef[k] * x[k];
                if (lhs < h.bound) {
                    ok = false;
                    break;
                }
            }
            if (ok) return x;
        }
        // next combination
        std::size_t i = m;
        while (i > 0 && pick[i - 1] == hs.size() - m + i - 1) --i;
        if (i == 0) return std::nullopt;
        ++pick[i - 1];
        for (std::size_t j = i; j < m; ++j) pick[j] = pick[j - 1] + 1;
    }
}

Piece suffix_from(const Piece& p, const Rat& x) {
    if (p.empty() || x >= p.intervals().back().right) return Piece();
    return piece_intersect(p, Piece::interval(x, 1));
}

// Cut cells of a piece: consecutive breakpoints between its left and right
// ends, splitting at every piece endpoint and every segment boundary.
std::vector<std::pair<Rat, Rat>> cells(const Piece& p, const Profile& vals) {
    std::vector<Rat> pts;
    if (p.empty()) return {};
    const Rat lo = p.intervals().front().left, hi = p.intervals().back().right;
    for (const Interval& iv : p.intervals()) {
        pts.push_back(iv.left);
        pts.push_back(iv.right);
    }
    for (const Valuation& v : vals)
        for (const Segment& s : v.segments())
            for (const Rat& t : {s.left, s.right})
                if (t > lo && t < hi) pts.push_back(t);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    std::vector<std::pair<Rat, Rat>> out;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) out.emplace_back(pts[i], pts[i + 1]);
    return out;
}

}  // namespace

std::optional<std::map<int, Piece>> brute_force_neat(const std::vector<Piece>& pieces, const std::vector<int>& agents,
                                                     const std::map<int, Rat>& benchmarks, const Profile& vals) {
    const std::size_t m = agents.size(), P = pieces.size();
    if (m >= P) return std::nullopt;
    if (m == 0) return std::map<int, Piece>{};
    std::vector<Rat> bench(m, Rat(0));
    for (std::size_t i = 0; i < m; ++i)
        if (auto it = benchmarks.find(agents[i]); it != benchmarks.end()) bench[i] = it->second;

    std::vector<std::vector<std::pair<Rat, Rat>>> piece_cells(P);
    for (std::size_t k = 0; k < P; ++k) piece_cells[k] = cells(pieces[k], vals);

    // value of agent i for the suffix of piece k cut at x in [lo,hi]: c - d*x
    auto linear = [&](std::size_t i, std::size_t k, const std::pair<Rat, Rat>& cell) {
        const Valuation& v = vals[agents[i]];
        const auto& [lo, hi] = cell;
        Rat tail = v.value(suffix_from(pieces[k], hi));
        Rat d = v.value(piece_intersect(pieces[k], Piece::interval(lo, hi))) / (hi - lo);
        return std::pair<Rat, Rat>(tail + d * hi, d);
    };

    std::vector<std::size_t> sigma(m);
    std::vector<bool> used(P, false);
    std::optional<std::map<int, Piece>> found;

    std::function<bool(std::size_t, std::vector<std::size_t>&)> over_cells;
    auto try_assignment = [&]() {
        std::vector<std::size_t> cell(m, 0);
        return over_cells(0, cell);
    };
    over_cells = [&](std::size_t j, std::vector<std::size_t>& cell) -> bool {
        if (j < m) {
            const auto& list = piece_cells[sigma[j]];
            for (std::size_t q = 0; q < list.size(); ++q) {
                // The best value agent j can get from this cell is at its left end.
                auto [c, d] = linear(j, sigma[j], list[q]);
                Rat best = c - d * list[q].first;
                if (best < bench[j]) continue;
                bool dominated_by_free = false;
                for (std::size_t k = 0; k < P && !dominated_by_free; ++k)
                    if (!used[k] && vals[agents[j]].value(pieces[k]) > best) dominated_by_free = true;
                if (dominated_by_free) continue;
                cell[j] = q;
                if (over_cells(j + 1, cell)) return true;
            }
            return false;
        }
        std::vector<Halfspace> hs;
        std::vector<std::vector<std::pair<Rat, Rat>>> f(m, std::vector<std::pair<Rat, Rat>>(m));
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t t = 0; t < m; ++t) f[i][t] = linear(i, sigma[t], piece_cells[sigma[t]][cell[t]]);
        auto blank = [&] { return Halfspace{std::vector<Rat>(m, Rat(0)), Rat(0)}; };
        for (std::size_t i = 0; i < m; ++i) {
            const auto& [cii, dii] = f[i][i];
            for (std::size_t t = 0; t < m; ++t) {
                if (t == i) continue;
                Halfspace h = blank();
                h.coef[i] = -dii;
                h.coef[t] += f[i][t].second;
                h.bound = f[i][t].first - cii;
                hs.push_back(h);
            }
            Rat floor = bench[i];
            for (std::size_t k = 0; k < P; ++k)
                if (!used[k]) floor = std::max(floor, vals[agents[i]].value(pieces[k]));
            Halfspace h = blank();
            h.coef[i] = -dii;
            h.bound = floor - cii;
            hs.push_back(h);
            const auto& [lo, hi] = piece_cells[sigma[i]][cell[i]];
            Halfspace l = blank(), r = blank();
            l.coef[i] = 1;
            l.bound = lo;
            r.coef[i] = -1;
            r.bound = -hi;
            hs.push_back(l);
            hs.push_back(r);
        }
        auto x = feasible_vertex(hs, m);
        if (!x) return false;
        std::map<int, Piece> shares;
        for (std::size_t i = 0; i < m; ++i) shares[agents[i]] = suffix_from(pieces[sigma[i]], (*x)[i]);
        found = shares;
        return true;
    };

    std::function<bool(std::size_t)> assign = [&](std::size_t j) -> bool {
        if (j == m) return try_assignment();
        for (std::size_t k = 0; k < P; ++k) {
            if (used[k]) continue;
            used[k] = true;
            sigma[j] = k;
            if (assign(j + 1)) return true;
            used[k] = false;
        }
        return false;
    };
    assign(0);
    return found;
}

std::vector<std::vector<int>> all_dominated_sets(const std::vector<Piece>& shares, const Piece& residue,
                                                 const std::vector<int>& agents, const Profile& vals) {
    std::vector<std::vector<int>> out;
    const std::size_t n = agents.size();
    for (unsigned long mask = 1; mask + 1 < (1UL << n); ++mask) {
        bool ok = true;
        for (std::size_t a = 0; a < n && ok; ++a) {
            if (mask >> a & 1) continue;
            const Valuation& v = vals[agents[a]];
            Rat own = v.value(shares[agents[a]]);
            for (std::size_t b = 0; b < n && ok; ++b)
                if ((mask >> b & 1) && own < v.value(piece_union(shares[agents[b]], residue))) ok = false;
        }
        if (!ok) continue;
        std::vector<int> set;
        for (std::size_t a = 0; a < n; ++a)
            if (mask >> a & 1) set.push_back(agents[a]);
        std::sort(set.begin(), set.end());
        out.push_back(set);
    }
    return out;
}

bool SmallGraph::valid() const {
    for (int b = 0; b < nodes; ++b) {
        int in = 0;
        for (int a = 0; a < nodes; ++a) in += edges.count({a, b}) ? 1 : 0;
        if (in == 0) return false;
        if (!finished.count(b) && in != 1) return false;
        if (finished.count(b) && in != nodes) return false;
    }
    return true;
}

PermutationGraph SmallGraph::to_graph() const {
    std::vector<int> agents(nodes);
    std::iota(agents.begin(), agents.end(), 0);
    std::map<int, int> holder;
    for (int a : agents) holder[a] = a;
    return PermutationGraph(agents, holder, edges, finished);
}

std::vector<SmallGraph> all_valid_graphs(int nodes) {
    std::vector<SmallGraph> out;
    const int total = nodes * nodes;
    for (unsigned fin = 0; fin + 1 < (1u << nodes); ++fin) {
        for (unsigned long e = 0; e < (1UL << total); ++e) {
            SmallGraph g;
            g.nodes = nodes;
            for (int b = 0; b < nodes; ++b)
                if (fin >> b & 1) g.finished.insert(b);
            for (int k = 0; k < total; ++k)
                if (e >> k & 1) g.edges.insert({k / nodes, k % nodes});
            if (g.valid()) out.push_back(std::move(g));
        }
    }
    return out;
}

std::set<std::vector<int>> all_cycles_with_T_node(const SmallGraph& g) {
    std::set<std::vector<int>> out;
    std::vector<int> path;
    std::vector<bool> on(g.nodes, false);
    std::function<void(int)> walk = [&](int cur) {
        for (int nxt = 0; nxt < g.nodes; ++nxt) {
            if (!g.edges.count({cur, nxt})) continue;
            if (nxt == path.front()) {
                bool has_t = std::any_of(path.begin(), path.end(), [&](int a) { return !g.finished.count(a); });
                if (has_t) out.insert(path);
            } else if (nxt > path.front() && !on[nxt]) {
                on[nxt] = true;
                path.push_back(nxt);
                walk(nxt);
                path.pop_back();
                on[nxt] = false;
            }
        }
    };
    for (int s = 0; s < g.nodes; ++s) {
        path = {s};
        on.assign(g.nodes, false);
        on[s] = true;
        walk(s);
    }
    return out;
}

SuiteResult subcore_suite(int count, std::uint64_t seed) {
    SuiteResult out;
    out.name = "subcore";
    for (int c = 0; c < count; ++c) {
        const std::uint64_t s = seed + static_cast<std::uint64_t>(c);
        std::mt19937_64 rng(s);
        const int m = 1 + c % 3;
        const int P = m + 1;
        Profile vals = random_instance(m + 1, 1 + static_cast<int>(rng() % 3), s);
        std::vector<Piece> pieces;
        for (int k = 0; k < P; ++k) pieces.push_back(Piece::interval(rat(k, P), rat(k + 1, P)));
        ImaginaryLedger ledger;
        Oracle oracle(vals);
        SubCoreInput in;
        in.pieces = pieces;
        // The extra agent plays the cutter who issued the piece tags.
        for (int k = 0; k < P; ++k) in.tags.push_back(Infinitesimal::of(ledger.issue_epsilon(m)));
        std::map<int, Rat> bench;
        for (int a = 0; a < m; ++a) {
            in.agents.push_back(a);
            bench[a] = vals[a].total() * rat(static_cast<long>(rng() % 8), 4L * P);
            in.benchmarks[a] = AugmentedValue{bench[a], {}};
        }
        std::string why;
        bool engine_found = true;
        try {
            auto r = subcore(in, oracle, ledger);
            std::map<int, NeatShare> shares;
            for (const auto& [a, offer] : r.assignment) {
                shares[a] = NeatShare{offer.slot, offer.part};
                if (vals[a].value(offer.part) < bench[a]) why += " engine misses a benchmark;";
            }
            if (!is_neat(pieces, shares, vals)) why += " engine output not neat;";
        } catch (const BenchmarkInfeasible&) {
            engine_found = false;
        }
        auto witness = brute_force_neat(pieces, in.agents, bench, vals);
        if (witness) {
            ++out.positives;
            if (!is_neat(pieces, *witness, vals)) why += " witness not neat;";
        }
        if (engine_found != witness.has_value()) why += engine_found ? " only the engine succeeded;" : " only the search succeeded;";
        if (why.empty())
            ++out.agreements;
        else
            out.disagreements.push_back("seed " + std::to_string(s) + ":" + why);
        ++out.cases;
    }
    return out;
}

SuiteResult dominated_suite(int count, std::uint64_t seed, int max_agents) {
    SuiteResult out;
    out.name = "dominated";
    for (int c = 0; c < count; ++c) {
        const std::uint64_t s = seed + static_cast<std::uint64_t>(c);
        const int n = 2 + c % (max_agents - 1);
        Profile vals = random_instance(n, 2, s);
        // Equal slices of the left half as shares and a residue of varying size.
        std::vector<Piece> shares;
        std::vector<int> agents;
        for (int i = 0; i < n; ++i) {
            shares.push_back(Piece::interval(rat(i, 2 * n), rat(i + 1, 2 * n)));
            agents.push_back(i);
        }
        Piece residue = Piece::interval(rat(1, 2), rat(1, 2) + rat(1, 2 * (1 + c % 7)));
        auto found = find_dominated_set(shares, residue, agents, vals);
        auto all = all_dominated_sets(shares, residue, agents, vals);
        if (!all.empty()) ++out.positives;
        bool ok = found ? std::find(all.begin(), all.end(), *found) != all.end() : all.empty();
        if (found)
            for (const auto& set : all) ok = ok && set.size() >= found->size();
        if (ok)
            ++out.agreements;
        else
            out.disagreements.push_back("seed " + std::to_string(s));
        ++out.cases;
    }
    return out;
}

SuiteResult cycle_suite(int max_nodes) {
    SuiteResult out;
    out.name = "cycles";
    for (int n = 1; n <= max_nodes; ++n) {
        for (const SmallGraph& g : all_valid_graphs(n)) {
            ++out.cases;
            auto all = all_cycles_with_T_node(g);
            if (!all.empty()) ++out.positives;
            std::string why;
            try {
                auto cycle = find_cycle_with_T_node(g.to_graph());
                std::rotate(cycle.begin(), std::min_element(cycle.begin(), cycle.end()), cycle.end());
                if (!all.count(cycle)) why = "returned a non-cycle";
            } catch (const InvariantViolation& e) {
                why = std::string("rejected a valid graph: ") + e.what();
            }
            if (why.empty())
                ++out.agreements;
            else
                out.disagreements.push_back(std::to_string(n) + " nodes: " + why);
        }
    }
    return out;
}

}  // namespace cake
