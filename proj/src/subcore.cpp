#include "cake/subcore.hpp"

#include "cake/errors.hpp"
#include "cake/verify.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <tuple>

namespace cake {

AugmentedValue augmented(Oracle& oracle, int agent, const Offer& offer) {
    return AugmentedValue{oracle.eval(agent, offer.part), offer.tag};
}

namespace {

struct Trim {
    int agent;
    Offer offer;  // the part right of the trim, carrying the trim's tag
};

// Nested suffixes of one slot: empty is rightmost, then larger left extreme.
int position_cmp(const Piece& a, const Piece& b) {
    if (a.empty() || b.empty()) return static_cast<int>(a.empty()) - static_cast<int>(b.empty());
    return cmp(a.left_extreme(), b.left_extreme());
}

class Run {
public:
    Run(Oracle& o, ImaginaryLedger& l) : oracle_(o), ledger_(l) {}

    std::map<int, Offer> solve(const std::vector<int>& agents, const std::vector<Offer>& offers,
                               const std::map<int, AugmentedValue>& bench, const std::vector<Offer>& outside,
                               int depth);

    SubCoreStats stats;

private:
    AugmentedValue aug(int agent, const Offer& o) { return augmented(oracle_, agent, o); }
    bool better(const AugmentedValue& a, const AugmentedValue& b) { return ledger_.compare_distinct(a, b) > 0; }
    int favourite(int agent, const std::vector<Offer>& offers, const std::vector<int>& among);
    bool more_right(const Trim& a, const Trim& b, const std::set<int>& needy);
    std::vector<Trim> place_trims(int agent, const std::vector<Offer>& contested, const AugmentedValue& bench);

    Oracle& oracle_;
    ImaginaryLedger& ledger_;
};

int Run::favourite(int agent, const std::vector<Offer>& offers, const std::vector<int>& among) {
    int best = -1;
    AugmentedValue best_v;
    for (int idx : among) {
        AugmentedValue v = aug(agent, offers[idx]);
        if (best == -1 || better(v, best_v)) {
            best = idx;
            best_v = v;
        }
    }
    return best;
}

// At one physical position, an agent whose benchmark no free piece can meet
// is preferred; otherwise the smaller imaginary value is further right.
bool Run::more_right(const Trim& a, const Trim& b, const std::set<int>& needy) {
    int c = position_cmp(a.offer.part, b.offer.part);
    if (c != 0) return c > 0;
    bool na = needy.count(a.agent) != 0, nb = needy.count(b.agent) != 0;
    if (na != nb) return na;
    if (a.offer.tag == b.offer.tag) return a.agent < b.agent;  // same piece, two trimmers
    // same physical part: the smaller imaginary value sits further right
    return ledger_.compare_distinct(AugmentedValue{0, a.offer.tag}, AugmentedValue{0, b.offer.tag}) < 0;
}

std::vector<Trim> Run::place_trims(int agent, const std::vector<Offer>& contested, const AugmentedValue& bench) {
    std::vector<std::pair<AugmentedValue, std::size_t>> strict;
    std::vector<Trim> out;
    for (std::size_t c = 0; c < contested.size(); ++c) {
        AugmentedValue v = aug(agent, contested[c]);
        auto rel = compare(v, bench);
        if (rel == 0) {
            out.push_back(Trim{agent, contested[c]});
            out.back().offer.margin_agent = agent;
        } else if (rel > 0) {
            strict.emplace_back(v, c);
        }
    }
    if (strict.empty()) return out;
    std::sort(strict.begin(), strict.end(), [&](const auto& a, const auto& b) {
        return ledger_.compare_distinct(a.first, b.first) < 0;
    });
    std::vector<int> ids;
    for (const auto& [v, c] : strict) ids.push_back(ledger_.register_piece(contested[c].tag));
    ledger_.tag_equalized_pieces(agent, ids, bench.inf);
    for (std::size_t t = 0; t < strict.size(); ++t) {
        const Offer& src = contested[strict[t].second];
        Trim tr{agent, src};
        // A piece already trimmed to nothing stays empty; only its tag moves.
        if (!src.part.empty()) tr.offer.part = rightmost_suffix(src.part, oracle_.trim_point(agent, src.part, bench.phys));
        tr.offer.tag = ledger_.piece_imaginary_value(ids[t]);
        tr.offer.margin_agent = agent;
        out.push_back(std::move(tr));
        ++stats.trims;
    }
    return out;
}

std::map<int, Offer> Run::solve(const std::vector<int>& agents, const std::vector<Offer>& offers,
                                const std::map<int, AugmentedValue>& bench, const std::vector<Offer>& outside,
                                int depth) {
    ++stats.frames;
    stats.max_depth = std::max(stats.max_depth, depth);
    int branching = 0;

    std::map<int, std::size_t> index_of_slot;
    for (std::size_t i = 0; i < offers.size(); ++i) index_of_slot[offers[i].slot] = i;

    std::vector<int> all(offers.size());
    for (std::size_t i = 0; i < offers.size(); ++i) all[i] = static_cast<int>(i);
    std::map<int, int> launch;
    for (int a : agents) launch[a] = favourite(a, offers, all);

    std::map<int, Offer> tentative;
    std::vector<int> owner(offers.size(), -1);

    for (std::size_t m = 0; m < agents.size(); ++m) {
        const int newcomer = agents[m];
        if (owner[launch[newcomer]] == -1) {
            owner[launch[newcomer]] = newcomer;
            tentative[newcomer] = offers[launch[newcomer]];
            continue;
        }
        std::vector<int> group(agents.begin(), agents.begin() + m + 1);
        std::vector<int> contested_idx, free_idx;
        for (std::size_t i = 0; i < offers.size(); ++i)
            (owner[i] != -1 ? contested_idx : free_idx).push_back(static_cast<int>(i));
        std::vector<Offer> contested;
        for (int i : contested_idx) contested.push_back(offers[i]);
        std::vector<Offer> visible = outside;
        for (int i : free_idx) visible.push_back(offers[i]);
        const std::vector<Offer>& outside_child = depth == 0 ? visible : outside;

        std::map<int, AugmentedValue> target;
        std::set<int> needy;
        for (int j : group) {
            auto it = bench.find(j);
            AugmentedValue b = it == bench.end() ? AugmentedValue{} : it->second;
            bool from_input = true;
            for (const Offer& o : visible) {
                AugmentedValue v = aug(j, o);
                if (compare(v, b) >= 0) {
                    b = v;
                    from_input = false;
                }
            }
            target[j] = b;
            if (from_input) needy.insert(j);
        }

        std::vector<std::vector<Trim>> trims(contested.size());
        for (int j : group) {
            for (Trim& t : place_trims(j, contested, target[j])) {
                std::size_t c = 0;
                while (contested[c].slot != t.offer.slot) ++c;
                trims[c].push_back(std::move(t));
            }
        }
        std::set<int> winners;
        for (std::size_t c = 0; c < contested.size(); ++c) {
            if (trims[c].empty())
                throw NoMarginalAgent("contested slot " + std::to_string(contested[c].slot) + " has no trim");
            const Trim* best = &trims[c][0];
            for (const Trim& t : trims[c])
                if (more_right(t, *best, needy)) best = &t;
            winners.insert(best->agent);
        }

        auto margins = [&]() {
            std::vector<Offer> out;
            for (std::size_t c = 0; c < contested.size(); ++c) {
                const Trim* best = nullptr;
                for (const Trim& t : trims[c])
                    if (!winners.count(t.agent) && (!best || more_right(t, *best, needy))) best = &t;
                out.push_back(best ? best->offer : contested[c]);
                if (!best) out.back().margin_agent = -1;
            }
            return out;
        };
        auto ordered = [&]() {
            std::vector<int> w;
            for (int a : group)
                if (winners.count(a)) w.push_back(a);
            return w;
        };
        auto restricted = [&]() {
            std::map<int, AugmentedValue> b;
            for (int a : winners) b[a] = target[a];
            return b;
        };

        std::map<int, Offer> inner;
        while (winners.size() < contested.size()) {
            std::vector<Offer> at_margin = margins();
            inner = solve(ordered(), at_margin, restricted(), outside_child, depth + 1);
            ++branching;
            std::set<int> taken;
            for (const auto& [a, o] : inner) taken.insert(o.slot);
            std::optional<std::size_t> pick;
            for (std::size_t c = 0; c < at_margin.size() && !pick; ++c)
                if (!taken.count(at_margin[c].slot) && at_margin[c].margin_agent != -1 &&
                    !winners.count(at_margin[c].margin_agent))
                    pick = c;
            if (!pick) throw NoMarginalAgent("no unallocated contested piece has a non-winner margin");
            const int joiner = at_margin[*pick].margin_agent;
            winners.insert(joiner);
            inner[joiner] = at_margin[*pick];
            for (int a : winners) target[a] = aug(a, inner[a]);
        }
        inner = solve(ordered(), margins(), restricted(), outside_child, depth + 1);
        ++branching;

        int left_out = -1;
        for (int a : group)
            if (!winners.count(a)) left_out = a;
        if (left_out == -1 || free_idx.empty()) throw SubCoreFailure("no agent or piece left for the uncontested step");
        int pick = favourite(left_out, offers, free_idx);

        tentative.clear();
        std::fill(owner.begin(), owner.end(), -1);
        for (auto& [a, o] : inner) {
            owner[index_of_slot.at(o.slot)] = a;
            tentative[a] = o;
        }
        owner[pick] = left_out;
        tentative[left_out] = offers[pick];
    }
    stats.max_branching = std::max(stats.max_branching, branching);
    return tentative;
}

// Exact search used when the literal procedure stalls or its output fails
// verification. For each injective assignment it computes the greatest
// envy-free trim levels: every share is the largest suffix of its piece that
// no other agent values above its own level, iterated to a fixed point.
class NeatSearch {
public:
    NeatSearch(Oracle& o, const std::vector<Offer>& offers, const std::vector<int>& agents,
               const std::map<int, AugmentedValue>& bench)
        : oracle_(o), offers_(offers), agents_(agents) {
        for (int a : agents) {
            auto it = bench.find(a);
            floor_.push_back(it == bench.end() ? Rat(0) : it->second.phys);
        }
    }

    std::optional<std::map<int, Offer>> run() {
        if (offers_.size() < agents_.size()) return std::nullopt;
        std::vector<bool> free(offers_.size(), false);
        return choose_free(0, offers_.size() - agents_.size(), free);
    }

private:
    Rat value(std::size_t a, const Piece& p) { return oracle_.eval(agents_[a], p); }

    // Smallest cut leaving a suffix of `slot` that agent a values at `level`.
    Rat suffix_cut(std::size_t a, int slot, const Rat& level) {
        auto key = std::make_tuple(a, slot, level);
        auto it = cuts_.find(key);
        if (it != cuts_.end()) return it->second;
        const Piece& p = offers_[slot].part;
        Rat x = oracle_.cut_in_piece(agents_[a], p, value(a, p) - level);
        cuts_.emplace(key, x);
        return x;
    }

    // Picks which pieces stay untouched; every agent's level must then reach
    // its value of each of them.
    std::optional<std::map<int, Offer>> choose_free(std::size_t from, std::size_t left, std::vector<bool>& free) {
        if (left == 0) {
            need_.assign(agents_.size(), Rat(0));
            for (std::size_t a = 0; a < agents_.size(); ++a) {
                need_[a] = floor_[a];
                for (std::size_t k = 0; k < offers_.size(); ++k)
                    if (free[k]) need_[a] = std::max(need_[a], value(a, offers_[k].part));
            }
            std::vector<int> sigma(agents_.size(), -1);
            std::vector<bool> used = free;
            return descend(0, sigma, used);
        }
        for (std::size_t k = from; k + left <= offers_.size(); ++k) {
            free[k] = true;
            auto found = choose_free(k + 1, left - 1, free);
            free[k] = false;
            if (found) return found;
        }
        return std::nullopt;
    }

    std::optional<std::map<int, Offer>> descend(std::size_t a, std::vector<int>& sigma, std::vector<bool>& used) {
        if (a == agents_.size()) return settle(sigma);
        std::vector<std::pair<Rat, int>> order;
        for (std::size_t k = 0; k < offers_.size(); ++k) {
            if (used[k]) continue;
            Rat v = value(a, offers_[k].part);
            if (v >= need_[a]) order.emplace_back(v, static_cast<int>(k));
        }
        std::stable_sort(order.begin(), order.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
        for (const auto& [v, k] : order) {
            sigma[a] = k;
            used[k] = true;
            auto found = descend(a + 1, sigma, used);
            used[k] = false;
            if (found) return found;
        }
        sigma[a] = -1;
        return std::nullopt;
    }

    // Levels only fall from the whole-piece values, so dropping below a need
    // ends the attempt early.
    std::optional<std::map<int, Offer>> settle(const std::vector<int>& sigma) {
        const std::size_t m = agents_.size();
        std::vector<Rat> level(m);
        std::vector<Piece> share(m);
        for (std::size_t j = 0; j < m; ++j) {
            share[j] = offers_[sigma[j]].part;
            level[j] = value(j, share[j]);
        }
        bool stable = false;
        for (std::size_t round = 0; round <= 4 * m + 4 && !stable; ++round) {
            std::vector<Piece> next(m);
            for (std::size_t j = 0; j < m; ++j) {
                const Piece& whole = offers_[sigma[j]].part;
                std::optional<Rat> cut;
                for (std::size_t i = 0; i < m; ++i) {
                    if (i == j || value(i, whole) <= level[i]) continue;
                    Rat x = suffix_cut(i, sigma[j], level[i]);
                    if (!cut || x > *cut) cut = x;
                }
                next[j] = cut ? rightmost_suffix(whole, *cut) : whole;
            }
            stable = next == share;
            share = std::move(next);
            for (std::size_t j = 0; j < m; ++j) {
                level[j] = value(j, share[j]);
                if (level[j] < need_[j]) return std::nullopt;
            }
        }
        if (!stable) return std::nullopt;
        bool someone_full = false;
        for (std::size_t j = 0; j < m; ++j) someone_full = someone_full || share[j] == offers_[sigma[j]].part;
        if (!someone_full) return std::nullopt;
        std::map<int, Offer> out;
        for (std::size_t j = 0; j < m; ++j) {
            Offer o = offers_[sigma[j]];
            o.part = share[j];
            o.margin_agent = -1;
            out[agents_[j]] = o;
        }
        return out;
    }

    Oracle& oracle_;
    const std::vector<Offer>& offers_;
    const std::vector<int>& agents_;
    std::vector<Rat> floor_;
    std::vector<Rat> need_;
    std::map<std::tuple<std::size_t, int, Rat>, Rat> cuts_;
};

// Physical check of a root result: neat, benchmarks met, one agent whole.
std::optional<std::string> defect(const SubCoreInput& input, const std::map<int, Offer>& assignment,
                                  const Profile& vals) {
    std::map<int, NeatShare> shares;
    bool someone_full = false;
    for (int a : input.agents) {
        auto it = assignment.find(a);
        if (it == assignment.end()) return "agent " + std::to_string(a) + " received nothing";
        const Offer& o = it->second;
        shares[a] = NeatShare{o.slot, o.part};
        someone_full = someone_full || o.part == input.pieces.at(o.slot);
        auto b = input.benchmarks.find(a);
        if (b != input.benchmarks.end() && vals.at(a).value(o.part) < b->second.phys)
            return "agent " + std::to_string(a) + " ends below its benchmark";
    }
    if (assignment.size() != input.agents.size()) return std::string("assignment names an unknown agent");
    if (!is_neat(input.pieces, shares, vals)) return std::string("allocation is not neat");
    if (!someone_full && !input.agents.empty()) return std::string("no agent holds a whole piece");
    return std::nullopt;
}

}  // namespace

SubCoreResult subcore(const SubCoreInput& input, Oracle& oracle, ImaginaryLedger& ledger) {
    if (input.tags.size() != input.pieces.size()) throw SubCoreFailure("one tag per piece is required");
    CacheScope cache(oracle);
    std::vector<Offer> offers;
    for (std::size_t k = 0; k < input.pieces.size(); ++k)
        offers.push_back(Offer{static_cast<int>(k), input.pieces[k], input.tags[k], -1});
    Run run(oracle, ledger);
    SubCoreResult r;
    std::optional<std::string> failure;
    try {
        r.assignment = run.solve(input.agents, offers, input.benchmarks, {}, 0);
        failure = defect(input, r.assignment, oracle.profile());
    } catch (const ProtocolBug& e) {
        failure = e.what();
    }
    r.stats = run.stats;
    if (failure) {
        r.stats.searched = true;
        r.stats.literal_failure = *failure;
        oracle.note("subcore literal run failed (" + *failure + "); exact search");
        auto found = NeatSearch(oracle, offers, input.agents, input.benchmarks).run();
        if (!found) throw BenchmarkInfeasible("no neat allocation meets the benchmarks");
        r.assignment = std::move(*found);
        if (auto d = defect(input, r.assignment, oracle.profile())) throw SubCoreFailure("exact search: " + *d);
    }
    r.allocated.assign(input.pieces.size(), false);
    for (const auto& [a, o] : r.assignment) r.allocated[o.slot] = true;
    return r;
}

}  // namespace cake
