#include "cake/verify.hpp"

#include "cake/errors.hpp"

#include <algorithm>

namespace cake {

namespace {

std::vector<std::vector<Rat>> value_table(const std::vector<Piece>& shares, const std::vector<int>& agents,
                                          const Profile& vals) {
    std::vector<std::vector<Rat>> t(agents.size(), std::vector<Rat>(agents.size()));
    for (std::size_t a = 0; a < agents.size(); ++a)
        for (std::size_t b = 0; b < agents.size(); ++b)
            t[a][b] = vals.at(agents[a]).value(shares.at(agents[b]));
    return t;
}

}  // namespace

EnvyCheck is_envy_free_among(const std::vector<Piece>& shares, const std::vector<int>& agents,
                             const Profile& vals) {
    auto t = value_table(shares, agents, vals);
    EnvyCheck r;
    for (std::size_t a = 0; a < agents.size(); ++a)
        for (std::size_t b = 0; b < agents.size(); ++b)
            if (t[a][b] > t[a][a]) {
                r.ok = false;
                r.witness = EnvyWitness{agents[a], agents[b]};
                return r;
            }
    return r;
}

EnvyCheck is_envy_free(const std::vector<Piece>& shares, const Profile& vals) {
    std::vector<int> all(shares.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
    return is_envy_free_among(shares, all, vals);
}

EnvyCheck is_envy_free(const Allocation& a, const Profile& vals) { return is_envy_free(a.shares, vals); }

bool is_proportional(const Allocation& a, const Profile& vals) {
    const long n = static_cast<long>(a.shares.size());
    for (long i = 0; i < n; ++i) {
        const Valuation& v = vals.at(i);
        if (v.value(a.shares[i]) * n < v.value(a.origin)) return false;
    }
    return true;
}

bool dominates(const Allocation& a, int i, int j, const Profile& vals) {
    const Valuation& v = vals.at(i);
    return v.value(a.shares.at(i)) >= v.value(a.shares.at(j)) + v.value(a.residue);
}

bool conservation(const Allocation& a) {
    std::vector<Piece> parts = a.shares;
    parts.push_back(a.residue);
    return is_partition(parts, a.origin);
}

bool is_connected(const Piece& p) { return p.size() == 1; }

bool is_neat(const std::vector<Piece>& pieces, const std::map<int, NeatShare>& assignment, const Profile& vals) {
    std::vector<int> owner(pieces.size(), -1);
    for (const auto& [agent, share] : assignment) {
        int home = share.slot;
        if (home >= 0) {
            if (home >= static_cast<int>(pieces.size()) || !is_subset(share.part, pieces[home]))
                throw MalformedAssignment("share of agent " + std::to_string(agent) + " leaves its piece");
        } else {
            for (std::size_t k = 0; k < pieces.size(); ++k) {
                Piece overlap = piece_intersect(share.part, pieces[k]);
                if (overlap.empty()) continue;
                if (home != -1 || overlap != share.part)
                    throw MalformedAssignment("share of agent " + std::to_string(agent) + " straddles pieces");
                home = static_cast<int>(k);
            }
            if (home == -1)
                throw MalformedAssignment("share of agent " + std::to_string(agent) + " lies in no piece");
        }
        if (owner[home] != -1) return false;
        owner[home] = agent;
    }
    bool some_free = false;
    for (std::size_t k = 0; k < pieces.size(); ++k) some_free = some_free || owner[k] == -1;
    if (!some_free) return false;
    for (const auto& [agent, share] : assignment) {
        const Valuation& v = vals.at(agent);
        Rat own = v.value(share.part);
        for (std::size_t k = 0; k < pieces.size(); ++k)
            if (owner[k] == -1 && v.value(pieces[k]) > own) return false;
        for (const auto& [other, other_share] : assignment)
            if (other != agent && v.value(other_share.part) > own) return false;
    }
    return true;
}

bool is_neat(const std::vector<Piece>& pieces, const std::map<int, Piece>& assignment, const Profile& vals) {
    std::map<int, NeatShare> tagged;
    for (const auto& [agent, share] : assignment) tagged[agent] = NeatShare{-1, share};
    return is_neat(pieces, tagged, vals);
}

std::optional<std::vector<int>> find_dominated_set(const std::vector<Piece>& shares, const Piece& residue,
                                                   const std::vector<int>& agents, const Profile& vals) {
    const std::size_t n = agents.size();
    if (n > 8) throw TooManyAgents(std::to_string(n) + " agents exceed the exhaustive search guard");
    if (n < 2) return std::nullopt;
    // dom[a] bitmask of positions b that a dominates
    std::vector<unsigned> dom(n, 0);
    for (std::size_t a = 0; a < n; ++a) {
        const Valuation& v = vals.at(agents[a]);
        Rat own = v.value(shares.at(agents[a]));
        Rat res = v.value(residue);
        for (std::size_t b = 0; b < n; ++b)
            if (b != a && own >= v.value(shares.at(agents[b])) + res) dom[a] |= 1u << b;
    }
    const unsigned full = (1u << n) - 1;
    std::optional<unsigned> best;
    auto complement_key = [&](unsigned mask) {
        std::vector<int> c;
        for (std::size_t a = 0; a < n; ++a)
            if (!(mask >> a & 1)) c.push_back(agents[a]);
        return c;
    };
    for (std::size_t size = 1; size < n && !best; ++size) {
        for (unsigned mask = 1; mask < full; ++mask) {
            if (static_cast<std::size_t>(__builtin_popcount(mask)) != size) continue;
            bool ok = true;
            for (std::size_t a = 0; a < n && ok; ++a)
                if (!(mask >> a & 1) && (dom[a] & mask) != mask) ok = false;
            if (!ok) continue;
            if (!best || complement_key(mask) < complement_key(*best)) best = mask;
        }
    }
    if (!best) return std::nullopt;
    std::vector<int> out;
    for (std::size_t a = 0; a < n; ++a)
        if (*best >> a & 1) out.push_back(agents[a]);
    return out;
}

}  // namespace cake
