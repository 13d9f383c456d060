#pragma once

#include "cake/piece.hpp"
#include "cake/valuation.hpp"

#include <map>
#include <optional>
#include <vector>

namespace cake {

// shares are indexed by agent (0-based). Checks here use exact physical
// values and never touch a query counter.
struct Allocation {
    std::vector<Piece> shares;
    Piece residue;
    Piece origin;
};

struct EnvyWitness {
    int envier;
    int envied;
};

struct EnvyCheck {
    bool ok = true;
    std::optional<EnvyWitness> witness;
    explicit operator bool() const { return ok; }
};

EnvyCheck is_envy_free(const std::vector<Piece>& shares, const Profile& vals);
EnvyCheck is_envy_free(const Allocation& a, const Profile& vals);
// Restricted to the listed agents, as enviers and as envied.
EnvyCheck is_envy_free_among(const std::vector<Piece>& shares, const std::vector<int>& agents,
                             const Profile& vals);

bool is_proportional(const Allocation& a, const Profile& vals);
bool dominates(const Allocation& a, int i, int j, const Profile& vals);
bool conservation(const Allocation& a);
bool is_connected(const Piece& p);

// Clauses: each share lies inside exactly one listed piece and no two shares
// share a piece; some piece is untouched; nobody prefers an untouched piece to
// its share; no envy between assigned agents. Preferences are weak and physical.
// Throws MalformedAssignment when a share straddles pieces.
bool is_neat(const std::vector<Piece>& pieces, const std::map<int, Piece>& assignment, const Profile& vals);

// Same check with the home piece of each share given explicitly, which is
// needed for shares trimmed down to nothing. slot -1 means infer it.
struct NeatShare {
    int slot = -1;
    Piece part;
};
bool is_neat(const std::vector<Piece>& pieces, const std::map<int, NeatShare>& assignment, const Profile& vals);

// Nonempty proper subset A of `agents` such that every agent outside A
// dominates every agent in A. Picks the smallest such A; among those, the one
// whose complement is lexicographically smallest. Exhaustive; more than 8
// agents throws TooManyAgents.
std::optional<std::vector<int>> find_dominated_set(const std::vector<Piece>& shares, const Piece& residue,
                                                   const std::vector<int>& agents, const Profile& vals);

}  // namespace cake
