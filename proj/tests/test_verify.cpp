#include "cake/errors.hpp"
#include "cake/oracles.hpp"
#include "cake/verify.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace cake;
using namespace cake::testing;

namespace {

// Agent 0 likes the left half, agent 1 the right half.
Profile halves() {
    return {Valuation({{0, rat(1, 2), 3}, {rat(1, 2), 1, 1}}), Valuation({{0, rat(1, 2), 1}, {rat(1, 2), 1, 3}})};
}

}  // namespace

TEST(Verify, EnvyFreeAllocationPasses) {
    Profile p = halves();
    Allocation a = as_allocation({Piece::interval(0, rat(1, 2)), Piece::interval(rat(1, 2), 1)});
    EXPECT_TRUE(is_envy_free(a, p).ok);
    EXPECT_TRUE(is_proportional(a, p));
    EXPECT_TRUE(conservation(a));
}

TEST(Verify, SwappedSharesGiveAWitness) {
    Profile p = halves();
    Allocation a = as_allocation({Piece::interval(rat(1, 2), 1), Piece::interval(0, rat(1, 2))});
    EnvyCheck c = is_envy_free(a, p);
    ASSERT_FALSE(c.ok);
    ASSERT_TRUE(c.witness);
    EXPECT_NE(c.witness->envier, c.witness->envied);
}

TEST(Verify, OverlappingSharesFailConservation) {
    Allocation a;
    a.origin = Piece::whole();
    a.shares = {Piece::interval(0, rat(2, 3)), Piece::interval(rat(1, 2), 1)};
    EXPECT_FALSE(conservation(a));
    a.shares = {Piece::interval(0, rat(1, 3)), Piece::interval(rat(1, 2), 1)};
    a.residue = Piece();
    EXPECT_FALSE(conservation(a));
    a.residue = Piece::interval(rat(1, 3), rat(1, 2));
    EXPECT_TRUE(conservation(a));
}

TEST(Verify, DominanceCountsTheWholeResidue) {
    Profile p = halves();
    Allocation a;
    a.origin = Piece::whole();
    a.shares = {Piece::interval(0, rat(1, 2)), Piece::interval(rat(3, 4), 1)};
    a.residue = Piece::interval(rat(1, 2), rat(3, 4));
    // Agent 0: 3/2 against 1/4 + 1/4.
    EXPECT_TRUE(dominates(a, 0, 1, p));
    // Agent 1: 3/4 against 1/2 + 3/4.
    EXPECT_FALSE(dominates(a, 1, 0, p));
}

TEST(Verify, FullPairwiseDominationPicksTheLastAgent) {
    const int n = 4;
    Profile p(n, Valuation({{0, 1, 1}}));
    std::vector<Piece> shares;
    for (int i = 0; i < n; ++i) shares.push_back(Piece::interval(rat(i, 4 * n), rat(i + 1, 4 * n)));
    // Every agent holds 1/16 and the residue is empty, so everyone
    // dominates everyone; the tie rule keeps the complement smallest.
    Piece residue;
    auto all = all_dominated_sets(shares, residue, iota_agents(n), p);
    EXPECT_EQ(all.size(), (1u << n) - 2);
    auto A = find_dominated_set(shares, residue, iota_agents(n), p);
    ASSERT_TRUE(A);
    EXPECT_EQ(*A, std::vector<int>{n - 1});
}

TEST(Verify, DominatedSetMatchesBipartitionSearch) {
    SuiteResult r = dominated_suite(300, 1, 6);
    EXPECT_TRUE(r.ok()) << (r.disagreements.empty() ? "" : r.disagreements.front());
    EXPECT_GT(r.positives, 0);
    EXPECT_LT(r.positives, r.cases);
}

TEST(Verify, DominatedSetGuardsAgentCount) {
    Profile p(9, Valuation({{0, 1, 1}}));
    std::vector<Piece> shares(9);
    EXPECT_THROW(find_dominated_set(shares, Piece::whole(), iota_agents(9), p), TooManyAgents);
}

TEST(Verify, NeatnessClauses) {
    Profile p = halves();
    std::vector<Piece> pieces = {Piece::interval(0, rat(1, 3)), Piece::interval(rat(1, 3), rat(2, 3)),
                                 Piece::interval(rat(2, 3), 1)};
    // Agent 0 takes the left piece, agent 1 the right one, the middle stays.
    std::map<int, Piece> ok = {{0, pieces[0]}, {1, pieces[2]}};
    EXPECT_TRUE(is_neat(pieces, ok, p));
    // Agent 1 prefers the untouched right piece to a trimmed middle.
    std::map<int, Piece> bad = {{0, pieces[0]}, {1, Piece::interval(rat(1, 2), rat(2, 3))}};
    EXPECT_FALSE(is_neat(pieces, bad, p));
    // No untouched piece.
    std::map<int, Piece> all = {{0, pieces[0]}, {1, pieces[2]}, {2, pieces[1]}};
    Profile three = {p[0], p[1], p[1]};
    EXPECT_FALSE(is_neat(pieces, all, three));
    // A share across two pieces is malformed.
    std::map<int, Piece> straddle = {{0, Piece::interval(rat(1, 4), rat(1, 2))}};
    EXPECT_THROW(is_neat(pieces, straddle, p), MalformedAssignment);
}
