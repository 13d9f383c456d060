#include "cake/bounds.hpp"
#include "cake/partial.hpp"
#include "cake/verify.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace cake;
using namespace cake::testing;

TEST(PropEf, ThreeAgentsProportionalAndEnvyFree) {
    for (int seed = 1; seed <= 200; ++seed) {
        Profile p = random_instance(3, 4, seed);
        Oracle o(p);
        ImaginaryLedger L;
        PartialOutcome r = proportional_ef_partial(Piece::whole(), iota_agents(3), o, L);
        Allocation a = as_allocation(r.shares, 3);
        ASSERT_TRUE(is_envy_free(a, p).ok) << seed;
        ASSERT_TRUE(is_proportional(a, p)) << seed;
        ASSERT_TRUE(conservation(a)) << seed;
        EXPECT_EQ(a.residue, r.residue);
    }
}

TEST(PropEf, SevenAgentsWithinQueryBound) {
    for (int seed = 1; seed <= 10; ++seed) {
        Profile p = random_instance(7, 4, seed);
        Oracle o(p);
        ImaginaryLedger L;
        PartialOutcome r = proportional_ef_partial(Piece::whole(), iota_agents(7), o, L);
        Allocation a = as_allocation(r.shares, 7);
        EXPECT_TRUE(is_envy_free(a, p).ok && is_proportional(a, p) && conservation(a)) << seed;
        EXPECT_LE(r.core_rounds, 7);
        EXPECT_LE(BigInt(static_cast<unsigned long>(o.counter().total())), partial_query_bound(7));
    }
}

TEST(ConnectedPieces, FiveAgentsGetIntervalsWorthAThirdOfAFairShare) {
    for (int seed = 1; seed <= 60; ++seed) {
        Profile p = random_instance(5, 4, seed);
        Oracle o(p);
        ImaginaryLedger L;
        PartialOutcome r = connected_pieces(Piece::whole(), iota_agents(5), o, L);
        Allocation a = as_allocation(r.shares, 5);
        EXPECT_TRUE(is_envy_free(a, p).ok) << seed;
        EXPECT_TRUE(conservation(a));
        for (int i = 0; i < 5; ++i) {
            EXPECT_TRUE(is_connected(a.shares[i])) << seed;
            EXPECT_GE(p[i].value(a.shares[i]) * 15, p[i].total()) << seed;
        }
    }
}

TEST(ConnectedPieces, SingleAgentTakesAnInterval) {
    Profile p = random_instance(1, 3, 2);
    Oracle o(p);
    ImaginaryLedger L;
    PartialOutcome r = connected_pieces(Piece::whole(), {0}, o, L);
    EXPECT_TRUE(is_connected(r.shares.at(0)));
    EXPECT_GE(p[0].value(r.shares.at(0)) * 3, p[0].total());
}
