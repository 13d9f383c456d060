#include "cake/base_cases.hpp"
#include "cake/core.hpp"
#include "cake/errors.hpp"
#include "cake/verify.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace cake;
using namespace cake::testing;

TEST(Core, NeatOutcomeOnRandomInstances) {
    for (int n = 3; n <= 6; ++n) {
        for (int seed = 1; seed <= 30; ++seed) {
            Profile p = random_instance(n, 4, seed * 7 + n);
            Oracle o(p);
            ImaginaryLedger L;
            const int cutter = seed % n;
            CoreOutcome c = core(cutter, iota_agents(n), Piece::whole(), o, L);
            Allocation a = as_allocation(c.shares, n);
            EXPECT_TRUE(is_envy_free(a, p).ok) << n << " " << seed;
            EXPECT_TRUE(conservation(a));
            EXPECT_EQ(a.residue, c.leftover);
            EXPECT_TRUE(c.holds_full_piece(cutter));
            int full = 0;
            for (int i = 0; i < n; ++i)
                if (i != cutter && c.holds_full_piece(i)) ++full;
            EXPECT_GE(full, 1) << n << " " << seed;
            EXPECT_LE(p[cutter].value(c.leftover) * n, p[cutter].total() * (n - 2));
            // The cutter's pieces are equal by its own measure.
            for (const Piece& piece : c.cut_pieces) EXPECT_EQ(p[cutter].value(piece) * n, p[cutter].total());
        }
    }
}

TEST(Core, TwoAgentsCoincideWithDivideAndChoose) {
    for (int seed = 1; seed <= 50; ++seed) {
        Profile p = random_instance(2, 3, seed);
        Oracle o1(p), o2(p);
        ImaginaryLedger L;
        CoreOutcome c = core(0, {0, 1}, Piece::whole(), o1, L);
        auto d = divide_and_choose(Piece::whole(), 0, 1, o2);
        EXPECT_EQ(c.shares.at(0), d.at(0)) << seed;
        EXPECT_EQ(c.shares.at(1), d.at(1)) << seed;
    }
}

TEST(Core, CutterMarginMatchesDirectEvaluation) {
    // Agent 1 values only the first quarter, so whatever piece it receives
    // gets trimmed hard and the cutter keeps a positive margin.
    Profile p = {Valuation({{0, 1, 1}}), Valuation({{0, rat(1, 4), 4}, {rat(1, 4), 1, 0}}),
                 Valuation({{0, rat(1, 4), 4}, {rat(1, 4), 1, 0}})};
    Oracle o(p);
    ImaginaryLedger L;
    CoreOutcome c = core(0, {0, 1, 2}, Piece::whole(), o, L);
    auto [who, margin] = cutter_advantage(c, p);
    EXPECT_NE(who, 0);
    EXPECT_EQ(margin, p[0].total() / 3 - p[0].value(c.shares.at(who)));
    EXPECT_GE(margin, 0);
}

TEST(Core, EmptyResidueIsRejected) {
    Profile p = {Valuation({{0, rat(1, 2), 2}, {rat(1, 2), 1, 0}}), Valuation({{0, 1, 1}})};
    Oracle o(p);
    ImaginaryLedger L;
    EXPECT_THROW(core(0, {0, 1}, Piece::interval(rat(1, 2), 1), o, L), EmptyResidue);
}

TEST(BaseCases, DivideAndChooseAndSelfridgeConway) {
    for (int seed = 1; seed <= 100; ++seed) {
        Profile p2 = random_instance(2, 1 + seed % 5, seed);
        Oracle o2(p2);
        Allocation a2 = as_allocation(divide_and_choose(Piece::whole(), 0, 1, o2), 2);
        EXPECT_TRUE(is_envy_free(a2, p2).ok && is_proportional(a2, p2) && a2.residue.empty()) << seed;

        Profile p3 = random_instance(3, 1 + seed % 5, seed);
        Oracle o3(p3);
        Allocation a3 = as_allocation(selfridge_conway(Piece::whole(), 0, 1, 2, o3), 3);
        EXPECT_TRUE(is_envy_free(a3, p3).ok && is_proportional(a3, p3) && a3.residue.empty()) << seed;
    }
}
