#include "cake/core.hpp"
#include "cake/errors.hpp"
#include "cake/snapshot.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace cake;
using namespace cake::testing;

namespace {

// Four cells of width 1/8 in [0,1/2], cell k held by agent k; [1/2,1] is a
// uniform residue. Each agent i > 0 values cell 0 just below its own cell,
// by bonus[i]; everything else in [0,1/2] is worthless to non-owners.
Profile bonus_profile(const std::map<int, Rat>& bonus) {
    Profile p;
    for (int i = 0; i < 4; ++i) {
        std::vector<Segment> segs;
        for (int k = 0; k < 4; ++k) {
            Rat d = 0;
            if (k == i) d = 1;
            else if (k == 0 && bonus.count(i)) d = 1 - 8 * bonus.at(i);
            segs.push_back({rat(k, 8), rat(k + 1, 8), d});
        }
        segs.push_back({rat(1, 2), 1, 1});
        p.emplace_back(segs);
    }
    return p;
}

Snapshot four_cells() {
    std::map<int, Piece> shares;
    for (int k = 0; k < 4; ++k) shares[k] = Piece::interval(rat(k, 8), rat(k + 1, 8));
    return Snapshot::from_core(0, 0, shares);
}

std::vector<int> extractors(const ExtractionResult& r) {
    std::vector<int> out;
    for (const Extraction& e : r.extracted) out.push_back(e.extractor);
    return out;
}

}  // namespace

TEST(Params, TowersAndStrictMode) {
    EXPECT_EQ(*power_tower(2, 3), 16);
    EXPECT_EQ(*power_tower(3, 2), 27);
    EXPECT_FALSE(power_tower(5, 4));
    Params s3 = Params::strict(3);
    EXPECT_EQ(*s3.C, BigInt(7625597484987UL));
    EXPECT_THROW(Params::strict(5), UnsupportedParameters);
    EXPECT_THROW(Params::adaptive(4, Rat(0)), UnsupportedParameters);
    EXPECT_THROW(Params::adaptive(4, Rat(1)), UnsupportedParameters);
}

TEST(Params, BoundFunction) {
    EXPECT_EQ(bound_f(1, 4), rat(1, 2));
    EXPECT_EQ(bound_f(0, 7), Rat(1));
    EXPECT_EQ(bound_f(2, 5), rat(9, 25));
    EXPECT_THROW(bound_f(1, 2), UnsupportedParameters);
}

TEST(Params, Significance) {
    Params p = Params::adaptive(4, rat(1, 8));
    EXPECT_TRUE(is_significant(rat(1, 10), rat(1, 2), p));
    EXPECT_FALSE(is_significant(0, rat(1, 2), p));
    EXPECT_TRUE(is_significant(0, 0, p));
}

TEST(Bonus, DifferenceOfOwnAndOtherClass) {
    Profile p = bonus_profile({{1, rat(1, 1000)}});
    Oracle o(p);
    Snapshot s = four_cells();
    EXPECT_EQ(bonus(o, s, 1, 0), rat(1, 1000));
    EXPECT_EQ(bonus(o, s, 1, 1), 0);
    EXPECT_EQ(bonus(o, s, 2, 0), rat(1, 8));
    Profile same(4, Valuation({{0, 1, 1}}));
    Oracle o2(same);
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k) EXPECT_EQ(bonus(o2, s, i, k), 0);
}

TEST(Extraction, AllBonusesSignificantMeansNoTrims) {
    Profile p = bonus_profile({});
    Oracle o(p);
    ExtractionResult r = extract_for_piece(four_cells(), 0, Piece::interval(rat(1, 2), 1), iota_agents(4),
                                           Params::adaptive(4), o);
    EXPECT_TRUE(r.extracted.empty());
    EXPECT_FALSE(r.discrepant);
    EXPECT_EQ(r.residue, Piece::interval(rat(1, 2), 1));
}

TEST(Extraction, SingleInsignificantBonusExtractsExactlyIt) {
    const Rat beta = rat(1, 10000000);
    Profile p = bonus_profile({{2, beta}});
    Oracle o(p);
    ExtractionResult r = extract_for_piece(four_cells(), 0, Piece::interval(rat(1, 2), 1), iota_agents(4),
                                           Params::adaptive(4), o);
    ASSERT_EQ(r.extracted.size(), 1u);
    EXPECT_EQ(r.extracted[0].extractor, 2);
    EXPECT_EQ(p[2].value(r.extracted[0].piece), beta);
    EXPECT_TRUE(is_partition({r.residue, r.extracted[0].piece}, Piece::interval(rat(1, 2), 1)));
}

TEST(Extraction, TrimsAreOrderedLeftToRight) {
    // Bonuses 1 < 3 < 2 in size, so the trims fall in the order 1, 3, 2.
    Profile p = bonus_profile({{1, rat(1, 10000000)}, {3, rat(2, 10000000)}, {2, rat(3, 10000000)}});
    Oracle o(p);
    ExtractionResult r = extract_for_piece(four_cells(), 0, Piece::interval(rat(1, 2), 1), iota_agents(4),
                                           Params::adaptive(4), o);
    EXPECT_EQ(extractors(r), (std::vector<int>{1, 3, 2}));
    for (std::size_t m = 0; m + 1 < r.extracted.size(); ++m)
        EXPECT_LE(r.extracted[m].piece.right_extreme(), r.extracted[m + 1].piece.left_extreme());
}

TEST(Extraction, ExtractedPiecesAreUnanimouslyInsignificant) {
    const Params params = Params::adaptive(5, rat(1, 64));
    int extracted = 0;
    for (int seed = 1; seed <= 40; ++seed) {
        Profile p = random_instance(5, 4, seed, 1);
        Oracle o(p);
        ImaginaryLedger L;
        CoreOutcome c = core(0, iota_agents(5), Piece::whole(), o, L);
        if (c.leftover.empty()) continue;
        Snapshot s = Snapshot::from_core(0, 0, c.shares);
        Piece residue = c.leftover;
        for (int k = 0; k < 5 && !residue.empty(); ++k) {
            std::vector<Rat> before;
            for (int i = 0; i < 5; ++i) before.push_back(p[i].value(residue));
            ExtractionResult r = extract_for_piece(s, k, residue, iota_agents(5), params, o);
            Piece taken;
            for (const Extraction& e : r.extracted) {
                ++extracted;
                for (int i = 0; i < 5; ++i) EXPECT_LT(p[i].value(e.piece), before[i] * params.threshold) << seed;
                taken = piece_union(taken, e.piece);
            }
            // The residue loses at most n*s of its value per class.
            for (int i = 0; i < 5; ++i) EXPECT_LE(p[i].value(taken), before[i] * 5 * params.threshold);
            if (r.discrepant) break;
            residue = r.residue;
        }
    }
    EXPECT_GT(extracted, 0);
}

TEST(Isomorphism, SignaturesAndGroups) {
    Snapshot a = four_cells(), b = four_cells(), c = four_cells();
    a.id = 0;
    b.id = 1;
    c.id = 2;
    auto ex = [](int agent) { return Extraction{agent, Piece(), false}; };
    a.extractions[0] = {ex(1), ex(2)};
    b.extractions[0] = {ex(1), ex(2)};
    c.extractions[0] = {ex(2), ex(1)};
    EXPECT_EQ(iso_signature(a), iso_signature(b));
    EXPECT_NE(iso_signature(a), iso_signature(c));
    std::vector<Snapshot> all = {c, a, b};
    all[0].id = 0;
    all[1].id = 1;
    all[2].id = 2;
    EXPECT_EQ(find_isomorphic_subset(all, 2), (std::vector<int>{1, 2}));
    EXPECT_TRUE(find_isomorphic_subset(all, 3).empty());
    EXPECT_EQ(find_isomorphic_subset(all, 1), (std::vector<int>{0}));
}
