#include "cake/errors.hpp"
#include "cake/tiebreak.hpp"

#include <gtest/gtest.h>

using namespace cake;

TEST(Infinitesimal, LaterSymbolsAreSmaller) {
    ImaginaryLedger L;
    EpsSymbol a = L.issue_epsilon(0), b = L.issue_epsilon(1), c = L.issue_epsilon(0);
    EXPECT_TRUE(outranks(a, b));
    EXPECT_TRUE(outranks(b, c));
    EXPECT_EQ(c.owner_index, 1u);
    // One unit of an earlier symbol beats any multiple of later ones.
    Infinitesimal big = Infinitesimal::of(a);
    Infinitesimal many = Infinitesimal::of(b, 1000).plus(Infinitesimal::of(c, 1000));
    EXPECT_GT(big, many);
    EXPECT_LT(Infinitesimal::of(a, -1), Infinitesimal());
    EXPECT_EQ(Infinitesimal::of(a).plus(Infinitesimal::of(a, -1)), Infinitesimal());
}

TEST(AugmentedValue, PhysicalPartDecidesFirst) {
    ImaginaryLedger L;
    EpsSymbol e = L.issue_epsilon(0);
    AugmentedValue lo{rat(1, 3), Infinitesimal::of(e, 5)};
    AugmentedValue hi{rat(1, 2), Infinitesimal::of(e, -5)};
    EXPECT_TRUE(lo < hi);
    AugmentedValue tied{rat(1, 3), Infinitesimal::of(e, 4)};
    EXPECT_TRUE(tied < lo);
    EXPECT_TRUE((lo == AugmentedValue{rat(1, 3), Infinitesimal::of(e, 5)}));
}

TEST(Ledger, EqualizedPiecesKeepPreferenceOrder) {
    ImaginaryLedger L;
    Infinitesimal bench = Infinitesimal::of(L.issue_epsilon(9));
    int a = L.register_piece(), b = L.register_piece(), c = L.register_piece();
    auto syms = L.tag_equalized_pieces(0, {a, b, c}, bench);
    ASSERT_EQ(syms.size(), 3u);
    EXPECT_LT(L.piece_imaginary_value(a), L.piece_imaginary_value(b));
    EXPECT_LT(L.piece_imaginary_value(b), L.piece_imaginary_value(c));
    // All sit just above the benchmark tag.
    EXPECT_GT(L.piece_imaginary_value(a), bench);
    EXPECT_EQ(L.order_checks(), 2u);
    EXPECT_EQ(L.order_violations(), 0u);
    EXPECT_THROW(L.tag_equalized_pieces(0, {}, bench), EmptyTrimSet);
    EXPECT_THROW(L.tag_equalized_pieces(0, {42}, bench), UnknownPiece);
}

TEST(Ledger, CountsTiesBetweenDistinctPieces) {
    ImaginaryLedger L;
    EpsSymbol e = L.issue_epsilon(0);
    L.compare_distinct({rat(1, 2), Infinitesimal::of(e)}, {rat(1, 2), Infinitesimal::of(e)});
    L.compare_distinct({rat(1, 2), Infinitesimal::of(e)}, {rat(1, 2), {}});
    EXPECT_EQ(L.comparisons(), 2u);
    EXPECT_EQ(L.tie_events(), 1u);
}
