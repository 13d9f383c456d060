#include "cake/errors.hpp"
#include "cake/piece.hpp"
#include "cake/rational.hpp"
#include "cake/valuation.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace cake;

namespace {

Piece random_piece(std::mt19937_64& rng, int grid = 24) {
    std::vector<Interval> raw;
    int parts = 1 + static_cast<int>(rng() % 4);
    for (int i = 0; i < parts; ++i) {
        long a = static_cast<long>(rng() % grid), b = static_cast<long>(rng() % grid);
        if (a > b) std::swap(a, b);
        raw.push_back({rat(a, grid), rat(b + 1, grid)});
    }
    return Piece::normalize(raw);
}

}  // namespace

TEST(Rational, ParseAndPrintRoundTrip) {
    EXPECT_EQ(parse_rat("6/8"), rat(3, 4));
    EXPECT_EQ(parse_rat("5"), Rat(5));
    EXPECT_EQ(to_string(parse_rat("-10/4")), "-5/2");
    EXPECT_EQ(to_string(Rat(7)), "7");
    for (const char* bad : {"", "1/0", "a/2", "1/-2", "1.5", "/3"}) EXPECT_THROW(parse_rat(bad), std::invalid_argument) << bad;
    EXPECT_EQ(rat_pow(rat(3, 5), 2), rat(9, 25));
}

TEST(Piece, NormalizeMergesTouchingAndDropsEmpty) {
    Piece p = Piece::normalize({{rat(1, 2), rat(3, 4)}, {rat(0), rat(1, 4)}, {rat(1, 4), rat(1, 3)}, {rat(1, 5), rat(1, 5)}});
    ASSERT_EQ(p.size(), 2u);
    EXPECT_EQ(p.intervals()[0].right, rat(1, 3));
    EXPECT_EQ(p.measure(), rat(1, 3) + rat(1, 4));
    EXPECT_THROW(Piece::interval(rat(1, 2), rat(3, 2)), EndpointOutOfRange);
    EXPECT_THROW(Piece::interval(rat(1, 2), rat(1, 3)), EndpointOutOfRange);
}

TEST(Piece, SetAlgebraIdentitiesOnRandomPieces) {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 500; ++t) {
        Piece a = random_piece(rng), b = random_piece(rng);
        Piece u = piece_union(a, b), i = piece_intersect(a, b), d = piece_subtract(a, b);
        EXPECT_EQ(u.measure() + i.measure(), a.measure() + b.measure());
        EXPECT_EQ(d.measure(), a.measure() - i.measure());
        EXPECT_TRUE(is_subset(d, a));
        EXPECT_TRUE(interior_disjoint(d, b));
        EXPECT_EQ(piece_union(d, i), a);
        EXPECT_TRUE(is_partition({d, b}, u));
    }
}

TEST(Piece, PrefixAndSuffixSplitAPiece) {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 300; ++t) {
        Piece p = random_piece(rng);
        Rat x = p.left_extreme() + (p.right_extreme() - p.left_extreme()) * rat(static_cast<long>(rng() % 7), 6);
        Piece l = leftmost_prefix(p, x), r = rightmost_suffix(p, x);
        EXPECT_TRUE(is_partition({l, r}, p));
        if (!l.empty()) EXPECT_LE(l.right_extreme(), x);
        if (!r.empty()) EXPECT_GE(r.left_extreme(), x);
    }
    EXPECT_EQ(components(Piece::normalize({{0, rat(1, 4)}, {rat(1, 2), 1}})).size(), 2u);
}

TEST(Valuation, RejectsBadTilings) {
    EXPECT_THROW(Valuation({{0, rat(1, 2), 1}}), InvalidValuation);
    EXPECT_THROW(Valuation({{0, rat(1, 2), 1}, {rat(1, 3), 1, 1}}), InvalidValuation);
    EXPECT_THROW(Valuation({{0, 1, -1}}), InvalidValuation);
    EXPECT_THROW(Valuation({{0, 1, 0}}), InvalidValuation);
}

TEST(Valuation, RandomInstancesAreDeterministicAndValid) {
    Profile a = random_instance(5, 8, 99), b = random_instance(5, 8, 99);
    ASSERT_EQ(a.size(), 5u);
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(describe(a[i]), describe(b[i]));
        EXPECT_GT(a[i].total(), 0);
        Rat at = 0;
        for (const Segment& s : a[i].segments()) {
            EXPECT_EQ(s.left, at);
            EXPECT_GE(s.density, 0);
            at = s.right;
        }
        EXPECT_EQ(at, 1);
        EXPECT_EQ(a[i].value(Piece::whole()), a[i].total());
    }
}

TEST(Valuation, QueriesMatchDirectIntegration) {
    std::mt19937_64 rng(3);
    for (int seed = 1; seed <= 40; ++seed) {
        Profile p = random_instance(3, 5, seed);
        for (const Valuation& v : p) {
            Piece piece = random_piece(rng);
            // Direct sum over segments and intervals.
            Rat direct = 0;
            for (const Interval& iv : piece.intervals())
                for (const Segment& s : v.segments()) {
                    Rat lo = std::max(iv.left, s.left), hi = std::min(iv.right, s.right);
                    if (lo < hi) direct += s.density * (hi - lo);
                }
            EXPECT_EQ(v.value(piece), direct);

            Rat target = v.value(piece) * rat(static_cast<long>(rng() % 5), 4);
            if (target > v.value(piece)) continue;
            Rat x = v.cut_in_piece(piece, target);
            EXPECT_EQ(v.value(leftmost_prefix(piece, x)), target);
            Rat y = v.trim_point(piece, target);
            EXPECT_EQ(v.value(rightmost_suffix(piece, y)), target);
        }
    }
}

TEST(Valuation, CutIsSmallestAndTrimIsLargest) {
    // Density zero on [1/4,1/2]: the cut lands at the left end of the gap and
    // the trim at its right end.
    Valuation v({{0, rat(1, 4), 4}, {rat(1, 4), rat(1, 2), 0}, {rat(1, 2), 1, 2}});
    EXPECT_EQ(v.cut(0, 1), rat(1, 4));
    EXPECT_EQ(v.trim_point(Piece::whole(), 1), rat(1, 2));
    EXPECT_THROW(v.cut(0, 3), TargetExceedsAvailable);
}

TEST(Oracle, CountsQueriesAndEnforcesBudget) {
    Profile p = random_instance(2, 3, 1);
    Oracle o(p);
    o.eval(0, Piece::whole());
    o.cut(1, 0, p[1].total() / 2);
    EXPECT_EQ(o.counter().evals(0), 1u);
    EXPECT_EQ(o.counter().cuts(1), 1u);
    EXPECT_EQ(o.counter().total(), 2u);
    o.counter().set_budget(3);
    o.eval(0, Piece::whole());
    EXPECT_THROW(o.eval(0, Piece::whole()), BudgetExhausted);
}

TEST(Oracle, TraceIsDeterministic) {
    Profile p = random_instance(2, 3, 4);
    std::ostringstream a, b;
    for (auto* out : {&a, &b}) {
        Oracle o(p);
        o.set_trace(out);
        o.cut(0, 0, p[0].total() / 3);
        o.eval(1, Piece::interval(0, rat(1, 2)));
    }
    EXPECT_EQ(a.str(), b.str());
    EXPECT_NE(a.str().find("Q 1 CUT"), std::string::npos);
}
