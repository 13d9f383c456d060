#include "cake/goleft.hpp"
#include "cake/main_protocol.hpp"
#include "cake/oracles.hpp"
#include "cake/verify.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace cake;
using namespace cake::testing;

TEST(PermutationGraph, CycleSearchAgreesWithEnumeration) {
    SuiteResult r = cycle_suite(4);
    EXPECT_TRUE(r.ok()) << (r.disagreements.empty() ? "" : r.disagreements.front());
    EXPECT_GT(r.cases, 100);
}

TEST(PermutationGraph, ExchangeMovesClassesAndEdges) {
    PermutationGraph g(iota_agents(3));
    EXPECT_EQ(g.violation(), "");
    g.add_edge(0, g.class_of(1));
    g.remove_edge(1, g.class_of(1));
    g.add_edge(1, g.class_of(0));
    g.remove_edge(0, g.class_of(0));
    EXPECT_EQ(g.violation(), "");
    std::vector<int> cycle = find_cycle_with_T_node(g);
    ASSERT_EQ(cycle.size(), 2u);
    g.apply_exchange(cycle);
    EXPECT_EQ(g.class_of(0), 1);
    EXPECT_EQ(g.class_of(1), 0);
    g.finish_class(2);
    EXPECT_TRUE(g.points_to(0, 2));
    EXPECT_FALSE(g.in_T(2));
}

TEST(Quotas, WorkedExamples) {
    EXPECT_EQ(phase_quotas(1, 20, 4, 5), (std::vector<long>{4, 4, 4, 4}));
    EXPECT_EQ(phase_quotas(2, 11, 2, 5), (std::vector<long>{5, 5}));
    QuotaEvent e1{1, 0, 4, 4, 5};
    EXPECT_TRUE(e1.holds());
    QuotaEvent e2{2, 0, 5, 1, 5};
    EXPECT_TRUE(e2.holds());
    QuotaEvent e3{2, 0, 4, 1, 5};
    EXPECT_FALSE(e3.holds());
}

TEST(Quotas, LeaveEnoughForEveryPhase) {
    for (long size = 1; size <= 200; ++size) {
        for (int c = 1; c <= 6; ++c) {
            for (int phase = 1; phase <= 2; ++phase) {
                const int n = 7;
                std::vector<long> q = phase_quotas(phase, size, c, n);
                long left = size;
                for (long x : q) left -= x;
                if (left < 0) continue;
                for (long x : q) EXPECT_GE(x, phase == 1 ? left : n * left) << size << " " << c;
            }
        }
    }
}

TEST(GoLeft, ScriptedSceneSeparatesAndConverts) {
    const Params params = Params::adaptive(4);
    GoLeftScene sc = goleft_scene(4, 400, {{0, 1}, {1, 0}}, 1, params);
    Oracle o(sc.vals);
    ImaginaryLedger L;
    MainResult r = run_main_from_goleft(Piece::whole(), sc.state, iota_agents(4), params, o, L);
    const MainStats& s = r.stats;
    ASSERT_GE(s.goleft_separations, 1);
    EXPECT_EQ(s.separations.front(), (std::vector<int>{0, 1}));
    EXPECT_GE(s.conversions_confirmed, 1);
    EXPECT_GE(s.conversions_nonvacuous, 1);
    EXPECT_GT(s.value_checks, 0);
    ASSERT_FALSE(s.quotas.empty());
    for (const QuotaEvent& q : s.quotas) EXPECT_TRUE(q.holds()) << q.chooser << " " << q.taken << " " << q.remaining;
    Allocation a = as_allocation(r.shares);
    EXPECT_TRUE(is_envy_free(a, sc.vals).ok);
    EXPECT_TRUE(conservation(a));
    EXPECT_TRUE(r.complete) << r.stopped;
}

namespace {

GoLeftHooks hooks_for(const Profile& vals, Oracle& o, ImaginaryLedger& L) {
    GoLeftHooks hooks;
    hooks.divide = [&o, &L](const Piece& p, const std::vector<int>& g) {
        std::map<int, Piece> out;
        if (g.size() == 1) {
            out[g.front()] = p;
            return out;
        }
        MainResult r = run_main(p, g, Params::adaptive(static_cast<int>(g.size())), o, L);
        for (int a : g) out[a] = r.shares[a];
        return out;
    };
    hooks.envy_free = [&vals](const std::map<int, Piece>& sh) {
        std::vector<Piece> v(vals.size());
        for (const auto& [a, p] : sh) v[a] = p;
        return is_envy_free(v, vals).ok;
    };
    return hooks;
}

}  // namespace

TEST(GoLeft, TooSmallWorkingSetIsInsufficient) {
    const Params params = Params::adaptive(4);
    GoLeftScene sc = goleft_scene(4, 400, {{0, 1}, {1, 0}}, 1, params);
    Oracle o(sc.vals);
    ImaginaryLedger L;
    GoLeftState st{sc.state.shares, sc.state.residue, Piece(), sc.state.snapshots};
    GoLeftOutcome g = goleft(st, {0}, iota_agents(4), o, hooks_for(sc.vals, o, L));
    EXPECT_EQ(g.status, GoLeftStatus::Insufficient) << g.reason;
    EXPECT_EQ(g.attachments, 0);
    EXPECT_EQ(g.state.shares, sc.state.shares);
    EXPECT_EQ(g.state.residue, sc.state.residue);
}

namespace {

// Three classes with one extractor each in a rotation; the fourth class has
// none. Two attachments leave a cycle through classes 0, 2, 1.
const GoLeftScene& rotation_scene() {
    static const GoLeftScene sc = goleft_scene(4, 8000, {{0, 1}, {1, 2}, {2, 0}}, 1, Params::adaptive(4));
    return sc;
}

}  // namespace

TEST(GoLeft, RotationReplayDirect) {
    const GoLeftScene& sc = rotation_scene();
    const Params params = Params::adaptive(4);
    Oracle o(sc.vals);
    ImaginaryLedger L;
    GoLeftHooks hooks = hooks_for(sc.vals, o, L);
    std::vector<int> working(sc.state.snapshots.size());
    for (std::size_t i = 0; i < working.size(); ++i) working[i] = static_cast<int>(i);
    GoLeftState st{sc.state.shares, sc.state.residue, Piece(), sc.state.snapshots};
    GoLeftOutcome g = goleft(st, working, iota_agents(4), o, hooks);
    ASSERT_EQ(g.status, GoLeftStatus::Separated) << g.reason;
    EXPECT_EQ(g.dominated, (std::vector<int>{0, 2}));
    EXPECT_EQ(g.exchanges, 1);
    EXPECT_EQ(g.attachments, 3);
    for (const QuotaEvent& q : g.quotas) EXPECT_TRUE(q.holds());
    // In every snapshot still in play agent 0 now holds class 2, whose
    // holders form the separated set.
    int in_play = 0;
    for (const Snapshot& s : g.state.snapshots) {
        if (s.holder.at(2) != 0) continue;
        ++in_play;
        EXPECT_EQ(s.history.at(2), (std::set<int>{0, 2}));
        EXPECT_EQ(s.holder.at(1), 2);
        EXPECT_EQ(s.holder.at(0), 1);
    }
    EXPECT_GT(in_play, 0);
}

TEST(GoLeft, RotationReplayThroughMain) {
    const GoLeftScene& sc = rotation_scene();
    const Params params = Params::adaptive(4);
    Oracle o(sc.vals);
    ImaginaryLedger L;
    MainResult r = run_main_from_goleft(Piece::whole(), sc.state, iota_agents(4), params, o, L);
    ASSERT_FALSE(r.stats.separations.empty());
    EXPECT_EQ(r.stats.separations.front(), (std::vector<int>{0, 2}));
    EXPECT_GE(r.stats.conversions_confirmed, 1);
    Allocation a = as_allocation(r.shares);
    EXPECT_TRUE(is_envy_free(a, sc.vals).ok);
    EXPECT_TRUE(conservation(a));
    EXPECT_TRUE(r.complete) << r.stopped;
}
