#include "support.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace tinpc;
using namespace tinpc::test;

namespace {

std::size_t vertex(const PotentialGraph& g, std::size_t user, std::size_t state) {
    for (std::size_t v = 0; v < g.vertices().size(); ++v)
        if (g.vertices()[v].user == user && g.vertices()[v].state == state) return v;
    throw std::out_of_range("no such vertex");
}

Rational recomputed_length(const PotentialGraph& g, const std::vector<std::size_t>& cycle) {
    Rational s = 0;
    for (std::size_t i = 0; i < cycle.size(); ++i) s += *g.length(cycle[i], cycle[(i + 1) % cycle.size()]);
    return s;
}

}  // namespace

TEST(BuildFull, TwoStateReceiverShape) {
    const CompoundChannel ch = ch_b();
    const PotentialGraph g = build_full(ch, gd({"0.5", "0.5"}));
    ASSERT_EQ(g.vertices().size(), 4u);
    EXPECT_EQ(g.edges().size(), 12u);
    const std::size_t v11 = vertex(g, 0, 0), v12 = vertex(g, 0, 1), v21 = vertex(g, 1, 0), u = g.source();
    // intra-user
    EXPECT_EQ(*g.length(v11, v12), 0);
    EXPECT_EQ(*g.length(v12, v11), 0);
    // cross-user: alpha_kk - alpha_kj - d_k of the tail state
    EXPECT_EQ(*g.length(v11, v21), q("0"));
    EXPECT_EQ(*g.length(v12, v21), q("0.1"));
    EXPECT_EQ(*g.length(v21, v11), q("0"));
    EXPECT_EQ(*g.length(v21, v12), q("0"));
    // into u
    EXPECT_EQ(*g.length(v11, u), q("0.5"));
    EXPECT_EQ(*g.length(v12, u), q("0.3"));
    EXPECT_EQ(*g.length(v21, u), q("0.5"));
    // out of u
    for (std::size_t v : {v11, v12, v21}) EXPECT_EQ(*g.length(u, v), 0);
    EXPECT_EQ(g.label(v12), "v1.2");
    EXPECT_EQ(g.label(u), "u");
}

TEST(BuildFull, SymmetricChannelEdgeLengths) {
    const PotentialGraph g = build_full(ch_sym4(), gd({"1", "1", "1", "1"}));
    for (const auto& e : g.edges()) {
        if (e.from == g.source()) EXPECT_EQ(e.length, 0);
        else if (e.to == g.source()) EXPECT_EQ(e.length, 1);
        else EXPECT_EQ(e.length, 0);
    }
}

TEST(BuildFull, SingleUserCycle) {
    const PotentialGraph g = build_full(RegularChannel(mat({{"1"}})), gd({"0.4"}));
    ASSERT_EQ(g.vertices().size(), 2u);
    EXPECT_EQ(*g.length(0, 1) + *g.length(1, 0), q("0.6"));
}

TEST(BuildFull, InvariantsOnRandomChannels) {
    Random rnd(21);
    for (int n = 0; n < 100; ++n) {
        const CompoundChannel ch = rnd.channel(rnd.uniform(1, 4), 3);
        const PotentialGraph g = build_full(ch, rnd.target(ch, true));
        const std::size_t V = ch.total_states() + 1;
        ASSERT_EQ(g.vertices().size(), V);
        EXPECT_EQ(g.edges().size(), V * (V - 1));
        for (const auto& e : g.edges()) {
            if (e.from == g.source()) EXPECT_EQ(e.length, 0);
            const auto& a = g.vertices()[e.from];
            const auto& b = g.vertices()[e.to];
            if (a.user && b.user && *a.user == *b.user) EXPECT_EQ(e.length, 0);
        }
    }
}

TEST(BuildFull, RejectsWrongDimension) {
    EXPECT_THROW(build_full(ch_c(), gd({"1", "1"})), std::invalid_argument);
    EXPECT_THROW(build_reduced(ch_c(), gd({"1", "1"})), std::invalid_argument);
}

TEST(BuildReduced, CompoundExampleEdges) {
    const PotentialGraph g = build_reduced(ch_b(), gd({"0.5", "0.5"}));
    ASSERT_EQ(g.vertices().size(), 3u);
    EXPECT_EQ(*g.length(0, 1), 0);
    EXPECT_EQ(*g.length(1, 0), 0);
    EXPECT_EQ(*g.length(0, g.source()), q("0.3"));
    EXPECT_EQ(*g.length(1, g.source()), q("0.5"));
    EXPECT_EQ(g.label(1), "v2");
}

TEST(BuildReduced, WalkthroughChannelCrossEdges) {
    const PotentialGraph g = build_reduced(ch_c(), gd({"0.5", "0.6", "0.7"}));
    EXPECT_EQ(*g.length(0, 1), q("1.1"));
    EXPECT_EQ(*g.length(0, 2), q("0.5"));
    EXPECT_EQ(*g.length(1, 0), q("-0.1"));
    EXPECT_EQ(*g.length(1, 2), q("-0.1"));
    EXPECT_EQ(*g.length(2, 0), q("0.4"));
    EXPECT_EQ(*g.length(2, 1), q("0.3"));
}

TEST(BuildReduced, EqualsFullGraphOfCounterpart) {
    Random rnd(22);
    for (int n = 0; n < 100; ++n) {
        const CompoundChannel ch = rnd.channel(rnd.uniform(1, 4), 3);
        const GdofTuple d = rnd.target(ch, true);
        const PotentialGraph a = build_reduced(ch, d);
        const PotentialGraph b = build_full(regular_counterpart(ch), d);
        ASSERT_EQ(a.vertices().size(), b.vertices().size());
        for (std::size_t x = 0; x < a.vertices().size(); ++x)
            for (std::size_t y = 0; y < a.vertices().size(); ++y)
                if (x != y) EXPECT_EQ(a.length(x, y), b.length(x, y));
    }
}

TEST(ShortestPaths, WalkthroughInitialAllocation) {
    const auto sp = shortest_paths(build_reduced(ch_c(), gd({"0.5", "0.6", "0.7"})));
    ASSERT_TRUE(sp.feasible);
    EXPECT_EQ(sp.l_dst, qs({"-0.1", "0", "-0.1"}));
}

TEST(ShortestPaths, ThreeUserRegionExampleMatchesPathEnumeration) {
    const GdofTuple d = gd({"1", "1", "1"});
    const auto sp = shortest_paths(build_reduced(ch_a(), d));
    ASSERT_TRUE(sp.feasible);
    EXPECT_EQ(sp.l_dst, qs({"-0.4", "-0.2", "0"}));
    const auto brute = enumerate_paths(ch_a(), d);
    ASSERT_FALSE(brute.negative_cycle);
    EXPECT_EQ(brute.l_dst, sp.l_dst);
}

TEST(ShortestPaths, InfeasibleTargetYieldsNegativeCircuit) {
    const PotentialGraph g = build_reduced(ch_a(), gd({"2", "2", "0"}));
    const auto sp = shortest_paths(g);
    ASSERT_FALSE(sp.feasible);
    ASSERT_GE(sp.negative_cycle.size(), 2u);
    EXPECT_LT(sp.cycle_length, 0);
    EXPECT_EQ(recomputed_length(g, sp.negative_cycle), sp.cycle_length);
    // the v1 <-> v2 circuit itself has length -2
    EXPECT_EQ(*g.length(0, 1) + *g.length(1, 0), q("-2"));
}

TEST(ShortestPaths, AgreesWithExhaustivePathEnumeration) {
    Random rnd(23);
    int feasible = 0, infeasible = 0;
    for (int n = 0; n < 150; ++n) {
        const CompoundChannel ch = rnd.channel(rnd.uniform(1, 3), 2);
        const GdofTuple d = rnd.target(ch, true);
        const auto brute = enumerate_paths(ch, d);
        const auto full = shortest_paths(build_full(ch, d));
        const auto reduced = shortest_paths(build_reduced(ch, d));
        ASSERT_EQ(full.feasible, !brute.negative_cycle);
        ASSERT_EQ(reduced.feasible, full.feasible);
        if (full.feasible) {
            ++feasible;
            EXPECT_EQ(full.l_dst, brute.l_dst);
            EXPECT_EQ(reduced.l_dst, brute.l_dst);
            for (const auto& states : brute.state_dst)
                for (const auto& x : states) EXPECT_EQ(x, states.front());
        } else {
            ++infeasible;
        }
    }
    EXPECT_GT(feasible, 10);
    EXPECT_GT(infeasible, 10);
}

TEST(ShortestPaths, FullAndReducedAgreeAndWitnessesAreNegative) {
    Random rnd(24);
    for (int n = 0; n < 300; ++n) {
        const CompoundChannel ch = rnd.channel(rnd.uniform(1, 4), 3);
        const GdofTuple d = rnd.target(ch, true);
        const PotentialGraph gf = build_full(ch, d);
        const PotentialGraph gr = build_reduced(ch, d);
        const auto full = shortest_paths(gf);
        const auto reduced = shortest_paths(gr);
        ASSERT_EQ(full.feasible, reduced.feasible);
        if (full.feasible) {
            EXPECT_EQ(full.l_dst, reduced.l_dst);
            for (const auto& x : full.l_dst) EXPECT_LE(x, 0);
        } else {
            EXPECT_LT(recomputed_length(gf, full.negative_cycle), 0);
            EXPECT_LT(recomputed_length(gr, reduced.negative_cycle), 0);
            EXPECT_EQ(recomputed_length(gr, reduced.negative_cycle), reduced.cycle_length);
        }
    }
}

TEST(EdgeList, OneLinePerEdgeWithExactLengths) {
    std::ostringstream os;
    write_edge_list(os, build_reduced(ch_c(), gd({"0.5", "0.6", "0.7"})));
    const std::string s = os.str();
    EXPECT_NE(s.find("v1 v2 1.1\n"), std::string::npos);
    EXPECT_NE(s.find("v2 v1 -0.1\n"), std::string::npos);
    EXPECT_NE(s.find("u v3 0\n"), std::string::npos);
    EXPECT_EQ(std::count(s.begin(), s.end(), '\n'), 12);

    std::ostringstream thirds;
    write_edge_list(thirds, build_reduced(RegularChannel(mat({{"1/3"}})), gd({"0"})));
    EXPECT_NE(thirds.str().find("v1 u 1/3"), std::string::npos);
}
