#include <doctest.h>

#include "excess/graph_gf.hpp"
#include "excess/oracle.hpp"

using namespace excess;

TEST_SUITE_BEGIN("oracle");

TEST_CASE("three vertices") {
    GraphCountTable t = enum_graphs(3, {GraphPredicate::All, GraphPredicate::Connected});
    CHECK(t.total(GraphPredicate::All) == 8);
    const auto& conn = t.row(GraphPredicate::Connected);
    CHECK(conn[0] == 0);
    CHECK(conn[1] == 0);
    CHECK(conn[2] == 3);
    CHECK(conn[3] == 1);
}

TEST_CASE("four vertices") {
    GraphCountTable t = enum_graphs(
        4, {GraphPredicate::All, GraphPredicate::Connected, GraphPredicate::MinDegree2,
            GraphPredicate::Unicyclic});
    CHECK(t.total(GraphPredicate::All) == 64);
    const auto& conn = t.row(GraphPredicate::Connected);
    CHECK(conn[3] == 16);  // trees: 4^2
    CHECK(conn[4] == 15);
    CHECK(conn[5] == 6);
    CHECK(conn[6] == 1);
    CHECK(t.total(GraphPredicate::Connected) == 38);
    CHECK(t.row(GraphPredicate::MinDegree2)[4] == 3);  // the 4-cycles
    CHECK(t.row(GraphPredicate::Unicyclic)[4] == 15);
    for (size_t m = 0; m < conn.size(); ++m)
        CHECK(conn[m] <= t.row(GraphPredicate::All)[m]);
}

TEST_CASE("cost guards") {
    CHECK_THROWS_AS(enum_graphs(9, {GraphPredicate::All}), std::invalid_argument);
    CHECK_THROWS_AS(enum_graphs(8, {GraphPredicate::All}), std::invalid_argument);  // opt-in only
    CHECK_THROWS_AS(enum_multigraphs(5, 2), std::invalid_argument);
    CHECK_THROWS_AS(enum_multigraphs(2, 6), std::invalid_argument);
}

TEST_CASE("multigraph totals") {
    // weighted loopless/double-free multigraphs agree with plain graph counts
    MultigraphTally t32 = enum_multigraphs(3, 2);
    CHECK(t32.loopless_simple == rational(Int(3), factorial(3)));
    MultigraphTally t33 = enum_multigraphs(3, 3);
    CHECK(t33.loopless_simple == rational(Int(1), factorial(3)));

    // single loop: the only multicore with one vertex and one edge, weight 1/2
    MultigraphTally t11 = enum_multigraphs(1, 1);
    CHECK(t11.min_degree2 == Rational(1, 2));
    UnicycleSeries u = unicycle_series(2);
    CHECK(t11.min_degree2 == u.mv[1]);

    // the two-edge path on three labeled vertices has exactly 8 preimages
    int preimages = 0;
    for_each_multigraph(3, 2, [&](const SmallMultigraph& g) {
        if (has_loop(g) || has_double_edge(g)) return;
        auto lo = [](const MultigraphEdge& e) { return std::min(e.tail, e.head); };
        auto hi = [](const MultigraphEdge& e) { return std::max(e.tail, e.head); };
        bool path12_23 = (lo(g.edges[0]) == 1 && hi(g.edges[0]) == 2 && lo(g.edges[1]) == 2 &&
                          hi(g.edges[1]) == 3) ||
                         (lo(g.edges[0]) == 2 && hi(g.edges[0]) == 3 && lo(g.edges[1]) == 1 &&
                          hi(g.edges[1]) == 2);
        if (path12_23) preimages++;
    });
    CHECK(preimages == 8);
}

TEST_CASE("multigraph predicates") {
    SmallMultigraph g;
    g.n = 2;
    g.edges = {{1, 2}, {2, 1}};
    CHECK(has_double_edge(g));
    CHECK(!has_loop(g));
    CHECK(is_connected(g));
    CHECK(min_degree(g) == 2);
    CHECK(!all_components_positive_excess(g));  // excess 0

    SmallMultigraph loops;
    loops.n = 1;
    loops.edges = {{1, 1}, {1, 1}};
    CHECK(has_loop(loops));
    CHECK(min_degree(loops) == 4);
    CHECK(all_components_positive_excess(loops));  // one vertex, two edges
}

TEST_SUITE_END();
