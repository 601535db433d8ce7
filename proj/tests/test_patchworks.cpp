#include <doctest.h>

#include "excess/oracle.hpp"
#include "excess/patchworks.hpp"

using namespace excess;

TEST_SUITE_BEGIN("patchworks");

TEST_CASE("excess zero star is one") {
    PatchworkPolynomial p0 = enumerate_patchworks_no_isolated(0);
    CHECK(p0.coeff(0, 0) == 1);
    CHECK(p0.z_degree() == 0);
    CHECK(p0.u_degree() == 0);
}

TEST_CASE("excess one star matches the hand enumeration") {
    PatchworkPolynomial p1 = enumerate_patchworks_no_isolated(1);
    // z^1: two loops on one vertex
    CHECK(p1.coeff(1, 2) == Rational(1, 8));
    CHECK(p1.coeff(1, 1) == 0);
    // z^2: loop + double edge sharing the vertex (x2), and the triple edge
    CHECK(p1.coeff(2, 2) == Rational(1, 2));
    CHECK(p1.coeff(2, 3) == Rational(1, 12));
    // z^3: two double edges sharing one vertex
    CHECK(p1.coeff(3, 2) == Rational(1, 8));
    CHECK(p1.coeff(3, 3) == 0);
    CHECK(p1.z_degree() == 3);  // the n = 4 boundary cell is empty
}

TEST_CASE("vertex cap stability") {
    PatchworkPolynomial base = enumerate_patchworks_no_isolated(1);
    CHECK(base.equal_padded(enumerate_patchworks_no_isolated(1, 6)));
    CHECK(base.equal_padded(enumerate_patchworks_no_isolated(1, 8)));
}

TEST_CASE("isolated-part closed form") {
    PatchworkPolynomial p0 = patchwork_isolated_closed_form(4, 6);
    CHECK(p0.coeff(1, 1) == Rational(1, 2));   // single loop
    CHECK(p0.coeff(2, 1) == Rational(1, 4));   // single double edge
    CHECK(p0.coeff(2, 2) == Rational(1, 8));   // two disjoint loops
    CHECK(p0.coeff(3, 2) == Rational(1, 8));   // loop + disjoint double edge
    CHECK(p0.coeff(4, 2) == Rational(1, 32));  // two disjoint double edges
    CHECK(p0.coeff(4, 4) == Rational(1, 384)); // four disjoint loops
}

TEST_CASE("full enumeration factors through the isolated part") {
    CHECK(patchwork_factorization_check(0, 4));
    CHECK(patchwork_factorization_check(1, 3));
    CHECK(patchwork_factorization_check(2, 2));
    CHECK_THROWS_AS(patchwork_factorization_check(3, 2), std::invalid_argument);
    CHECK_THROWS_AS(patchwork_factorization_check(1, 5), std::invalid_argument);
}

TEST_CASE("patchwork objects satisfy the structural invariants") {
    int visited = 0;
    Rational weighted(0);
    for_each_patchwork(1, 2, [&](const PatchworkStruct& pw) {
        visited++;
        CHECK(pw.excess() == 1);
        CHECK(pw.union_graph.n == 2);
        // every part is a loop or a double edge of the union, and edge
        // labels shared across parts always connect the same vertices
        std::uint32_t vertex_cover = 0, edge_cover = 0;
        for (const auto& part : pw.parts) {
            if (part.vertices.size() == 1) {
                REQUIRE(part.edge_labels.size() == 1);
                const auto& e = pw.union_graph.edges[static_cast<size_t>(part.edge_labels[0] - 1)];
                CHECK(e.tail == e.head);
                CHECK(e.tail == part.vertices[0]);
            } else {
                REQUIRE(part.vertices.size() == 2);
                REQUIRE(part.edge_labels.size() == 2);
                for (int label : part.edge_labels) {
                    const auto& e = pw.union_graph.edges[static_cast<size_t>(label - 1)];
                    CHECK(std::min(e.tail, e.head) == part.vertices[0]);
                    CHECK(std::max(e.tail, e.head) == part.vertices[1]);
                }
            }
            for (int v : part.vertices) vertex_cover |= 1u << v;
            for (int label : part.edge_labels) edge_cover |= 1u << label;
        }
        CHECK(vertex_cover == 0b110u);
        CHECK(edge_cover == 0b1110u);
        // distinct parts
        for (size_t i = 0; i < pw.parts.size(); ++i)
            for (size_t j = i + 1; j < pw.parts.size(); ++j)
                CHECK((pw.parts[i].vertices != pw.parts[j].vertices ||
                       pw.parts[i].edge_labels != pw.parts[j].edge_labels));
        weighted += Rational(1);
    });
    CHECK(visited > 0);
    // the weighted total reproduces the full-enumeration coefficient row
    PatchworkPolynomial full = patchwork_full_enumeration(1, 2);
    Rational row_total(0);
    for (int t = 0; t <= full.u_degree(); ++t) row_total += full.coeff(2, t);
    Rational expected = weighted;
    expected /= Rational(pow_int(Int(2), 3) * factorial(3) * factorial(2));
    CHECK(row_total == expected);
}

TEST_CASE("min-degree-3 scan") {
    Mindeg3Scan scan = scan_mindeg3(1);
    CHECK(scan.max_n <= 2);
    CHECK(scan.max_m <= 3);
    Int double_loop_count(0), two_vertex_count(0);
    for (const auto& cell : scan.cells) {
        if (cell.n == 1 && cell.m == 2) double_loop_count = cell.count;
        if (cell.n == 2 && cell.m == 3) two_vertex_count = cell.count;
    }
    CHECK(double_loop_count == 1);   // the double loop
    CHECK(two_vertex_count == 20);   // 8 triple edges + 12 loop-loop-edge forms

    std::vector<SmallMultigraph> list = mindeg3_multigraphs(1);
    bool has_triple_edge = false;
    for (const auto& g : list) {
        CHECK(g.n <= 2);
        CHECK(g.m() <= 3);
        if (g.n == 2 && g.m() == 3 && !has_loop(g) && has_double_edge(g)) has_triple_edge = true;
    }
    CHECK(has_triple_edge);
    CHECK_THROWS_AS(scan_mindeg3(3), std::invalid_argument);
}

TEST_CASE("core counts against the scan") {
    const ExcessIndexedSeries& core = cached_core_series(5, 2);
    CHECK(egf_count(core.at(0), 3) == 1);   // the triangle
    CHECK(egf_count(core.at(0), 5) == 12);  // the 5-cycles
    GraphCountTable t5 = enum_graphs(5, {GraphPredicate::MinDegree2});
    for (int k = 0; k <= 2; ++k)
        CHECK(egf_count(core.at(k), 5) == t5.row(GraphPredicate::MinDegree2)[static_cast<size_t>(5 + k)]);
}

TEST_CASE("patchwork route to the positive-excess family") {
    for (int k = 0; k <= 2; ++k) CHECK_NOTHROW(sgpos_via_patchworks(k, 10));
}

TEST_CASE("slice sum reassembles sgpos") {
    const ExcessIndexedSeries& sgpos = cached_sgpos_series(2, 10);
    for (int k = 0; k <= 2; ++k) {
        Series total(10);
        for (int ell = 0; ell <= k; ++ell) total = add(total, sgpos_patchwork_slice(k, ell, 10));
        CHECK(total == sgpos.at(k));
    }
}

TEST_SUITE_END();
