#include <doctest.h>

#include "excess/graph_gf.hpp"
#include "excess/oracle.hpp"
#include "excess/patchworks.hpp"
#include "excess/recurrence.hpp"

using namespace excess;

TEST_SUITE_BEGIN("graph_gf");

TEST_CASE("tree series") {
    Series t = tree_series(8);
    CHECK(t[0] == 0);
    CHECK(egf_count(t, 1) == 1);
    CHECK(egf_count(t, 2) == 2);
    CHECK(egf_count(t, 3) == 9);
    CHECK(egf_count(t, 4) == 64);
    CHECK(sub(t, exp(t).shifted(1)).is_zero());
}

TEST_CASE("unicycle series") {
    UnicycleSeries u = unicycle_series(8);
    CHECK(u.mv[1] == Rational(1, 2));
    CHECK(egf_count(u.v, 3) == 1);
    CHECK(egf_count(u.v, 4) == 15);
}

TEST_CASE("graded graph gf slices") {
    GradedGraphGF sg(5, 2);
    for (int n = 0; n <= 5; ++n) {
        unsigned long pairs = static_cast<unsigned long>(n) * (n - 1) / 2;
        for (int j = 0; j <= n + 2; ++j) {
            Rational expected = rational(binomial(pairs, static_cast<unsigned long>(j)),
                                         factorial(static_cast<unsigned long>(n)));
            CHECK(sg.coeff(n, j) == expected);
        }
    }
}

TEST_CASE("connected counts from the log pipeline") {
    ExcessIndexedSeries csg = connected_series(6, 3);
    CHECK(egf_count(csg.at(-1), 3) == 3);
    CHECK(egf_count(csg.at(-1), 4) == 16);
    CHECK(egf_count(csg.at(-1), 5) == 125);
    CHECK(egf_count(csg.at(0), 4) == 15);
    CHECK(egf_count(csg.at(1), 4) == 6);
    CHECK(egf_count(csg.at(2), 4) == 1);
    CHECK_THROWS_AS(connected_series(0, 2), std::invalid_argument);
    CHECK_THROWS_AS(connected_series(5, 40), std::invalid_argument);
}

TEST_CASE("all-graphs round trip through log and exp") {
    GradedGraphGF sg(6, 2);
    Bivariate back = exp(log(sg.bivariate()));
    CHECK(back == sg.bivariate());
}

TEST_CASE("integer recurrence") {
    CHECK(connected_recurrence_count(4, 3) == 16);
    CHECK(connected_recurrence_count(3, 3) == 1);
    GraphCountTable t5 = enum_graphs(5, {GraphPredicate::Connected});
    CHECK(connected_recurrence_count(5, 5) == t5.row(GraphPredicate::Connected)[5]);
    CHECK_THROWS_AS(connected_recurrence_count(4, 7), std::invalid_argument);
    CHECK_THROWS_AS(connected_recurrence_count(4, -1), std::invalid_argument);
}

TEST_CASE("positive-excess families") {
    const ExcessIndexedSeries& sgpos = cached_sgpos_series(2, 8);
    CHECK(sgpos.at(0) == Series::one(8));
    const ExcessIndexedSeries& csg = cached_connected_series(8, 2);
    CHECK(sgpos.at(1) == csg.at(1));
    Int diff = egf_count(sgpos.at(2), 8) - egf_count(csg.at(2), 8);
    CHECK(diff == binomial(8, 4) / 2 * 6 * 6);
}

TEST_CASE("majorant") {
    Series mg0 = mgpos_series(0, 16);
    CHECK(mg0 == Series::one(16));
    const ExcessIndexedSeries& sgpos = cached_sgpos_series(2, 10);
    for (int k = 1; k <= 2; ++k) {
        Series mg = mgpos_series(k, 10);
        for (int n = 0; n <= 10; ++n) CHECK(mg[n] >= sgpos.at(k)[n]);
    }
}

TEST_CASE("numerator polynomials in the tree basis") {
    WrightPolynomial q1 = wright_polynomial(1, 30);
    CHECK(q1.coeffs[0] == 0);
    Series t = tree_series(30);
    Series recon = mul(q1.evaluated_at(t), pow(sub(Series::one(30), t), Rational(-3)));
    CHECK(recon == cached_sgpos_series(1, 30).at(1));
    CHECK(wright_polynomial(1, 20).degree() == q1.degree());
    for (int k = 2; k <= 3; ++k) CHECK(wright_polynomial(k, 25).coeffs[0] == 0);

    CHECK(wright_product_polynomial(1, 0, 20) == std::vector<Rational>{Rational(1)});
    CHECK(wright_product_polynomial(2, 1, 20) == wright_polynomial(1, 20).coeffs);
    // q = 3, r = 2 forces the composition (1, 1)
    std::vector<Rational> q1sq(2 * q1.coeffs.size() - 1, Rational(0));
    WrightPolynomial q1_20 = wright_polynomial(1, 20);
    for (size_t i = 0; i < q1_20.coeffs.size(); ++i)
        for (size_t j = 0; j < q1_20.coeffs.size(); ++j)
            if (i + j < q1sq.size()) q1sq[i + j] += q1_20.coeffs[i] * q1_20.coeffs[j];
    std::vector<Rational> r32 = wright_product_polynomial(3, 2, 20);
    for (size_t i = 0; i < r32.size(); ++i) CHECK(r32[i] == (i < q1sq.size() ? q1sq[i] : Rational(0)));
}

TEST_CASE("composition identity") {
    CsgIdentityResult k4 = exact_csg_identity(4, 2);
    CHECK(k4.equal);
    CHECK(k4.connected_count == 1);
    CHECK(k4.composition_side == 1);

    CsgIdentityResult n8 = exact_csg_identity(8, 2);
    CHECK(n8.equal);
    CHECK(n8.connected_count == connected_recurrence_count(8, 10));

    CsgIdentityResult n12 = exact_csg_identity(12, 4);
    CHECK(n12.equal);
    CHECK(n12.connected_count == connected_recurrence_count(12, 16));
}

TEST_CASE("multicore series") {
    // excess 0 multicores: cycles of loops/double edges; first weights by hand
    Series mc0 = mcore_series(0, 4);
    CHECK(mc0[0] == 1);
    CHECK(mc0[1] == Rational(1, 2));  // the single loop
    const ExcessIndexedSeries& core = cached_core_series(4, 2);
    CHECK(egf_count(core.at(2), 4) == 1);  // the complete graph on 4 vertices
}

TEST_SUITE_END();
