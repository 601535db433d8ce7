#include <doctest.h>

#include <cmath>

#include "excess/asymptotics.hpp"
#include "excess/graph_gf.hpp"

using namespace excess;

TEST_SUITE_BEGIN("asymptotics");

TEST_CASE("saddle solver") {
    SaddlePoint one = solve_saddle(1.0);
    CHECK(one.lambda == doctest::Approx(3.83).epsilon(0.01));
    CHECK(one.lambda_residual < 1e-12);
    CHECK(one.saddle_residuals[0] < 1e-8);
    CHECK(one.saddle_residuals[1] < 1e-8);

    SaddlePoint half = solve_saddle(0.5);
    CHECK(half.lambda == doctest::Approx(2.58).epsilon(0.01));

    // the defining map tends to 1 as lambda -> 0, so tiny ratios need tiny lambda
    SaddlePoint tiny = solve_saddle(1e-6);
    CHECK(tiny.lambda < 0.01);
    CHECK(tiny.lambda_residual < 1e-12);

    SaddlePoint big = solve_saddle(20.0);  // beyond the default bracket end
    CHECK(big.lambda_residual < 1e-12);
    CHECK(big.lambda > 30.0);

    CHECK_THROWS_AS(solve_saddle(0.0), std::domain_error);
    CHECK_THROWS_AS(solve_saddle(-1.0), std::domain_error);
}

TEST_CASE("numeric tree function") {
    // truncation of the series oracle is ~(e z)^N, so keep z away from 1/e
    Series t = tree_series(64);
    for (double z : {0.05, 0.15, 0.25}) {
        double horner = 0;
        for (int n = 64; n >= 0; --n) horner = horner * z + t[n].get_d();
        CHECK(numeric_tree_fn(z) == doctest::Approx(horner).epsilon(1e-9));
    }
    CHECK(numeric_tree_fn(0.0) == 0.0);
    CHECK_THROWS_AS(numeric_tree_fn(0.5), std::domain_error);
}

TEST_CASE("log magnitudes") {
    LogMagnitude big = LogMagnitude::from_int(pow_int(Int(10), 50));
    CHECK(big.sign == 1);
    CHECK(big.log10_abs() == doctest::Approx(50.0).epsilon(1e-12));
    LogMagnitude r = LogMagnitude::from_rational(Rational(-3, 4));
    CHECK(r.sign == -1);
    CHECK(r.to_double() == doctest::Approx(-0.75));
    LogMagnitude prod = big * r;
    CHECK(prod.sign == -1);
    CHECK((big / big).log_abs == doctest::Approx(0.0));
    CHECK(LogMagnitude::from_int(Int(0)).sign == 0);
    CHECK(r < big);
}

TEST_CASE("dominant term") {
    ConnectedCountTable table(40, 80);
    // frozen from the exact pipeline: r(40) = 0.785901..., i.e. 1 - 9.07/n + O(1/n^2)
    double r40 = exact_over_dominant(table, 40, 40);
    CHECK(r40 == doctest::Approx(0.7859013).epsilon(1e-4));
    CHECK(dominant_term_log(40, 40).sign == 1);
    // large inputs stay in log space without overflow
    LogMagnitude huge = dominant_term_log(1000, 1000);
    CHECK(std::isfinite(huge.log10_abs()));
    CHECK(huge.log10_abs() > 1000);
    CHECK_THROWS_AS(dominant_term_log(10, 0), std::invalid_argument);
}

TEST_CASE("theta form") {
    LogMagnitude theta = theta_form_log(20, 20);
    CHECK(theta.sign == 1);
    CHECK(std::isfinite(theta.log_abs));
}

TEST_CASE("identity pairs") {
    IdentityPair p1 = exponential_term_identity(40, 40);
    CHECK(p1.relative_gap() < 1e-10);
    IdentityPair p2 = polynomial_term_identity(40, 40);
    CHECK(p2.relative_gap() < 1e-8);
}

TEST_CASE("hessian") {
    SaddlePoint sp = solve_saddle(1.0);
    auto closed = hessian(sp, 1.0);
    auto fd = hessian_fd(sp);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            CHECK(closed[i][j] == doctest::Approx(fd[i][j]).epsilon(1e-5));
    CHECK(closed[0][0] * closed[1][1] - closed[0][1] * closed[1][0] > 0);
}

TEST_CASE("s sequence") {
    CHECK(s_value(1, 0, 7).value == 1);
    CHECK(s_value(2, 0, 2).value == Rational(7, 3));
    CHECK(s_value(2, 47, 50).value == 0);
    CHECK(s_value(4, 7, 7).value == 0);
    // weakly decreasing in d
    Rational prev = s_value(3, 0, 6).value;
    for (int d = 1; d <= 6; ++d) {
        Rational cur = s_value(3, d, 6).value;
        CHECK(cur <= prev);
        prev = cur;
    }
    std::vector<Int> nums = s_numerators_all_q(6, 6);
    for (int q = 1; q <= 6; ++q)
        CHECK(rational(nums[static_cast<size_t>(q)], double_factorial_odd(6)) ==
              s_value(q, 0, 6).value);
    CHECK_THROWS_AS(s_value(0, 0, 3), std::invalid_argument);
}

TEST_CASE("c1 fit interface") {
    CHECK_THROWS_AS(c1_fit(Rational(1), {20, 40}), std::invalid_argument);
    CHECK_THROWS_AS(c1_fit(Rational(1, 3), {20, 40, 80}), std::invalid_argument);
    ConnectedCountTable table(24, 48);
    double fit = c1_fit(Rational(1), {12, 16, 24}, &table);
    CHECK(std::isfinite(fit));
}

TEST_CASE("term magnitudes") {
    TermMagnitudes tm = term_magnitudes(12, 1, 1);
    CHECK(tm.composition.size() == 1);
    CHECK(tm.composition[0].q == 1);
    CHECK(tm.composition[0].r == 0);
    CHECK(tm.slices.size() == 2);

    TermMagnitudes tm3 = term_magnitudes(20, 3, 3);
    Rational lead, tail(0);
    for (const auto& row : tm3.composition) {
        if (row.q == 1)
            lead = row.value;
        else
            tail += abs(row.value);
    }
    CHECK(lead > tail);
    CHECK(tm3.slices[1].log10_ratio < 0);
}

TEST_SUITE_END();
