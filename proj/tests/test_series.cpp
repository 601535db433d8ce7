#include <doctest.h>

#include "excess/bivariate.hpp"
#include "excess/graph_gf.hpp"
#include "excess/series.hpp"

using namespace excess;

TEST_SUITE_BEGIN("series");

TEST_CASE("product truncates at the smaller order") {
    Series one_plus = add(Series::one(8), Series::monomial(8, 1, Rational(1)));
    Series one_minus = sub(Series::one(8), Series::monomial(8, 1, Rational(1)));
    Series prod = mul(one_plus, one_minus);
    CHECK(prod[0] == 1);
    CHECK(prod[1] == 0);
    CHECK(prod[2] == -1);
    for (int n = 3; n <= 8; ++n) CHECK(prod[n] == 0);

    Series geometric(8);
    for (int n = 0; n <= 8; ++n) geometric.at(n) = 1;
    CHECK(mul(geometric, one_minus) == Series::one(8));

    Series z1 = Series::monomial(1, 1, Rational(1));
    CHECK(mul(z1, z1).is_zero());
    CHECK(mul(z1, z1).order() == 1);
}

TEST_CASE("exp") {
    Series z = Series::monomial(10, 1, Rational(1));
    Series e = exp(z);
    for (int n = 0; n <= 10; ++n)
        CHECK(e[n] == rational(Int(1), factorial(static_cast<unsigned long>(n))));
    CHECK(exp(Series::zero(6)) == Series::one(6));
    Series log_arg = add(Series::one(10), z);
    CHECK(exp(log(log_arg)) == log_arg);
    Series bad = Series::one(4);
    CHECK_THROWS_AS(exp(bad), std::invalid_argument);
}

TEST_CASE("log") {
    Series geometric(10);
    for (int n = 0; n <= 10; ++n) geometric.at(n) = 1;
    Series lg = log(geometric);
    CHECK(lg[0] == 0);
    for (int n = 1; n <= 10; ++n) CHECK(lg[n] == Rational(1, n));
    CHECK(log(Series::one(5)).is_zero());
    Series z2 = Series::monomial(9, 2, Rational(1));
    CHECK(log(exp(z2)) == z2);
    CHECK_THROWS_AS(log(Series::zero(4)), std::invalid_argument);
}

TEST_CASE("rational powers") {
    Series base = sub(Series::one(12), Series::monomial(12, 1, Rational(1)));
    Series sqrt_inv = pow(base, Rational(-1, 2));
    for (int n = 0; n <= 12; ++n)
        CHECK(sqrt_inv[n] == rational(binomial(2ul * n, static_cast<unsigned long>(n)),
                                      pow_int(Int(4), static_cast<unsigned long>(n))));
    CHECK(pow(base, Rational(0)) == Series::one(12));
    CHECK(mul(sqrt_inv, sqrt_inv) == pow(base, Rational(-1)));
    Series not_unital = Series::monomial(4, 1, Rational(1));
    CHECK_THROWS_AS(pow(not_unital, Rational(1, 2)), std::invalid_argument);
}

TEST_CASE("division via reciprocal") {
    Series denom = sub(Series::one(10), Series::monomial(10, 1, Rational(2)));
    Series recip = inverse(denom);
    CHECK(mul(denom, recip) == Series::one(10));
}

TEST_CASE("composition") {
    Series geometric(10);
    for (int n = 0; n <= 10; ++n) geometric.at(n) = 1;
    Series z2 = Series::monomial(10, 2, Rational(1));
    Series composed = compose(geometric, z2);
    for (int n = 0; n <= 10; ++n) CHECK(composed[n] == (n % 2 == 0 ? 1 : 0));
    CHECK_THROWS_AS(compose(geometric, Series::one(10)), std::invalid_argument);
}

TEST_CASE("bivariate extraction") {
    // e^x embedded with constant-in-z slices
    Bivariate ex(4, 3);
    for (int j = 0; j <= 4; ++j)
        ex.at(0, j) = rational(Int(1), factorial(static_cast<unsigned long>(j)));
    CHECK(extract(ex, 2)[0] == Rational(1, 2));
    CHECK(extract(ex, 2)[1] == 0);
    CHECK_THROWS_AS(extract(ex, 5), std::out_of_range);

    // the x^0 slice of the half-integer power collapses to the univariate one
    int N = 8;
    Series t = tree_series(N);
    Bivariate f(2, N);
    f.at(0, 0) = 1;
    for (int j = 0; j <= 2; ++j) {
        Rational sj(2);
        sj /= Rational(factorial(static_cast<unsigned long>(j) + 2));
        for (int n = 1; n <= N; ++n) f.at(n, j) -= t[n] * sj;
    }
    Series slice0 = extract(pow(f, Rational(-1, 2)), 0);
    Series expected = pow(sub(Series::one(N), t), Rational(-1, 2));
    CHECK(slice0 == expected);
}

TEST_CASE("bivariate exp/log round trip") {
    Bivariate f(3, 6);
    f.at(1, 1) = Rational(1, 3);
    f.at(2, 0) = Rational(-2);
    f.at(1, 2) = Rational(5, 7);
    Bivariate g = exp(f);
    CHECK(log(g) == f);
    Bivariate p = pow(g, Rational(2));
    CHECK(p == mul(g, g));
}

TEST_CASE("egf counts must be integral") {
    Series t = tree_series(6);
    CHECK(egf_count(t, 3) == 9);
    Series half = Series::monomial(4, 1, Rational(1, 3));
    CHECK_THROWS_AS(egf_count(half, 1), std::domain_error);
}

TEST_SUITE_END();
