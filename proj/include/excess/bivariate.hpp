#pragma once

#include <vector>

#include "excess/series.hpp"

namespace excess {

// Truncated series in (z, x): x-degrees 0..M, each carrying a z-series of
// common order N. Stored z-major (per z-degree an x-polynomial) so the
// exp/log/pow recurrences can run along z with x-polynomials as the
// coefficient ring.
class Bivariate {
public:
    Bivariate(int x_order, int z_order);

    static Bivariate one(int x_order, int z_order) {
        Bivariate b(x_order, z_order);
        b.at(0, 0) = 1;
        return b;
    }

    int x_order() const { return x_order_; }
    int z_order() const { return z_order_; }

    const Rational& coeff(int z_deg, int x_deg) const {
        return rows_[static_cast<size_t>(z_deg)][static_cast<size_t>(x_deg)];
    }
    Rational& at(int z_deg, int x_deg) {
        return rows_[static_cast<size_t>(z_deg)][static_cast<size_t>(x_deg)];
    }

    friend bool operator==(const Bivariate& a, const Bivariate& b) {
        return a.x_order_ == b.x_order_ && a.rows_ == b.rows_;
    }

private:
    int x_order_;
    int z_order_;
    std::vector<std::vector<Rational>> rows_;  // rows_[n][j] = [z^n x^j]
};

/// The z-series coefficient of x^j; j beyond the x-order is an error.
Series extract(const Bivariate& f, int j);

Bivariate add(const Bivariate& a, const Bivariate& b);
Bivariate sub(const Bivariate& a, const Bivariate& b);
Bivariate mul(const Bivariate& a, const Bivariate& b);
Bivariate scaled(const Bivariate& a, const Rational& c);

/// e^f for f whose [z^0] slice vanishes identically.
Bivariate exp(const Bivariate& f);

/// log f for f whose [z^0] slice is the constant polynomial 1.
Bivariate log(const Bivariate& f);

/// f^alpha = exp(alpha log f); requires [z^0] slice 1.
Bivariate pow(const Bivariate& f, const Rational& alpha);

/// Embed a univariate z-series as the x^0 slice.
Bivariate from_series(const Series& f, int x_order);

/// Multiply every slice by a univariate z-series.
Bivariate mul_series(const Bivariate& a, const Series& f);

}  // namespace excess
