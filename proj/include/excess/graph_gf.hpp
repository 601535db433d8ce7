#pragma once

#include <stdexcept>
#include <vector>

#include "excess/bivariate.hpp"
#include "excess/series.hpp"

namespace excess {

/// Raised when an exact identity that must hold fails, e.g. a nonzero
/// remainder in a basis rewrite or a dual-pipeline mismatch.
struct identity_violation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A family of z-series indexed by excess k, k_min <= k <= k_max.
// For graph families, n! [z^n] of entry k is a non-negative integer and
// entry k collects the graphs with m = n + k edges.
class ExcessIndexedSeries {
public:
    ExcessIndexedSeries(int k_min, int k_max, int z_order)
        : k_min_(k_min), series_(static_cast<size_t>(k_max - k_min + 1), Series(z_order)) {
        if (k_max < k_min || k_min < -1) throw std::invalid_argument("bad excess range");
    }

    int k_min() const { return k_min_; }
    int k_max() const { return k_min_ + static_cast<int>(series_.size()) - 1; }
    int z_order() const { return series_.front().order(); }

    const Series& at(int k) const { return series_.at(static_cast<size_t>(k - k_min_)); }
    Series& at(int k) { return series_.at(static_cast<size_t>(k - k_min_)); }

private:
    int k_min_;
    std::vector<Series> series_;
};

// All-graphs GF: slice n is (1+w)^{binom(n,2)}, kept to w-degree
// n_max + k_max uniformly so that the logarithm is exact on the grid.
class GradedGraphGF {
public:
    GradedGraphGF(int n_max, int k_max);

    int n_max() const { return n_max_; }
    int k_max() const { return k_max_; }
    const Bivariate& bivariate() const { return sg_; }

    /// [z^n w^j], i.e. binom(binom(n,2), j) / n!.
    const Rational& coeff(int n, int j) const { return sg_.coeff(n, j); }

private:
    int n_max_;
    int k_max_;
    Bivariate sg_;
};

/// T(z) = z e^{T(z)}, the rooted labeled tree series, to order N.
Series tree_series(int N);

struct UnicycleSeries {
    Series mv;  // connected multigraphs of excess 0: (1/2) log(1/(1-T))
    Series v;   // connected graphs of excess 0:      mv - T/2 - T^2/4
};
UnicycleSeries unicycle_series(int N);

/// Connected graphs by excess, -1 <= k <= k_max, from the logarithm of the
/// all-graphs GF. n! [z^n] of entry k is the connected count with n
/// vertices and n + k edges.
ExcessIndexedSeries connected_series(int n_max, int k_max);

/// Graphs whose components all have positive excess, 0 <= k <= k_max,
/// obtained by exponentiating the connected family in the excess variable.
ExcessIndexedSeries sgpos_series(int k_max, int N);
ExcessIndexedSeries sgpos_from_connected(const ExcessIndexedSeries& csg, int k_max);

/// Multigraph majorant of sgpos at excess k (coefficient-wise upper bound).
Series mgpos_series(int k, int N);

/// Multigraphs of minimum degree >= 2 and excess k (multicores).
Series mcore_series(int k, int N);

// Numerator polynomial of sgpos_k written in the basis t = T(z):
// sgpos_k(z) = poly(T(z)) / (1 - T(z))^{3k}.
struct WrightPolynomial {
    int k = 0;
    std::vector<Rational> coeffs;  // coeffs[j] multiplies t^j

    int degree() const;
    Series evaluated_at(const Series& t) const;
};

/// Rewrites sgpos_k (1-T)^{3k} in powers of T. The rewrite fails with
/// identity_violation if a coefficient survives beyond degree 10k.
WrightPolynomial wright_polynomial(int k, int working_order = 40);

/// Sum over compositions r = k_1 + ... + k_{q-1} (parts >= 1) of the
/// products of the corresponding Wright polynomials.
std::vector<Rational> wright_product_polynomial(int q, int r, int working_order = 40);

struct CsgIdentityResult {
    bool equal = false;
    Rational composition_side;  // alternating composition sum (rational a priori)
    Int connected_count;        // n! [z^n] CSG_k from the log pipeline
};

/// Checks the composition identity expressing the connected count of
/// excess k through the positive-excess families.
CsgIdentityResult exact_csg_identity(int n, int k);

/// Shared caches for the heavy pipelines (results are bit-identical
/// whether or not the cache is hit).
const ExcessIndexedSeries& cached_connected_series(int n_max, int k_max);
const ExcessIndexedSeries& cached_sgpos_series(int k_max, int N);

}  // namespace excess
