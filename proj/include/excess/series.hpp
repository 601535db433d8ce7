#pragma once

#include <vector>

#include "excess/rational.hpp"

namespace excess {

// Truncated formal power series in z over exact rationals. A series of
// order N stores exactly the coefficients of z^0 .. z^N; every binary
// operation truncates to the smaller of the two orders. Values are
// immutable in practice: operations return fresh series.
class Series {
public:
    explicit Series(int order) : coeffs_(static_cast<size_t>(check_order(order)) + 1) {}

    static Series zero(int order) { return Series(order); }

    static Series one(int order) {
        Series s(order);
        s.coeffs_[0] = 1;
        return s;
    }

    /// c * z^degree (degrees beyond the order are dropped).
    static Series monomial(int order, int degree, const Rational& c) {
        Series s(order);
        if (degree >= 0 && degree <= order) s.coeffs_[static_cast<size_t>(degree)] = c;
        return s;
    }

    int order() const { return static_cast<int>(coeffs_.size()) - 1; }

    const Rational& operator[](int n) const { return coeffs_[static_cast<size_t>(n)]; }
    Rational& at(int n) { return coeffs_[static_cast<size_t>(n)]; }

    bool is_zero() const {
        for (const auto& c : coeffs_)
            if (c != 0) return false;
        return true;
    }

    /// Copy truncated (or zero-padded) to the given order.
    Series resized(int new_order) const {
        Series s(new_order);
        int upto = std::min(order(), new_order);
        for (int n = 0; n <= upto; ++n) s.coeffs_[static_cast<size_t>(n)] = coeffs_[static_cast<size_t>(n)];
        return s;
    }

    Series scaled(const Rational& c) const {
        Series s(order());
        for (size_t n = 0; n < coeffs_.size(); ++n) s.coeffs_[n] = coeffs_[n] * c;
        return s;
    }

    /// Multiply by z^d, dropping overflowing coefficients.
    Series shifted(int d) const {
        Series s(order());
        for (int n = order(); n >= d; --n) s.coeffs_[static_cast<size_t>(n)] = coeffs_[static_cast<size_t>(n - d)];
        return s;
    }

    friend bool operator==(const Series& a, const Series& b) { return a.coeffs_ == b.coeffs_; }

private:
    static int check_order(int order);
    std::vector<Rational> coeffs_;
};

Series add(const Series& a, const Series& b);
Series sub(const Series& a, const Series& b);

/// Cauchy product, truncated at min(order a, order b).
Series mul(const Series& a, const Series& b);

/// e^f for f with zero constant term, via (e^f)' = f' e^f.
Series exp(const Series& f);

/// log f for f with constant term 1.
Series log(const Series& f);

/// f^alpha = exp(alpha log f) for f with constant term 1; exact in rationals.
Series pow(const Series& f, const Rational& alpha);

/// Reciprocal, as pow(f, -1).
Series inverse(const Series& f);

/// f(g(z)) for g with zero constant term.
Series compose(const Series& f, const Series& g);

Series derivative(const Series& f);

/// n! [z^n] f.
Int egf_count(const Series& f, int n);

}  // namespace excess
