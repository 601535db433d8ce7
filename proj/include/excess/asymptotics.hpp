#pragma once

#include <array>
#include <string>
#include <vector>

#include "excess/rational.hpp"
#include "excess/recurrence.hpp"

namespace excess {

// Sign plus natural log of the absolute value; the counts and asymptotic
// terms handled here overflow double well before n = 200.
struct LogMagnitude {
    int sign = 0;
    double log_abs = 0.0;

    static LogMagnitude from_double(double v);
    static LogMagnitude from_int(const Int& v);
    static LogMagnitude from_rational(const Rational& v);
    static LogMagnitude from_log(double log_value, int sign = 1);

    double log10_abs() const;
    /// exp(log_abs) with sign; +-inf when out of double range.
    double to_double() const;

    friend LogMagnitude operator*(const LogMagnitude& a, const LogMagnitude& b);
    friend LogMagnitude operator/(const LogMagnitude& a, const LogMagnitude& b);
    friend bool operator<(const LogMagnitude& a, const LogMagnitude& b);
};

struct SaddlePoint {
    double ratio = 0;   // k/n
    double lambda = 0;  // root of (lambda/2)(e^l+1)/(e^l-1) = ratio + 1
    double tzeta = 0;   // T(zeta) = lambda/(e^lambda - 1)
    double zeta = 0;    // tzeta e^{-tzeta}
    double lambda_residual = 0;
    std::array<double, 2> saddle_residuals{};  // finite-difference checks of both conditions
};

/// Bisection bracket then Newton; the bracket widens automatically for
/// ratios beyond its default right end.
SaddlePoint solve_saddle(double ratio);

/// T(z) for 0 <= z < 1/e, by Newton on t e^{-t} = z.
double numeric_tree_fn(double z);

/// B(z, x) = (1 - T(z)(e^x-1-x)/(x^2/2))^{-1} evaluated numerically.
double eval_B_at(double tz, double x);
double log_B_at(double tz, double x);

struct ABValues {
    double a = 0;
    double b = 0;
};
ABValues eval_A_B(const SaddlePoint& sp);

std::array<std::array<double, 2>, 2> hessian(const SaddlePoint& sp, double n_over_k);
std::array<std::array<double, 2>, 2> hessian_fd(const SaddlePoint& sp, double step = 1e-4);

/// log of the dominant closed-form term for connected counts at ratio k/n.
LogMagnitude dominant_term_log(long n, long k);

/// log of the Theta-form normalization (1/k) n! (2k-1)!! / (B^{-k} zeta^n lambda^{2k}).
LogMagnitude theta_form_log(long n, long k);

// Both sides of the two numeric identities behind the dominant term,
// in log space (first) and in plain doubles (second).
struct IdentityPair {
    double lhs = 0;
    double rhs = 0;
    double relative_gap() const;
};
IdentityPair exponential_term_identity(long n, long k);  // log space
IdentityPair polynomial_term_identity(long n, long k);   // plain values

double log_factorial(long n);
double log_double_factorial_odd(long k);

/// Exact connected count as a log magnitude (table must cover (n, n+k)).
LogMagnitude exact_connected_log(const ConnectedCountTable& table, int n, int k);

/// r(n) = CSG_{n,k} / D_{n,k}.
double exact_over_dominant(const ConnectedCountTable& table, int n, int k);

/// Richardson/Neville extrapolation of n (r(n) - 1) to n -> infinity at
/// fixed ratio = k/n. Needs at least 3 points; ratio*n must be integral.
double c1_fit(const Rational& ratio, const std::vector<int>& n_list,
              const ConnectedCountTable* table = nullptr);

// S_{q,d,k}: normalized double-factorial composition sums (exact).
struct SSequenceValue {
    int q = 0, d = 0, k = 0;
    Rational value;
};
SSequenceValue s_value(int q, int d, int k);

/// Numerators W[q] of S_{q,d,k} (2k-1)!! for all q = 0..k at part cap `cap`.
std::vector<Int> s_numerators_all_q(int k, int cap);

struct AppendixCheck {
    std::string name;
    bool pass = false;
    std::string witness;  // first failing (q, d, k) or the observed extremum
};
struct AppendixReport {
    std::vector<AppendixCheck> checks;
    bool all_pass() const;
};
/// Numeric verification of the S-sequence inequalities up to k_max (<= 200).
AppendixReport appendix_bound_checks(int k_max);

// Exact magnitude diagnostics: composition terms grouped by (q, r = k - max
// part) relative to (1, 0), and the patchwork slices relative to ell = 0.
struct TermMagnitudes {
    struct CompositionRow {
        int q = 0, r = 0;
        Rational value;           // signed exact term, weight (-1)^{q+1}/q included
        double log10_ratio = 0;   // log10 |value / leading|
    };
    struct SliceRow {
        int ell = 0;
        Rational value;
        double log10_ratio = 0;
    };
    std::vector<CompositionRow> composition;
    std::vector<SliceRow> slices;
};
TermMagnitudes term_magnitudes(int n, int k, int ell_max);

}  // namespace excess
