#include "excess/asymptotics.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <stdexcept>

#include "excess/config.hpp"
#include "excess/graph_gf.hpp"
#include "excess/patchworks.hpp"

namespace excess {

namespace {

constexpr double kLn2 = 0.6931471805599453094;

double sgn_of(double v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

/// (e^x - 1 - x)/(x^2/2); Taylor below 1e-3 to control cancellation.
double tail_fn(double x) {
    if (std::fabs(x) < 1e-3)
        return 1.0 + x / 3.0 + x * x / 12.0 + x * x * x / 60.0 + x * x * x * x / 360.0;
    return 2.0 * (std::expm1(x) - x) / (x * x);
}

/// log(e^l - 1 - l).
double log_exp_tail(double l) {
    if (l < 1e-3)
        return std::log(l * l / 2.0) +
               std::log1p(l / 3.0 + l * l / 12.0 + l * l * l / 60.0 + l * l * l * l / 360.0);
    return l + std::log1p(-(1.0 + l) * std::exp(-l));
}

/// log(e^{2l} - 1 - 2l e^l).
double log_exp_tail2(double l) {
    if (l < 1e-3)
        return std::log(l * l * l / 3.0) + std::log1p(l + 11.0 * l * l / 20.0);
    return 2.0 * l + std::log1p(-std::exp(-2.0 * l) - 2.0 * l * std::exp(-l));
}

/// log(2 sinh(l/2)).
double log_two_sinh_half(double l) { return l / 2.0 + std::log1p(-std::exp(-l)); }

/// 1 - T(zeta) tail(lambda) = ((l-2)(e^l-1) + 2l)/(l (e^l-1)), the
/// reciprocal of B at the saddle.
double inv_B_saddle(double l) {
    if (l < 1e-2) {
        double num = l * l * l * (1.0 / 6.0 + l / 12.0 + l * l / 40.0 + l * l * l / 180.0);
        return num / (l * std::expm1(l));
    }
    return ((l - 2.0) * std::expm1(l) + 2.0 * l) / (l * std::expm1(l));
}

double phi(double l) { return l / 2.0 + l / std::expm1(l); }

}  // namespace

LogMagnitude LogMagnitude::from_double(double v) {
    LogMagnitude r;
    if (v == 0) return r;
    r.sign = v > 0 ? 1 : -1;
    r.log_abs = std::log(std::fabs(v));
    return r;
}

LogMagnitude LogMagnitude::from_int(const Int& v) {
    LogMagnitude r;
    int s = mpz_sgn(v.get_mpz_t());
    if (s == 0) return r;
    r.sign = s;
    long exp2 = 0;
    double mant = mpz_get_d_2exp(&exp2, v.get_mpz_t());
    long double acc = std::log(std::fabs(mant));
    acc += static_cast<long double>(exp2) * static_cast<long double>(kLn2);
    r.log_abs = static_cast<double>(acc);
    return r;
}

LogMagnitude LogMagnitude::from_rational(const Rational& v) {
    LogMagnitude num = from_int(Int(v.get_num()));
    if (num.sign == 0) return num;
    LogMagnitude den = from_int(Int(v.get_den()));
    return num / den;
}

LogMagnitude LogMagnitude::from_log(double log_value, int sign) {
    LogMagnitude r;
    r.sign = sign;
    r.log_abs = log_value;
    return r;
}

double LogMagnitude::log10_abs() const { return log_abs / std::log(10.0); }

double LogMagnitude::to_double() const {
    if (sign == 0) return 0.0;
    return sign * std::exp(log_abs);
}

LogMagnitude operator*(const LogMagnitude& a, const LogMagnitude& b) {
    LogMagnitude r;
    r.sign = a.sign * b.sign;
    if (r.sign != 0) r.log_abs = a.log_abs + b.log_abs;
    return r;
}

LogMagnitude operator/(const LogMagnitude& a, const LogMagnitude& b) {
    if (b.sign == 0) throw std::domain_error("LogMagnitude: division by zero");
    LogMagnitude r;
    r.sign = a.sign * b.sign;
    if (r.sign != 0) r.log_abs = a.log_abs - b.log_abs;
    return r;
}

bool operator<(const LogMagnitude& a, const LogMagnitude& b) {
    if (a.sign != b.sign) return a.sign < b.sign;
    if (a.sign == 0) return false;
    if (a.sign > 0) return a.log_abs < b.log_abs;
    return a.log_abs > b.log_abs;
}

double numeric_tree_fn(double z) {
    if (z < 0 || z >= std::exp(-1.0))
        throw std::domain_error("numeric_tree_fn: z must lie in [0, 1/e)");
    if (z == 0) return 0.0;
    double lo = 0.0, hi = 1.0;
    for (int i = 0; i < 80; ++i) {
        double mid = 0.5 * (lo + hi);
        (mid * std::exp(-mid) < z ? lo : hi) = mid;
    }
    double t = 0.5 * (lo + hi);
    for (int i = 0; i < 4; ++i) {
        double f = t - z * std::exp(t);
        double fp = 1.0 - z * std::exp(t);
        if (fp == 0) break;
        t -= f / fp;
    }
    return t;
}

double eval_B_at(double tz, double x) { return 1.0 / (1.0 - tz * tail_fn(x)); }

double log_B_at(double tz, double x) { return -std::log1p(-tz * tail_fn(x)); }

SaddlePoint solve_saddle(double ratio) {
    if (!(ratio > 0)) throw std::domain_error("solve_saddle: ratio must be positive");
    double target = ratio + 1.0;
    double lo = 1e-6, hi = 30.0;
    while (phi(hi) < target && hi < 1e9) hi *= 2.0;
    for (int i = 0; i < 200 && (hi - lo) > 1e-16 * hi; ++i) {
        double mid = 0.5 * (lo + hi);
        (phi(mid) < target ? lo : hi) = mid;
    }
    double l = 0.5 * (lo + hi);
    for (int i = 0; i < 4; ++i) {
        double a = std::expm1(l);
        double deriv = 0.5 + (a - l * (a + 1.0)) / (a * a);
        double f = phi(l) - target;
        if (deriv == 0) break;
        l -= f / deriv;
    }

    SaddlePoint sp;
    sp.ratio = ratio;
    sp.lambda = l;
    sp.tzeta = l / std::expm1(l);
    sp.zeta = sp.tzeta * std::exp(-sp.tzeta);
    sp.lambda_residual = std::fabs(phi(l) - target);

    // fourth-order stencils; the plain central difference is too coarse once
    // the saddle approaches the tree-function branch point (small ratios)
    auto diff5 = [](const std::function<double(double)>& f, double h) {
        return (-f(2 * h) + 8 * f(h) - 8 * f(-h) + f(-2 * h)) / (12.0 * h);
    };
    double h = 1e-4;
    double room = std::log(std::exp(-1.0) / sp.zeta);
    double hz = std::min(h, room / 8);
    std::function<double(double)> f1 = [&](double t) {
        return log_B_at(numeric_tree_fn(sp.zeta * std::exp(t)), l);
    };
    std::function<double(double)> f2 = [&](double s) {
        return log_B_at(sp.tzeta, l * std::exp(s));
    };
    double fd1 = diff5(f1, hz);
    double fd2 = diff5(f2, h);
    sp.saddle_residuals = {std::fabs(fd1 - 1.0 / ratio), std::fabs(fd2 - 2.0)};
    return sp;
}

ABValues eval_A_B(const SaddlePoint& sp) {
    double l = sp.lambda;
    double tz = sp.tzeta;
    if (!(tz > 0) || tz >= 1) throw std::domain_error("eval_A_B: T(zeta) outside (0, 1)");
    ABValues out;
    out.b = 1.0 / inv_B_saddle(l);
    // T e^l and T^2 e^{2l} without overflow: T e^l = l / (1 - e^{-l})
    double tel = l / (-std::expm1(-l));
    double exponent = -tel / 2.0 - tel * tel / 4.0 + tz / 2.0 + tz * tz / 4.0;
    out.a = std::exp(exponent) * std::sqrt((1.0 - tz) * out.b);
    return out;
}

// Second derivatives of log B(e^{t1}, e^{t2}) at the saddle. With
// u = T(zeta) and w = u s(lambda), the (1,1) entry is
//   w (1 - u^2 s) / ((1-u)^3 (1-w)^2)  =  (n/k)^2 (1 - u w) / (w (1 - u)),
// using z T'(z) = T/(1-T) and the saddle relation n/k = w/((1-u)(1-w)).
std::array<std::array<double, 2>, 2> hessian(const SaddlePoint& sp, double n_over_k) {
    double l = sp.lambda;
    double tz = sp.tzeta;
    double w = tz * tail_fn(l);
    std::array<std::array<double, 2>, 2> h{};
    h[0][0] = n_over_k * n_over_k * (1.0 - tz * w) / (w * (1.0 - tz));
    h[0][1] = h[1][0] = 2.0 / (1.0 - tz) + 2.0 * n_over_k;
    h[1][1] = l * (1.0 - tz) * n_over_k + 2.0 * l;
    return h;
}

std::array<std::array<double, 2>, 2> hessian_fd(const SaddlePoint& sp, double step) {
    double t1 = std::log(sp.zeta);
    double t2 = std::log(sp.lambda);
    auto f = [&](double a, double b) {
        return log_B_at(numeric_tree_fn(std::exp(t1 + a)), std::exp(t2 + b));
    };
    double h = step;
    std::array<std::array<double, 2>, 2> out{};
    double f00 = f(0, 0);
    out[0][0] = (f(h, 0) - 2 * f00 + f(-h, 0)) / (h * h);
    out[1][1] = (f(0, h) - 2 * f00 + f(0, -h)) / (h * h);
    out[0][1] = out[1][0] = (f(h, h) - f(h, -h) - f(-h, h) + f(-h, -h)) / (4 * h * h);
    return out;
}

double log_factorial(long n) { return std::lgamma(static_cast<double>(n) + 1.0); }

double log_double_factorial_odd(long k) {
    if (k <= 0) return 0.0;
    return std::lgamma(2.0 * k + 1.0) - k * kLn2 - std::lgamma(k + 1.0);
}

LogMagnitude dominant_term_log(long n, long k) {
    if (n < 1 || k < 1) throw std::invalid_argument("dominant_term_log: need n, k >= 1");
    double ratio = static_cast<double>(k) / static_cast<double>(n);
    SaddlePoint sp = solve_saddle(ratio);
    double l = sp.lambda;
    double dn = static_cast<double>(n), dk = static_cast<double>(k);
    double value = (dn + dk) * std::log(dn) - 0.5 * std::log(2.0 * M_PI * dn);
    value += dn * (log_two_sinh_half(l) - (1.0 + ratio) * std::log(l));
    value += log_exp_tail(l);
    value -= (1.0 + dk / (2.0 * dn)) * l;
    value -= 0.5 * (std::log(l / 2.0) + log_exp_tail2(l));
    return LogMagnitude::from_log(value);
}

LogMagnitude theta_form_log(long n, long k) {
    if (n < 1 || k < 1) throw std::invalid_argument("theta_form_log: need n, k >= 1");
    double ratio = static_cast<double>(k) / static_cast<double>(n);
    SaddlePoint sp = solve_saddle(ratio);
    double l = sp.lambda;
    double log_tz = std::log(l) - std::log(std::expm1(l));
    double log_zeta = log_tz - sp.tzeta;
    double value = -std::log(static_cast<double>(k)) + log_factorial(n) +
                   log_double_factorial_odd(k);
    value -= static_cast<double>(k) * std::log(inv_B_saddle(l));
    value -= static_cast<double>(n) * log_zeta;
    value -= 2.0 * static_cast<double>(k) * std::log(l);
    return LogMagnitude::from_log(value);
}

double IdentityPair::relative_gap() const {
    double scale = std::max(std::fabs(lhs), std::fabs(rhs));
    if (scale == 0) return 0;
    return std::fabs(lhs - rhs) / scale;
}

IdentityPair exponential_term_identity(long n, long k) {
    double ratio = static_cast<double>(k) / static_cast<double>(n);
    SaddlePoint sp = solve_saddle(ratio);
    double l = sp.lambda;
    double log_tz = std::log(l) - std::log(std::expm1(l));
    double log_zeta = log_tz - sp.tzeta;
    double dk = static_cast<double>(k), dn = static_cast<double>(n);
    IdentityPair pair;
    pair.lhs = dk * std::log(2.0 * dk / dn) - (dn + dk) - dk * std::log(inv_B_saddle(l)) -
               dn * log_zeta - 2.0 * dk * std::log(l);
    pair.rhs = dn * log_two_sinh_half(l) - (dn + dk) * std::log(l);
    return pair;
}

IdentityPair polynomial_term_identity(long n, long k) {
    double ratio = static_cast<double>(k) / static_cast<double>(n);
    SaddlePoint sp = solve_saddle(ratio);
    double l = sp.lambda;
    double dn = static_cast<double>(n), dk = static_cast<double>(k);
    ABValues ab = eval_A_B(sp);
    auto h = hessian(sp, dn / dk);
    double det = h[0][0] * h[1][1] - h[0][1] * h[1][0];
    IdentityPair pair;
    pair.lhs = std::sqrt(2.0 * M_PI * dn) * std::sqrt(2.0) * ab.a /
               (2.0 * M_PI * dk * std::sqrt(det));
    pair.rhs = std::exp(log_exp_tail(l)) * std::exp(-(1.0 + dk / (2.0 * dn)) * l) /
               (std::sqrt(2.0 * M_PI * dn) * std::exp(0.5 * (std::log(l / 2.0) + log_exp_tail2(l))));
    return pair;
}

LogMagnitude exact_connected_log(const ConnectedCountTable& table, int n, int k) {
    return LogMagnitude::from_int(table.count(n, n + k));
}

double exact_over_dominant(const ConnectedCountTable& table, int n, int k) {
    LogMagnitude exact = exact_connected_log(table, n, k);
    if (exact.sign <= 0) throw std::domain_error("exact_over_dominant: count is not positive");
    LogMagnitude dom = dominant_term_log(n, k);
    return std::exp(exact.log_abs - dom.log_abs);
}

double c1_fit(const Rational& ratio, const std::vector<int>& n_list,
              const ConnectedCountTable* table) {
    if (n_list.size() < 3) throw std::invalid_argument("c1_fit: need at least 3 points");
    if (!(ratio > 0)) throw std::invalid_argument("c1_fit: ratio must be positive");
    std::vector<int> ks(n_list.size());
    int n_max = 0, m_max = 0;
    for (size_t i = 0; i < n_list.size(); ++i) {
        Rational kr = ratio * n_list[i];
        if (!is_integer(kr)) throw std::invalid_argument("c1_fit: ratio * n must be integral");
        ks[i] = static_cast<int>(kr.get_num().get_si());
        if (ks[i] < 1) throw std::invalid_argument("c1_fit: excess must be >= 1");
        n_max = std::max(n_max, n_list[i]);
        m_max = std::max(m_max, n_list[i] + ks[i]);
    }
    const ConnectedCountTable* tbl = table;
    std::unique_ptr<ConnectedCountTable> own;
    if (!tbl || tbl->n_max() < n_max || tbl->m_max() < m_max) {
        own = std::make_unique<ConnectedCountTable>(n_max, m_max);
        tbl = own.get();
    }
    std::vector<double> h(n_list.size()), f(n_list.size());
    for (size_t i = 0; i < n_list.size(); ++i) {
        h[i] = 1.0 / n_list[i];
        double r = exact_over_dominant(*tbl, n_list[i], ks[i]);
        f[i] = n_list[i] * (r - 1.0);
    }
    // Neville extrapolation to h = 0
    std::vector<double> p = f;
    size_t np = n_list.size();
    for (size_t level = 1; level < np; ++level)
        for (size_t i = 0; i + level < np; ++i)
            p[i] = (h[i + level] * p[i] - h[i] * p[i + 1]) / (h[i + level] - h[i]);
    return p[0];
}

TermMagnitudes term_magnitudes(int n, int k, int ell_max) {
    if (n < 1 || k < 1) throw std::invalid_argument("term_magnitudes: need n, k >= 1");
    const ExcessIndexedSeries& sgpos = cached_sgpos_series(k, n);
    Int n_fact = factorial(static_cast<unsigned long>(n));

    std::map<std::pair<int, int>, Rational> buckets;
    std::function<void(int, int, int, const Series&)> recurse =
        [&](int parts, int remaining, int max_part, const Series& product) {
            if (remaining == 0) {
                int q = parts;
                int r = k - max_part;
                Rational term = product[n] * Rational(n_fact) * Rational(q % 2 == 1 ? 1 : -1, q);
                buckets[{q, r}] += term;
                return;
            }
            for (int part = 1; part <= remaining; ++part)
                recurse(parts + 1, remaining - part, std::max(max_part, part),
                        mul(product, sgpos.at(part)));
        };
    recurse(0, k, 0, Series::one(n));

    TermMagnitudes out;
    LogMagnitude leading = LogMagnitude::from_rational(buckets[{1, 0}]);
    for (const auto& [key, value] : buckets) {
        TermMagnitudes::CompositionRow row;
        row.q = key.first;
        row.r = key.second;
        row.value = value;
        LogMagnitude lm = LogMagnitude::from_rational(value);
        row.log10_ratio = lm.sign == 0 ? -std::numeric_limits<double>::infinity()
                                       : (lm.log_abs - leading.log_abs) / std::log(10.0);
        out.composition.push_back(row);
    }

    int ell_cap = std::min({k, ell_max, caps().max_patchwork_excess});
    LogMagnitude slice_leading;
    for (int ell = 0; ell <= ell_cap; ++ell) {
        Series slice = sgpos_patchwork_slice(k, ell, n);
        TermMagnitudes::SliceRow row;
        row.ell = ell;
        row.value = slice[n] * Rational(n_fact);
        LogMagnitude lm = LogMagnitude::from_rational(row.value);
        if (ell == 0) slice_leading = lm;
        row.log10_ratio = lm.sign == 0 ? -std::numeric_limits<double>::infinity()
                                       : (lm.log_abs - slice_leading.log_abs) / std::log(10.0);
        out.slices.push_back(row);
    }
    return out;
}

}  // namespace excess
