#include "excess/graph_gf.hpp"

#include <functional>
#include <map>
#include <mutex>
#include <tuple>
#include <string>
#include <utility>

#include "excess/config.hpp"

namespace excess {

GradedGraphGF::GradedGraphGF(int n_max, int k_max)
    : n_max_(n_max), k_max_(k_max), sg_(n_max + k_max, n_max) {
    if (n_max < 0 || n_max + k_max < 0) throw std::invalid_argument("bad graph GF range");
    int w_max = n_max + k_max;
    for (int n = 0; n <= n_max; ++n) {
        unsigned long pairs = static_cast<unsigned long>(n) * (n - 1) / 2;
        Rational inv_fact(1);
        inv_fact /= Rational(factorial(static_cast<unsigned long>(n)));
        for (int j = 0; j <= w_max; ++j) {
            if (static_cast<unsigned long>(j) > pairs) break;
            sg_.at(n, j) = Rational(binomial(pairs, static_cast<unsigned long>(j))) * inv_fact;
        }
    }
}

Series tree_series(int N) {
    Series t(N);
    // fixed point of T = z exp(T); gains one exact order per pass
    for (int pass = 0; pass <= N; ++pass) {
        Series next = exp(t).shifted(1);
        if (next == t) break;
        t = next;
    }
    Series residual = sub(t, exp(t).shifted(1));
    if (!residual.is_zero()) throw identity_violation("tree series does not satisfy T = z e^T");
    return t;
}

UnicycleSeries unicycle_series(int N) {
    Series t = tree_series(N);
    Series one_minus_t = sub(Series::one(N), t);
    Series mv = log(one_minus_t).scaled(Rational(-1, 2));
    Series v = sub(mv, add(t.scaled(Rational(1, 2)), mul(t, t).scaled(Rational(1, 4))));
    return UnicycleSeries{mv, v};
}

ExcessIndexedSeries connected_series(int n_max, int k_max) {
    if (n_max < 1 || k_max < -1) throw std::invalid_argument("connected_series: bad range");
    if (k_max > caps().max_gf_excess)
        throw std::invalid_argument("connected_series: k_max beyond the configured cap " +
                                    std::to_string(caps().max_gf_excess));
    GradedGraphGF sg(n_max, k_max);
    Bivariate csg = log(sg.bivariate());
    ExcessIndexedSeries out(-1, k_max, n_max);
    for (int k = -1; k <= k_max; ++k) {
        Series& s = out.at(k);
        for (int n = 0; n <= n_max; ++n) {
            int j = n + k;
            if (j < 0 || j > csg.x_order()) continue;
            s.at(n) = csg.coeff(n, j);
        }
        for (int n = 0; n <= n_max; ++n) {
            Rational scaled = s[n] * Rational(factorial(static_cast<unsigned long>(n)));
            if (!is_integer(scaled))
                throw identity_violation("connected_series: non-integer graph count");
        }
    }
    return out;
}

ExcessIndexedSeries sgpos_from_connected(const ExcessIndexedSeries& csg, int k_max) {
    if (k_max < 0) throw std::invalid_argument("sgpos: k_max must be >= 0");
    if (csg.k_max() < k_max) throw std::invalid_argument("sgpos: connected range too small");
    int N = csg.z_order();
    ExcessIndexedSeries out(0, k_max, N);
    out.at(0) = Series::one(N);
    // [y^r] exp(sum_{j>=1} CSG_j y^j): r g_r = sum_{j=1..r} j CSG_j g_{r-j}
    for (int r = 1; r <= k_max; ++r) {
        Series acc(N);
        for (int j = 1; j <= r; ++j)
            acc = add(acc, mul(csg.at(j), out.at(r - j)).scaled(Rational(j)));
        out.at(r) = acc.scaled(Rational(1, r));
    }
    return out;
}

ExcessIndexedSeries sgpos_series(int k_max, int N) {
    return sgpos_from_connected(cached_connected_series(N, k_max), k_max);
}

namespace {

/// (e^x - 1 - x)/(x^2/2) as plain x-coefficients: coefficient of x^j is 2/(j+2)!.
Rational half_square_tail_coeff(int j) {
    Rational c(2);
    c /= Rational(factorial(static_cast<unsigned long>(j) + 2));
    return c;
}

}  // namespace

Series mgpos_series(int k, int N) {
    if (k < 0) throw std::invalid_argument("mgpos: k must be >= 0");
    Series t = tree_series(N);
    int M = 2 * k;
    // 1 - T(z) (e^x-1-x)/(x^2/2)
    Bivariate f(M, N);
    f.at(0, 0) = 1;
    for (int j = 0; j <= M; ++j) {
        Rational sj = half_square_tail_coeff(j);
        for (int n = 1; n <= N; ++n) f.at(n, j) -= t[n] * sj;
    }
    Rational alpha(-(2 * k + 1), 2);
    Bivariate powed = pow(f, alpha);
    Series slice = extract(powed, M);
    UnicycleSeries u = unicycle_series(N);
    Series exp_minus_mv = exp(u.mv.scaled(Rational(-1)));
    return mul(slice, exp_minus_mv).scaled(Rational(double_factorial_odd(k)));
}

Series mcore_series(int k, int N) {
    if (k < 0) throw std::invalid_argument("mcore: k must be >= 0");
    int M = 2 * k;
    // 1 - z (e^x-1-x)/(x^2/2)
    Bivariate f(M, N);
    f.at(0, 0) = 1;
    if (N >= 1)
        for (int j = 0; j <= M; ++j) f.at(1, j) = -half_square_tail_coeff(j);
    Bivariate powed = pow(f, Rational(-(2 * k + 1), 2));
    return extract(powed, M).scaled(Rational(double_factorial_odd(k)));
}

int WrightPolynomial::degree() const {
    for (int j = static_cast<int>(coeffs.size()) - 1; j >= 0; --j)
        if (coeffs[static_cast<size_t>(j)] != 0) return j;
    return -1;
}

Series WrightPolynomial::evaluated_at(const Series& t) const {
    // terms beyond the truncation order cannot contribute: t has valuation 1
    Series f(t.order());
    for (size_t j = 0; j < coeffs.size() && static_cast<int>(j) <= t.order(); ++j)
        f.at(static_cast<int>(j)) = coeffs[j];
    return compose(f, t);
}

WrightPolynomial wright_polynomial(int k, int working_order) {
    if (k < 1) throw std::invalid_argument("wright_polynomial: k must be >= 1");
    int N = working_order;
    const ExcessIndexedSeries& sgpos = cached_sgpos_series(k, N);
    Series t = tree_series(N);
    Series one_minus_t_cubed_k = pow(sub(Series::one(N), t), Rational(3 * k));
    Series residual = mul(sgpos.at(k), one_minus_t_cubed_k);

    WrightPolynomial q;
    q.k = k;
    q.coeffs.assign(static_cast<size_t>(N) + 1, Rational(0));
    Series t_power = Series::one(N);
    for (int j = 0; j <= N; ++j) {
        Rational c = residual[j];
        if (c != 0) {
            if (j > 10 * k)
                throw identity_violation("wright_polynomial: rewrite drifted past degree 10k");
            q.coeffs[static_cast<size_t>(j)] = c;
            residual = sub(residual, t_power.scaled(c));
        }
        if (j < N) t_power = mul(t_power, t);
    }
    if (!residual.is_zero())
        throw identity_violation("wright_polynomial: nonzero remainder after rewrite");
    q.coeffs.resize(static_cast<size_t>(std::max(q.degree(), 0)) + 1);
    return q;
}

std::vector<Rational> wright_product_polynomial(int q, int r, int working_order) {
    if (q < 1 || r < q - 1) throw std::invalid_argument("wright_product_polynomial: need q >= 1, r >= q-1");
    int parts = q - 1;
    if (parts == 0) {
        // empty composition: constant 1 when r = 0, empty sum otherwise
        return {Rational(r == 0 ? 1 : 0)};
    }
    std::vector<WrightPolynomial> qk(static_cast<size_t>(r) + 1);
    for (int j = 1; j <= r - parts + 1; ++j) qk[static_cast<size_t>(j)] = wright_polynomial(j, working_order);

    std::vector<Rational> total{Rational(0)};
    std::vector<int> comp(static_cast<size_t>(parts));
    auto poly_mul = [](const std::vector<Rational>& a, const std::vector<Rational>& b) {
        std::vector<Rational> c(a.size() + b.size() - 1, Rational(0));
        for (size_t i = 0; i < a.size(); ++i) {
            if (a[i] == 0) continue;
            for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
        }
        return c;
    };
    auto poly_add = [](std::vector<Rational>& a, const std::vector<Rational>& b) {
        if (b.size() > a.size()) a.resize(b.size(), Rational(0));
        for (size_t i = 0; i < b.size(); ++i) a[i] += b[i];
    };
    // lexicographic enumeration of compositions of r into `parts` parts >= 1
    std::function<void(int, int, std::vector<Rational>)> recurse =
        [&](int idx, int remaining, std::vector<Rational> product) {
            if (idx == parts) {
                if (remaining == 0) poly_add(total, product);
                return;
            }
            int slots_left = parts - idx - 1;
            for (int part = 1; part + slots_left <= remaining; ++part) {
                comp[static_cast<size_t>(idx)] = part;
                recurse(idx + 1, remaining - part,
                        poly_mul(product, qk[static_cast<size_t>(part)].coeffs));
            }
        };
    recurse(0, r, {Rational(1)});
    return total;
}

namespace {

// Alternating composition sum
// sum_q ((-1)^{q+1}/q) sum_{k_1+..+k_q=k} prod_j sgpos_{k_j}(z),
// the log-expansion route to the connected series at excess k.
Series composition_series(int k, int N) {
    const ExcessIndexedSeries& sgpos = cached_sgpos_series(k, N);
    Series total(N);
    // lexicographic composition walk; the running product is reused down the stack
    std::function<void(int, int, const Series&)> recurse =
        [&](int parts_used, int remaining, const Series& product) {
            if (remaining == 0) {
                int q = parts_used;
                total = add(total, product.scaled(Rational(q % 2 == 1 ? 1 : -1, q)));
                return;
            }
            for (int part = 1; part <= remaining; ++part)
                recurse(parts_used + 1, remaining - part, mul(product, sgpos.at(part)));
        };
    recurse(0, k, Series::one(N));
    return total;
}

std::mutex cache_mutex;
std::map<std::pair<int, int>, ExcessIndexedSeries> connected_cache;
std::map<std::pair<int, int>, ExcessIndexedSeries> sgpos_cache;
std::map<std::pair<int, int>, Series> composition_cache;

const Series& cached_composition_series(int k, int N) {
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = composition_cache.find({k, N});
        if (it != composition_cache.end()) return it->second;
    }
    Series computed = composition_series(k, N);
    std::lock_guard<std::mutex> lock(cache_mutex);
    return composition_cache.emplace(std::make_pair(k, N), std::move(computed)).first->second;
}

}  // namespace

CsgIdentityResult exact_csg_identity(int n, int k) {
    if (n < 1 || k < 1) throw std::invalid_argument("exact_csg_identity: need n, k >= 1");
    const ExcessIndexedSeries& csg = cached_connected_series(n, k);
    const Series& comp = cached_composition_series(k, n);

    CsgIdentityResult res;
    res.composition_side = comp[n] * Rational(factorial(static_cast<unsigned long>(n)));
    res.connected_count = egf_count(csg.at(k), n);
    res.equal = (res.composition_side == Rational(res.connected_count));
    return res;
}

const ExcessIndexedSeries& cached_connected_series(int n_max, int k_max) {
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = connected_cache.find({n_max, k_max});
        if (it != connected_cache.end()) return it->second;
    }
    ExcessIndexedSeries computed = connected_series(n_max, k_max);
    std::lock_guard<std::mutex> lock(cache_mutex);
    return connected_cache.emplace(std::make_pair(n_max, k_max), std::move(computed))
        .first->second;
}

const ExcessIndexedSeries& cached_sgpos_series(int k_max, int N) {
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = sgpos_cache.find({k_max, N});
        if (it != sgpos_cache.end()) return it->second;
    }
    ExcessIndexedSeries computed = sgpos_from_connected(cached_connected_series(N, k_max), k_max);
    std::lock_guard<std::mutex> lock(cache_mutex);
    return sgpos_cache.emplace(std::make_pair(k_max, N), std::move(computed)).first->second;
}

}  // namespace excess
