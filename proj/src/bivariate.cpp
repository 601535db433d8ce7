#include "excess/bivariate.hpp"

#include <algorithm>
#include <stdexcept>

namespace excess {

namespace {

using Row = std::vector<Rational>;  // x-polynomial

void row_addmul(Row& acc, const Row& a, const Row& b, const Rational& scale) {
    size_t M = acc.size();
    Rational tmp;
    for (size_t i = 0; i < a.size() && i < M; ++i) {
        if (a[i] == 0) continue;
        Rational ai = a[i] * scale;
        for (size_t j = 0; j < b.size() && i + j < M; ++j) {
            if (b[j] == 0) continue;
            tmp = ai * b[j];
            acc[i + j] += tmp;
        }
    }
}

bool row_is_zero(const Row& r) {
    return std::all_of(r.begin(), r.end(), [](const Rational& c) { return c == 0; });
}

}  // namespace

Bivariate::Bivariate(int x_order, int z_order) : x_order_(x_order), z_order_(z_order) {
    if (x_order < 0 || z_order < 0)
        throw std::invalid_argument("bivariate orders must be non-negative");
    rows_.assign(static_cast<size_t>(z_order) + 1, Row(static_cast<size_t>(x_order) + 1));
}

Series extract(const Bivariate& f, int j) {
    if (j < 0 || j > f.x_order()) throw std::out_of_range("extract: x-degree beyond order");
    Series s(f.z_order());
    for (int n = 0; n <= f.z_order(); ++n) s.at(n) = f.coeff(n, j);
    return s;
}

Bivariate add(const Bivariate& a, const Bivariate& b) {
    int M = std::min(a.x_order(), b.x_order());
    int N = std::min(a.z_order(), b.z_order());
    Bivariate r(M, N);
    for (int n = 0; n <= N; ++n)
        for (int j = 0; j <= M; ++j) r.at(n, j) = a.coeff(n, j) + b.coeff(n, j);
    return r;
}

Bivariate sub(const Bivariate& a, const Bivariate& b) {
    int M = std::min(a.x_order(), b.x_order());
    int N = std::min(a.z_order(), b.z_order());
    Bivariate r(M, N);
    for (int n = 0; n <= N; ++n)
        for (int j = 0; j <= M; ++j) r.at(n, j) = a.coeff(n, j) - b.coeff(n, j);
    return r;
}

Bivariate scaled(const Bivariate& a, const Rational& c) {
    Bivariate r(a.x_order(), a.z_order());
    for (int n = 0; n <= a.z_order(); ++n)
        for (int j = 0; j <= a.x_order(); ++j) r.at(n, j) = a.coeff(n, j) * c;
    return r;
}

Bivariate mul(const Bivariate& a, const Bivariate& b) {
    int M = std::min(a.x_order(), b.x_order());
    int N = std::min(a.z_order(), b.z_order());
    Bivariate r(M, N);
    Rational tmp;
    for (int na = 0; na <= N; ++na)
        for (int ja = 0; ja <= M; ++ja) {
            const Rational& ca = a.coeff(na, ja);
            if (ca == 0) continue;
            for (int nb = 0; na + nb <= N; ++nb)
                for (int jb = 0; ja + jb <= M; ++jb) {
                    const Rational& cb = b.coeff(nb, jb);
                    if (cb == 0) continue;
                    tmp = ca * cb;
                    r.at(na + nb, ja + jb) += tmp;
                }
        }
    return r;
}

Bivariate exp(const Bivariate& f) {
    int M = f.x_order(), N = f.z_order();
    for (int j = 0; j <= M; ++j)
        if (f.coeff(0, j) != 0) throw std::invalid_argument("exp: [z^0] slice must vanish");
    Bivariate g(M, N);
    g.at(0, 0) = 1;
    // n g_n = sum_{j=1..n} j f_j g_{n-j}, coefficients are x-polynomials
    std::vector<Row> grow(static_cast<size_t>(N) + 1, Row(static_cast<size_t>(M) + 1));
    grow[0][0] = 1;
    for (int n = 1; n <= N; ++n) {
        Row acc(static_cast<size_t>(M) + 1);
        for (int j = 1; j <= n; ++j) {
            Row fj(static_cast<size_t>(M) + 1);
            bool nz = false;
            for (int t = 0; t <= M; ++t) {
                fj[static_cast<size_t>(t)] = f.coeff(j, t);
                nz = nz || fj[static_cast<size_t>(t)] != 0;
            }
            if (!nz) continue;
            row_addmul(acc, fj, grow[static_cast<size_t>(n - j)], Rational(j));
        }
        Rational inv_n(1, n);
        for (int t = 0; t <= M; ++t) {
            grow[static_cast<size_t>(n)][static_cast<size_t>(t)] =
                acc[static_cast<size_t>(t)] * inv_n;
            g.at(n, t) = grow[static_cast<size_t>(n)][static_cast<size_t>(t)];
        }
    }
    return g;
}

Bivariate log(const Bivariate& f) {
    int M = f.x_order(), N = f.z_order();
    if (f.coeff(0, 0) != 1) throw std::invalid_argument("log: [z^0] slice must be 1");
    for (int j = 1; j <= M; ++j)
        if (f.coeff(0, j) != 0) throw std::invalid_argument("log: [z^0] slice must be 1");
    Bivariate g(M, N);
    std::vector<Row> grow(static_cast<size_t>(N) + 1, Row(static_cast<size_t>(M) + 1));
    // n g_n = n f_n - sum_{j=1..n-1} j g_j f_{n-j}
    for (int n = 1; n <= N; ++n) {
        Row acc(static_cast<size_t>(M) + 1);
        for (int t = 0; t <= M; ++t) acc[static_cast<size_t>(t)] = Rational(n) * f.coeff(n, t);
        for (int j = 1; j < n; ++j) {
            Row fnj(static_cast<size_t>(M) + 1);
            bool nz = false;
            for (int t = 0; t <= M; ++t) {
                fnj[static_cast<size_t>(t)] = f.coeff(n - j, t);
                nz = nz || fnj[static_cast<size_t>(t)] != 0;
            }
            if (!nz || row_is_zero(grow[static_cast<size_t>(j)])) continue;
            row_addmul(acc, grow[static_cast<size_t>(j)], fnj, Rational(-j));
        }
        Rational inv_n(1, n);
        for (int t = 0; t <= M; ++t) {
            grow[static_cast<size_t>(n)][static_cast<size_t>(t)] =
                acc[static_cast<size_t>(t)] * inv_n;
            g.at(n, t) = grow[static_cast<size_t>(n)][static_cast<size_t>(t)];
        }
    }
    return g;
}

Bivariate pow(const Bivariate& f, const Rational& alpha) {
    if (alpha == 0) return Bivariate::one(f.x_order(), f.z_order());
    return exp(scaled(log(f), alpha));
}

Bivariate from_series(const Series& f, int x_order) {
    Bivariate r(x_order, f.order());
    for (int n = 0; n <= f.order(); ++n) r.at(n, 0) = f[n];
    return r;
}

Bivariate mul_series(const Bivariate& a, const Series& f) {
    int N = std::min(a.z_order(), f.order());
    Bivariate r(a.x_order(), N);
    Rational tmp;
    for (int na = 0; na <= N; ++na)
        for (int j = 0; j <= a.x_order(); ++j) {
            const Rational& ca = a.coeff(na, j);
            if (ca == 0) continue;
            for (int nb = 0; na + nb <= N; ++nb) {
                if (f[nb] == 0) continue;
                tmp = ca * f[nb];
                r.at(na + nb, j) += tmp;
            }
        }
    return r;
}

}  // namespace excess
