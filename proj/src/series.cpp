#include "excess/series.hpp"

#include <algorithm>
#include <stdexcept>

namespace excess {

int Series::check_order(int order) {
    if (order < 0) throw std::invalid_argument("series order must be non-negative");
    return order;
}

Series add(const Series& a, const Series& b) {
    int n_max = std::min(a.order(), b.order());
    Series r(n_max);
    for (int n = 0; n <= n_max; ++n) r.at(n) = a[n] + b[n];
    return r;
}

Series sub(const Series& a, const Series& b) {
    int n_max = std::min(a.order(), b.order());
    Series r(n_max);
    for (int n = 0; n <= n_max; ++n) r.at(n) = a[n] - b[n];
    return r;
}

Series mul(const Series& a, const Series& b) {
    int n_max = std::min(a.order(), b.order());
    Series r(n_max);
    Rational tmp;
    for (int i = 0; i <= n_max; ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; i + j <= n_max; ++j) {
            if (b[j] == 0) continue;
            tmp = a[i] * b[j];
            r.at(i + j) += tmp;
        }
    }
    return r;
}

Series exp(const Series& f) {
    if (f[0] != 0) throw std::invalid_argument("exp: constant term must be 0");
    int N = f.order();
    Series g(N);
    g.at(0) = 1;
    // n g_n = sum_{j=1..n} j f_j g_{n-j}
    for (int n = 1; n <= N; ++n) {
        Rational acc(0);
        for (int j = 1; j <= n; ++j) {
            if (f[j] == 0) continue;
            acc += Rational(j) * f[j] * g[n - j];
        }
        g.at(n) = acc / n;
    }
    return g;
}

Series log(const Series& f) {
    if (f[0] != 1) throw std::invalid_argument("log: constant term must be 1");
    int N = f.order();
    Series g(N);
    // n g_n = n f_n - sum_{j=1..n-1} j g_j f_{n-j}
    for (int n = 1; n <= N; ++n) {
        Rational acc = Rational(n) * f[n];
        for (int j = 1; j < n; ++j) {
            if (g[j] == 0 || f[n - j] == 0) continue;
            acc -= Rational(j) * g[j] * f[n - j];
        }
        g.at(n) = acc / n;
    }
    return g;
}

Series pow(const Series& f, const Rational& alpha) {
    if (f[0] != 1) throw std::invalid_argument("pow: constant term must be 1");
    if (alpha == 0) return Series::one(f.order());
    return exp(log(f).scaled(alpha));
}

Series inverse(const Series& f) { return pow(f, Rational(-1)); }

Series compose(const Series& f, const Series& g) {
    if (g[0] != 0) throw std::invalid_argument("compose: inner series must have zero constant term");
    int N = std::min(f.order(), g.order());
    Series inner = g.resized(N);
    // Horner in g
    Series r(N);
    r.at(0) = f[N];
    for (int n = N - 1; n >= 0; --n) {
        r = mul(r, inner);
        r.at(0) += f[n];
    }
    return r;
}

Series derivative(const Series& f) {
    Series r(f.order());
    for (int n = 1; n <= f.order(); ++n) r.at(n - 1) = Rational(n) * f[n];
    return r;
}

Int egf_count(const Series& f, int n) {
    if (n < 0 || n > f.order()) throw std::out_of_range("egf_count: index beyond order");
    Rational v = f[n] * Rational(factorial(static_cast<unsigned long>(n)));
    if (!is_integer(v)) throw std::domain_error("egf_count: n! [z^n] f is not an integer");
    return v.get_num();
}

}  // namespace excess
