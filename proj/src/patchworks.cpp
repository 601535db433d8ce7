#include "excess/patchworks.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>

#include "excess/config.hpp"
#include "excess/oracle.hpp"

namespace excess {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

Int u128_to_int(u128 v) {
    Int hi(static_cast<unsigned long>(v >> 64));
    Int lo(static_cast<unsigned long>(v & ~u64(0)));
    return (hi << 64) + lo;
}

// parts can share edges: a parallel class of size j yields up to C(j,2)
// double-edge parts, so the part count is bounded by m + C(m,2), not m.
int max_u_degree(int m) { return m + m * (m - 1) / 2; }

u64 factorial_u64(int n) {
    u64 r = 1;
    for (int i = 2; i <= n; ++i) r *= static_cast<u64>(i);
    return r;
}

// Graphs on j labeled nodes without isolated node, u marking edges:
// cov_j(u) = sum_i (-1)^i binom(j,i) (1+u)^{binom(j-i,2)}.
// These count the ways the j parallel edges of a class can be grouped into
// double-edge parts so that every edge lies in at least one part.
std::vector<long long> covering_pair_sets(int j) {
    int max_t = j * (j - 1) / 2;
    std::vector<Int> acc(static_cast<size_t>(max_t) + 1, Int(0));
    for (int i = 0; i <= j; ++i) {
        Int sign = (i % 2 == 0) ? Int(1) : Int(-1);
        Int cji = binomial(static_cast<unsigned long>(j), static_cast<unsigned long>(i));
        unsigned long pairs = static_cast<unsigned long>(j - i) * (j - i - 1) / 2;
        for (int t = 0; t <= max_t; ++t) {
            if (static_cast<unsigned long>(t) > pairs) break;
            acc[static_cast<size_t>(t)] += sign * cji * binomial(pairs, static_cast<unsigned long>(t));
        }
    }
    std::vector<long long> out(acc.size());
    for (size_t t = 0; t < acc.size(); ++t) {
        if (!acc[t].fits_slong_p()) throw std::overflow_error("covering_pair_sets: coefficient overflow");
        out[t] = acc[t].get_si();
    }
    return out;
}

// Exhaustive shape walk for one (n, m) cell of the no-isolated-part
// patchwork family. A shape fixes the loop count per vertex and the
// parallel-class size per vertex pair; edge labels, orientations, and the
// per-class part covers are counted by exact multiplicities.
class NoIsolatedCellScan {
public:
    NoIsolatedCellScan(int n, int m, std::vector<u128>& acc_u)
        : n_(n), m_(m), acc_(acc_u) {
        loops_.assign(static_cast<size_t>(n) + 1, 0);
        class_count_.assign(static_cast<size_t>(n) + 1, 0);
        int cov_cap = std::min(m_, m_ - n_ + 2);  // class size <= excess + 2 at any leaf
        cov_.resize(static_cast<size_t>(std::max(cov_cap, 0)) + 1);
        for (int j = 2; j <= cov_cap; ++j) cov_[static_cast<size_t>(j)] = covering_pair_sets(j);
        m_fact_ = factorial_u64(m_);
    }

    void run() {
        if (n_ == 0) {
            if (m_ == 0) acc_[0] += 1;  // the empty patchwork
            return;
        }
        walk_loops(1);
    }

private:
    struct ClassChoice {
        int v, w, j;
    };

    // positions per stage v: loop count at v, then classes (v, w) for w > v
    void walk_loops(int v) {
        int budget = m_ - edges_used_;
        for (int a = 0; a <= budget; ++a) {
            loops_[static_cast<size_t>(v)] = a;
            edges_used_ += a;
            total_loops_ += a;
            divisor_ *= factorial_u64(a);
            if (a > 0 && incidence(v) == a) covered_ += 1;  // first touch
            if (feasible()) walk_classes(v, v + 1);
            if (a > 0 && incidence(v) == a) covered_ -= 1;
            divisor_ /= factorial_u64(a);
            total_loops_ -= a;
            edges_used_ -= a;
            loops_[static_cast<size_t>(v)] = 0;
        }
    }

    void walk_classes(int v, int w) {
        if (w > n_) {
            // stage v complete: v's incidences are final
            if (incidence(v) == 0) return;                                  // uncovered
            if (loops_[static_cast<size_t>(v)] == 1 && class_count_[static_cast<size_t>(v)] == 0)
                return;                                                     // isolated loop
            if (v == n_) {
                leaf();
            } else {
                walk_loops(v + 1);
            }
            return;
        }
        walk_classes(v, w + 1);  // j = 0
        int budget = m_ - edges_used_;
        for (int j = 2; j <= budget; ++j) {
            classes_.push_back(ClassChoice{v, w, j});
            edges_used_ += j;
            divisor_ *= factorial_u64(j);
            if (incidence(v) == 0) covered_ += 1;
            class_count_[static_cast<size_t>(v)] += 1;
            if (incidence(w) == 0) covered_ += 1;
            class_count_[static_cast<size_t>(w)] += 1;
            if (feasible()) walk_classes(v, w + 1);
            class_count_[static_cast<size_t>(w)] -= 1;
            if (incidence(w) == 0) covered_ -= 1;
            class_count_[static_cast<size_t>(v)] -= 1;
            if (incidence(v) == 0) covered_ -= 1;
            divisor_ /= factorial_u64(j);
            edges_used_ -= j;
            classes_.pop_back();
        }
    }

    int incidence(int v) const {
        return loops_[static_cast<size_t>(v)] + class_count_[static_cast<size_t>(v)];
    }

    // every still-uncovered vertex needs at least one more edge
    bool feasible() const { return edges_used_ + (n_ - covered_) <= m_; }

    void leaf() {
        if (edges_used_ != m_) return;
        for (const auto& c : classes_) {
            if (c.j == 2) {
                bool v_bare = loops_[static_cast<size_t>(c.v)] == 0 &&
                              class_count_[static_cast<size_t>(c.v)] == 1;
                bool w_bare = loops_[static_cast<size_t>(c.w)] == 0 &&
                              class_count_[static_cast<size_t>(c.w)] == 1;
                if (v_bare && w_bare) return;  // isolated double edge
            }
        }
        // label distribution times orientations of the non-loop edges
        u64 weight = (m_fact_ / divisor_) << (m_ - total_loops_);
        std::vector<long long> upoly{1};
        for (const auto& c : classes_) {
            if (static_cast<size_t>(c.j) >= cov_.size())
                throw std::logic_error("patchwork scan: class size beyond cover table");
            const auto& cj = cov_[static_cast<size_t>(c.j)];
            std::vector<long long> next(upoly.size() + cj.size() - 1, 0);
            for (size_t a = 0; a < upoly.size(); ++a) {
                if (upoly[a] == 0) continue;
                for (size_t b = 0; b < cj.size(); ++b) next[a + b] += upoly[a] * cj[b];
            }
            upoly = std::move(next);
        }
        for (size_t t = 0; t < upoly.size(); ++t) {
            if (upoly[t] == 0) continue;
            size_t u_deg = t + static_cast<size_t>(total_loops_);
            acc_[u_deg] += static_cast<u128>(weight) * static_cast<u128>(upoly[t]);
        }
    }

    int n_;
    int m_;
    std::vector<u128>& acc_;
    std::vector<int> loops_;
    std::vector<int> class_count_;
    std::vector<ClassChoice> classes_;
    std::vector<std::vector<long long>> cov_;
    int edges_used_ = 0;
    int total_loops_ = 0;
    int covered_ = 0;
    u64 divisor_ = 1;
    u64 m_fact_ = 1;
};

}  // namespace

int PatchworkPolynomial::z_degree() const {
    for (int d = static_cast<int>(zu.size()) - 1; d >= 0; --d)
        for (const auto& c : zu[static_cast<size_t>(d)])
            if (c != 0) return d;
    return -1;
}

int PatchworkPolynomial::u_degree() const {
    int best = -1;
    for (const auto& row : zu)
        for (int t = static_cast<int>(row.size()) - 1; t >= 0; --t)
            if (row[static_cast<size_t>(t)] != 0) {
                best = std::max(best, t);
                break;
            }
    return best;
}

Rational PatchworkPolynomial::coeff(int z_deg, int u_deg) const {
    if (z_deg < 0 || u_deg < 0) return Rational(0);
    if (static_cast<size_t>(z_deg) >= zu.size()) return Rational(0);
    const auto& row = zu[static_cast<size_t>(z_deg)];
    if (static_cast<size_t>(u_deg) >= row.size()) return Rational(0);
    return row[static_cast<size_t>(u_deg)];
}

bool PatchworkPolynomial::equal_padded(const PatchworkPolynomial& other) const {
    int zd = std::max(z_degree(), other.z_degree());
    int ud = std::max(u_degree(), other.u_degree());
    for (int d = 0; d <= zd; ++d)
        for (int t = 0; t <= ud; ++t)
            if (coeff(d, t) != other.coeff(d, t)) return false;
    return true;
}

std::vector<Rational> PatchworkPolynomial::at_u(const Rational& u_value) const {
    std::vector<Rational> out(zu.size(), Rational(0));
    for (size_t d = 0; d < zu.size(); ++d) {
        Rational pow_u(1);
        for (size_t t = 0; t < zu[d].size(); ++t) {
            out[d] += zu[d][t] * pow_u;
            pow_u *= u_value;
        }
    }
    return out;
}

PatchworkPolynomial patchwork_mul(const PatchworkPolynomial& a, const PatchworkPolynomial& b,
                                  int z_cap, int u_cap) {
    PatchworkPolynomial r;
    r.excess = a.excess + b.excess;
    r.zu.assign(static_cast<size_t>(z_cap) + 1,
                std::vector<Rational>(static_cast<size_t>(u_cap) + 1, Rational(0)));
    for (size_t da = 0; da < a.zu.size() && da <= static_cast<size_t>(z_cap); ++da)
        for (size_t ta = 0; ta < a.zu[da].size() && ta <= static_cast<size_t>(u_cap); ++ta) {
            const Rational& ca = a.zu[da][ta];
            if (ca == 0) continue;
            for (size_t db = 0; db + da <= static_cast<size_t>(z_cap) && db < b.zu.size(); ++db)
                for (size_t tb = 0; tb + ta <= static_cast<size_t>(u_cap) && tb < b.zu[db].size();
                     ++tb) {
                    if (b.zu[db][tb] == 0) continue;
                    r.zu[da + db][ta + tb] += ca * b.zu[db][tb];
                }
        }
    return r;
}

PatchworkPolynomial patchwork_isolated_closed_form(int z_cap, int u_cap) {
    PatchworkPolynomial p;
    p.excess = 0;
    p.zu.assign(static_cast<size_t>(z_cap) + 1,
                std::vector<Rational>(static_cast<size_t>(u_cap) + 1, Rational(0)));
    // e^{u z/2 + u z^2/4} = sum_{a,b} u^{a+b} z^{a+2b} / (2^a 4^b a! b!)
    for (int a = 0; a <= z_cap; ++a)
        for (int b = 0; a + 2 * b <= z_cap; ++b) {
            if (a + b > u_cap) continue;
            Rational c(1);
            c /= Rational(pow_int(Int(2), static_cast<unsigned long>(a)) *
                          pow_int(Int(4), static_cast<unsigned long>(b)) *
                          factorial(static_cast<unsigned long>(a)) *
                          factorial(static_cast<unsigned long>(b)));
            p.zu[static_cast<size_t>(a + 2 * b)][static_cast<size_t>(a + b)] += c;
        }
    return p;
}

PatchworkPolynomial enumerate_patchworks_no_isolated(int excess, int vertex_cap) {
    if (excess < 0) throw std::invalid_argument("patchworks: excess must be >= 0");
    if (excess > caps().max_patchwork_excess)
        throw std::invalid_argument("patchworks: excess beyond the configured cap " +
                                    std::to_string(caps().max_patchwork_excess));
    int default_cap = 4 * excess;
    int n_cap = vertex_cap < 0 ? default_cap : vertex_cap;

    PatchworkPolynomial p;
    p.excess = excess;
    p.zu.assign(static_cast<size_t>(n_cap) + 1, {});
    for (int n = 0; n <= n_cap; ++n) {
        int m = n + excess;
        std::vector<u128> acc(static_cast<size_t>(max_u_degree(m)) + 1, 0);
        NoIsolatedCellScan scan(n, m, acc);
        scan.run();
        bool nonzero = false;
        auto& row = p.zu[static_cast<size_t>(n)];
        row.assign(acc.size(), Rational(0));
        Rational norm(1);
        norm /= Rational(pow_int(Int(2), static_cast<unsigned long>(m)) *
                         factorial(static_cast<unsigned long>(m)) *
                         factorial(static_cast<unsigned long>(n)));
        for (size_t t = 0; t < acc.size(); ++t) {
            if (acc[t] == 0) continue;
            nonzero = true;
            row[t] = Rational(u128_to_int(acc[t])) * norm;
        }
        if (excess >= 1 && n == default_cap && nonzero)
            throw identity_violation("patchworks: boundary vertex cell is not empty");
    }
    return p;
}

namespace {
std::mutex patchwork_mutex;
std::map<int, PatchworkPolynomial> patchwork_cache;
std::map<std::pair<int, int>, ExcessIndexedSeries> core_cache;
}  // namespace

const PatchworkPolynomial& cached_patchwork_star(int excess) {
    {
        std::lock_guard<std::mutex> lock(patchwork_mutex);
        auto it = patchwork_cache.find(excess);
        if (it != patchwork_cache.end()) return it->second;
    }
    PatchworkPolynomial computed = enumerate_patchworks_no_isolated(excess);
    std::lock_guard<std::mutex> lock(patchwork_mutex);
    return patchwork_cache.emplace(excess, std::move(computed)).first->second;
}

void for_each_patchwork(int excess, int n, const std::function<void(const PatchworkStruct&)>& fn) {
    if (excess < 0 || excess > 2)
        throw std::invalid_argument("for_each_patchwork: excess <= 2 only (cost guard)");
    if (n < 0 || n > 4) throw std::invalid_argument("for_each_patchwork: n <= 4 only (cost guard)");
    if (n == 0) {
        if (excess == 0) fn(PatchworkStruct{});  // the empty patchwork
        return;
    }
    int m = n + excess;
    std::vector<std::uint32_t> part_edges;   // edge mask per candidate part
    std::vector<PatchworkPart> candidates;
    std::vector<std::uint32_t> cover_union;  // subset -> union of masks
    for_each_multigraph(n, m, [&](const SmallMultigraph& g) {
        std::uint32_t full = (std::uint32_t(1) << m) - 1;
        // the union must use all n vertices
        std::uint32_t seen = 0;
        for (const auto& e : g.edges) {
            seen |= std::uint32_t(1) << (e.tail - 1);
            seen |= std::uint32_t(1) << (e.head - 1);
        }
        if (__builtin_popcount(seen) != n) return;

        part_edges.clear();
        candidates.clear();
        std::uint32_t in_part = 0;
        for (int i = 0; i < m; ++i) {
            const auto& ei = g.edges[static_cast<size_t>(i)];
            if (ei.tail == ei.head) {
                part_edges.push_back(std::uint32_t(1) << i);
                candidates.push_back(PatchworkPart{{ei.tail}, {i + 1}});
                in_part |= std::uint32_t(1) << i;
            }
        }
        for (int i = 0; i < m; ++i) {
            const auto& ei = g.edges[static_cast<size_t>(i)];
            if (ei.tail == ei.head) continue;
            for (int j = i + 1; j < m; ++j) {
                const auto& ej = g.edges[static_cast<size_t>(j)];
                if (ej.tail == ej.head) continue;
                if (std::min(ei.tail, ei.head) == std::min(ej.tail, ej.head) &&
                    std::max(ei.tail, ei.head) == std::max(ej.tail, ej.head)) {
                    part_edges.push_back((std::uint32_t(1) << i) | (std::uint32_t(1) << j));
                    candidates.push_back(PatchworkPart{
                        {std::min(ei.tail, ei.head), std::max(ei.tail, ei.head)}, {i + 1, j + 1}});
                    in_part |= (std::uint32_t(1) << i) | (std::uint32_t(1) << j);
                }
            }
        }
        if (in_part != full) return;  // some edge can never be covered
        size_t c = part_edges.size();
        if (c > 22) throw std::logic_error("for_each_patchwork: part explosion");
        cover_union.assign(size_t(1) << c, 0);
        PatchworkStruct pw;
        for (std::uint32_t s = 1; s < (std::uint32_t(1) << c); ++s) {
            std::uint32_t low = s & (s - 1);
            cover_union[s] = cover_union[low] | part_edges[static_cast<size_t>(__builtin_ctz(s))];
            if (cover_union[s] != full) continue;
            pw.n = n;
            pw.union_graph = g;
            pw.parts.clear();
            for (std::uint32_t rest = s; rest; rest &= rest - 1)
                pw.parts.push_back(candidates[static_cast<size_t>(__builtin_ctz(rest))]);
            fn(pw);
        }
    });
}

PatchworkPolynomial patchwork_full_enumeration(int excess, int z_cap) {
    if (excess < 0 || excess > 2)
        throw std::invalid_argument("patchwork_full_enumeration: excess <= 2 only");
    if (z_cap < 0 || z_cap > 4)
        throw std::invalid_argument("patchwork_full_enumeration: z_cap <= 4 only");

    PatchworkPolynomial p;
    p.excess = excess;
    p.zu.assign(static_cast<size_t>(z_cap) + 1, {});
    for (auto& row : p.zu)
        row.assign(static_cast<size_t>(max_u_degree(z_cap + excess)) + 1, Rational(0));

    std::vector<Int> acc;
    for (int n = 0; n <= z_cap; ++n) {
        int m = n + excess;
        acc.assign(static_cast<size_t>(max_u_degree(m)) + 1, Int(0));
        for_each_patchwork(excess, n, [&](const PatchworkStruct& pw) {
            acc[static_cast<size_t>(pw.part_count())] += 1;
        });
        Rational norm(1);
        norm /= Rational(pow_int(Int(2), static_cast<unsigned long>(m)) *
                         factorial(static_cast<unsigned long>(m)) *
                         factorial(static_cast<unsigned long>(n)));
        for (size_t t = 0; t < acc.size(); ++t) {
            if (acc[t] == 0) continue;
            p.zu[static_cast<size_t>(n)][t] = Rational(acc[t]) * norm;
        }
    }
    return p;
}

bool patchwork_factorization_check(int excess, int z_cap) {
    PatchworkPolynomial full = patchwork_full_enumeration(excess, z_cap);
    int u_cap = max_u_degree(z_cap + excess);
    PatchworkPolynomial isolated = patchwork_isolated_closed_form(z_cap, u_cap);
    PatchworkPolynomial product =
        patchwork_mul(isolated, cached_patchwork_star(excess), z_cap, u_cap);
    return full.equal_padded(product);
}

namespace {

class Mindeg3Cell {
public:
    Mindeg3Cell(int n, int m, const std::function<void(const SmallMultigraph&)>& sink)
        : n_(n), m_(m), sink_(sink) {
        deg_.assign(static_cast<size_t>(n) + 1, 0);
        deficit_ = 3 * n;
        g_.n = n;
        g_.edges.assign(static_cast<size_t>(m), MultigraphEdge{});
        codes_ = n + n * (n - 1);
        decode_.resize(static_cast<size_t>(codes_));
        for (int v = 0; v < n; ++v) decode_[static_cast<size_t>(v)] = {v + 1, v + 1};
        int c = n;
        for (int a = 1; a <= n; ++a)
            for (int b = 1; b <= n; ++b)
                if (a != b) decode_[static_cast<size_t>(c++)] = {a, b};
    }

    void run() { place(0); }

private:
    void place(int e) {
        if (deficit_ > 2 * (m_ - e)) return;
        if (e == m_) {
            sink_(g_);
            return;
        }
        for (int code = 0; code < codes_; ++code) {
            auto [t, h] = decode_[static_cast<size_t>(code)];
            g_.edges[static_cast<size_t>(e)] = MultigraphEdge{t, h};
            int dt = bump(t, t == h ? 2 : 1);
            int dh = (t == h) ? 0 : bump(h, 1);
            place(e + 1);
            unbump(t, t == h ? 2 : 1, dt);
            if (t != h) unbump(h, 1, dh);
        }
    }

    int bump(int v, int by) {
        int before = deg_[static_cast<size_t>(v)];
        deg_[static_cast<size_t>(v)] += by;
        int gain = std::min(3, before + by) - std::min(3, before);
        deficit_ -= gain;
        return gain;
    }
    void unbump(int v, int by, int gain) {
        deg_[static_cast<size_t>(v)] -= by;
        deficit_ += gain;
    }

    int n_, m_;
    const std::function<void(const SmallMultigraph&)>& sink_;
    std::vector<int> deg_;
    std::vector<std::pair<int, int>> decode_;
    SmallMultigraph g_;
    int codes_ = 0;
    int deficit_ = 0;
};

void scan_mindeg3_impl(int k, int vertex_margin,
                       const std::function<void(const SmallMultigraph&)>& sink) {
    if (k < 1) throw std::invalid_argument("mindeg3: k must be >= 1");
    if (k > 2) throw std::invalid_argument("mindeg3: k <= 2 only (cost guard)");
    for (int n = 1; n <= 2 * k + vertex_margin; ++n)
        for (int m = 1; m <= n + k; ++m) {
            Mindeg3Cell cell(n, m, sink);
            cell.run();
        }
}

}  // namespace

Mindeg3Scan scan_mindeg3(int k, int vertex_margin) {
    Mindeg3Scan out;
    std::map<std::pair<int, int>, Int> cells;
    scan_mindeg3_impl(k, vertex_margin, [&](const SmallMultigraph& g) {
        cells[{g.n, g.m()}] += 1;
        out.max_n = std::max(out.max_n, g.n);
        out.max_m = std::max(out.max_m, g.m());
    });
    for (auto& [key, count] : cells)
        out.cells.push_back(Mindeg3Scan::Cell{key.first, key.second, count});
    return out;
}

std::vector<SmallMultigraph> mindeg3_multigraphs(int k) {
    std::vector<SmallMultigraph> out;
    scan_mindeg3_impl(k, 2, [&](const SmallMultigraph& g) { out.push_back(g); });
    return out;
}

namespace {

/// (e^x - 1 - x)/(x^2/2): coefficient of x^j is 2/(j+2)!.
Rational tail_coeff(int j) {
    Rational c(2);
    c /= Rational(factorial(static_cast<unsigned long>(j) + 2));
    return c;
}

/// P*_excess evaluated at u = -1 and substituted z -> z e^x.
Bivariate pstar_at_minus1_bv(int excess, int x_order, int z_order) {
    const PatchworkPolynomial& star = cached_patchwork_star(excess);
    std::vector<Rational> zpoly = star.at_u(Rational(-1));
    Bivariate out(x_order, z_order);
    for (int d = 0; d < static_cast<int>(zpoly.size()) && d <= z_order; ++d) {
        if (zpoly[static_cast<size_t>(d)] == 0) continue;
        Rational dj(1);  // d^j / j!
        for (int j = 0; j <= x_order; ++j) {
            out.at(d, j) += zpoly[static_cast<size_t>(d)] * dj;
            dj *= d;
            dj /= (j + 1);
        }
    }
    return out;
}

/// e^{-z e^x/2 - z^2 e^{2x}/4}: the isolated-part factor at u = -1, z -> z e^x.
Bivariate isolated_at_minus1_bv(int x_order, int z_order) {
    Bivariate arg(x_order, z_order);
    Rational ej(1);   // 1 / j!
    Rational e2j(1);  // 2^j / j!
    for (int j = 0; j <= x_order; ++j) {
        if (z_order >= 1) arg.at(1, j) = Rational(-1, 2) * ej;
        if (z_order >= 2) arg.at(2, j) = Rational(-1, 4) * e2j;
        ej /= (j + 1);
        e2j *= 2;
        e2j /= (j + 1);
    }
    return exp(arg);
}

}  // namespace

ExcessIndexedSeries core_series(int n_max, int k_max) {
    if (k_max < 0) throw std::invalid_argument("core_series: k_max must be >= 0");
    if (k_max > caps().max_patchwork_excess)
        throw std::invalid_argument("core_series: k_max beyond the patchwork cap " +
                                    std::to_string(caps().max_patchwork_excess));
    int M = 2 * k_max;
    int N = n_max;

    Bivariate denom(M, N);
    denom.at(0, 0) = 1;
    if (N >= 1)
        for (int j = 0; j <= M; ++j) denom.at(1, j) = -tail_coeff(j);
    Bivariate log_denom = log(denom);

    Bivariate isolated = isolated_at_minus1_bv(M, N);
    ExcessIndexedSeries out(0, k_max, N);
    std::vector<Bivariate> denom_pow;  // index d: (1 - z s(x))^{-(d + 1/2)}
    for (int d = 0; d <= k_max; ++d)
        denom_pow.push_back(exp(scaled(log_denom, Rational(-(2 * d + 1), 2))));
    std::vector<Bivariate> patch_bv;  // index ell: P_ell(z e^x, -1)
    for (int ell = 0; ell <= k_max; ++ell)
        patch_bv.push_back(ell == 0 ? isolated
                                    : mul(isolated, pstar_at_minus1_bv(ell, M, N)));

    for (int k = 0; k <= k_max; ++k) {
        Series total(N);
        for (int ell = 0; ell <= k; ++ell) {
            const Bivariate& patch = patch_bv[static_cast<size_t>(ell)];
            Bivariate term = mul(patch, denom_pow[static_cast<size_t>(k - ell)]);
            Series slice = extract(term, 2 * (k - ell));
            total = add(total, slice.scaled(Rational(double_factorial_odd(k - ell))));
        }
        for (int n = 0; n <= N; ++n) {
            Rational c = total[n] * Rational(factorial(static_cast<unsigned long>(n)));
            if (!is_integer(c)) throw identity_violation("core_series: non-integer count");
        }
        out.at(k) = total;
    }
    return out;
}

const ExcessIndexedSeries& cached_core_series(int n_max, int k_max) {
    {
        std::lock_guard<std::mutex> lock(patchwork_mutex);
        auto it = core_cache.find({n_max, k_max});
        if (it != core_cache.end()) return it->second;
    }
    ExcessIndexedSeries computed = core_series(n_max, k_max);
    std::lock_guard<std::mutex> lock(patchwork_mutex);
    return core_cache.emplace(std::make_pair(n_max, k_max), std::move(computed)).first->second;
}

Series sgpos_patchwork_slice(int k, int ell, int N) {
    if (k < 0 || ell < 0 || ell > k)
        throw std::invalid_argument("sgpos_patchwork_slice: need 0 <= ell <= k");
    if (ell > caps().max_patchwork_excess)
        throw std::invalid_argument("sgpos_patchwork_slice: ell beyond patchwork cap");
    int M = 2 * (k - ell);
    Series t = tree_series(N);
    Series t2 = mul(t, t);

    Bivariate denom(M, N);
    denom.at(0, 0) = 1;
    for (int j = 0; j <= M; ++j) {
        Rational sj = tail_coeff(j);
        for (int n = 1; n <= N; ++n) denom.at(n, j) -= t[n] * sj;
    }
    Bivariate powed = pow(denom, Rational(-(2 * (k - ell) + 1), 2));

    // P_0(T e^x, -1) = exp(-T e^x/2 - T^2 e^{2x}/4)
    Bivariate arg(M, N);
    Rational ej(1);   // 1/j!
    Rational e2j(1);  // 2^j/j!
    for (int j = 0; j <= M; ++j) {
        for (int n = 1; n <= N; ++n)
            arg.at(n, j) = Rational(-1, 2) * ej * t[n] + Rational(-1, 4) * e2j * t2[n];
        ej /= (j + 1);
        e2j *= 2;
        e2j /= (j + 1);
    }
    Bivariate patch = exp(arg);

    if (ell >= 1) {
        const PatchworkPolynomial& star = cached_patchwork_star(ell);
        std::vector<Rational> zpoly = star.at_u(Rational(-1));
        Bivariate star_bv(M, N);
        Series t_power = Series::one(N);
        for (int d = 0; d < static_cast<int>(zpoly.size()); ++d) {
            if (zpoly[static_cast<size_t>(d)] != 0) {
                Rational dj(1);  // d^j / j!
                for (int j = 0; j <= M; ++j) {
                    for (int n = 0; n <= N; ++n)
                        star_bv.at(n, j) += zpoly[static_cast<size_t>(d)] * dj * t_power[n];
                    dj *= d;
                    dj /= (j + 1);
                }
            }
            t_power = mul(t_power, t);
        }
        patch = mul(patch, star_bv);
    }

    Bivariate term = mul(patch, powed);
    Series slice = extract(term, M);
    UnicycleSeries u = unicycle_series(N);
    Series result = mul(slice, exp(u.v.scaled(Rational(-1))));
    return result.scaled(Rational(double_factorial_odd(k - ell)));
}

Series sgpos_via_patchworks(int k, int N) {
    if (k < 0) throw std::invalid_argument("sgpos_via_patchworks: k must be >= 0");
    const ExcessIndexedSeries& core = cached_core_series(N, k);
    Series t = tree_series(N);
    UnicycleSeries u = unicycle_series(N);
    Series composed = compose(core.at(k), t);
    Series result = mul(composed, exp(u.v.scaled(Rational(-1))));
    const Series& expected = cached_sgpos_series(std::max(k, 1), N).at(k);
    if (!(result == expected))
        throw identity_violation("sgpos_via_patchworks: patchwork route disagrees with exp route");
    return result;
}

}  // namespace excess
