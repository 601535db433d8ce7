#include "excess/oracle.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <stdexcept>

#include "excess/config.hpp"
#include "excess/parallel.hpp"

namespace excess {

namespace {

// Fixed-size union-find for the per-graph scans.
struct TinyUnionFind {
    std::array<int, 16> parent;

    void reset(int n) {
        for (int i = 0; i < n; ++i) parent[static_cast<size_t>(i)] = i;
    }
    int find(int v) {
        while (parent[static_cast<size_t>(v)] != v) {
            parent[static_cast<size_t>(v)] = parent[static_cast<size_t>(parent[static_cast<size_t>(v)])];
            v = parent[static_cast<size_t>(v)];
        }
        return v;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[static_cast<size_t>(b)] = a;
    }
};

}  // namespace

int min_degree(const SmallMultigraph& g) {
    if (g.n == 0) return std::numeric_limits<int>::max();  // vacuous
    std::vector<int> deg(static_cast<size_t>(g.n) + 1, 0);
    for (const auto& e : g.edges) {
        if (e.tail == e.head) {
            deg[static_cast<size_t>(e.tail)] += 2;
        } else {
            deg[static_cast<size_t>(e.tail)] += 1;
            deg[static_cast<size_t>(e.head)] += 1;
        }
    }
    int md = deg[1];
    for (int v = 2; v <= g.n; ++v) md = std::min(md, deg[static_cast<size_t>(v)]);
    return md;
}

bool is_connected(const SmallMultigraph& g) {
    if (g.n <= 1) return true;
    TinyUnionFind uf;
    uf.reset(g.n + 1);
    for (const auto& e : g.edges) uf.unite(e.tail, e.head);
    int root = uf.find(1);
    for (int v = 2; v <= g.n; ++v)
        if (uf.find(v) != root) return false;
    return true;
}

bool has_loop(const SmallMultigraph& g) {
    for (const auto& e : g.edges)
        if (e.tail == e.head) return true;
    return false;
}

bool has_double_edge(const SmallMultigraph& g) {
    for (size_t i = 0; i < g.edges.size(); ++i) {
        if (g.edges[i].tail == g.edges[i].head) continue;
        int a = std::min(g.edges[i].tail, g.edges[i].head);
        int b = std::max(g.edges[i].tail, g.edges[i].head);
        for (size_t j = i + 1; j < g.edges.size(); ++j) {
            if (g.edges[j].tail == g.edges[j].head) continue;
            int c = std::min(g.edges[j].tail, g.edges[j].head);
            int d = std::max(g.edges[j].tail, g.edges[j].head);
            if (a == c && b == d) return true;
        }
    }
    return false;
}

bool all_components_positive_excess(const SmallMultigraph& g) {
    if (g.n == 0) return true;
    TinyUnionFind uf;
    uf.reset(g.n + 1);
    for (const auto& e : g.edges) uf.unite(e.tail, e.head);
    std::vector<int> vertices(static_cast<size_t>(g.n) + 1, 0);
    std::vector<int> edges(static_cast<size_t>(g.n) + 1, 0);
    for (int v = 1; v <= g.n; ++v) vertices[static_cast<size_t>(uf.find(v))] += 1;
    for (const auto& e : g.edges) edges[static_cast<size_t>(uf.find(e.tail))] += 1;
    for (int v = 1; v <= g.n; ++v)
        if (uf.find(v) == v && edges[static_cast<size_t>(v)] <= vertices[static_cast<size_t>(v)])
            return false;
    return true;
}

const std::vector<Int>& GraphCountTable::row(GraphPredicate p) const {
    for (size_t i = 0; i < predicates.size(); ++i)
        if (predicates[i] == p) return counts[i];
    throw std::invalid_argument("GraphCountTable: predicate not tallied");
}

Int GraphCountTable::total(GraphPredicate p) const {
    Int t(0);
    for (const Int& v : row(p)) t += v;
    return t;
}

GraphCountTable enum_graphs(int n, std::vector<GraphPredicate> predicates, bool allow_large,
                            int threads) {
    if (n < 1 || n > caps().max_oracle_n)
        throw std::invalid_argument("enum_graphs: n outside oracle range");
    if (n == 8 && !allow_large)
        throw std::invalid_argument("enum_graphs: n = 8 requires the opt-in flag");

    int pairs = n * (n - 1) / 2;
    std::array<std::pair<int, int>, 28> edge_of_bit{};
    int bit = 0;
    for (int a = 1; a <= n; ++a)
        for (int b = a + 1; b <= n; ++b) edge_of_bit[static_cast<size_t>(bit++)] = {a, b};

    GraphCountTable table;
    table.n = n;
    table.predicates = std::move(predicates);
    const std::vector<GraphPredicate>& preds = table.predicates;
    size_t np = preds.size();
    using Tally = std::vector<std::vector<std::uint64_t>>;  // [pred][m]
    std::function<Tally(std::uint64_t, std::uint64_t)> work =
        [&](std::uint64_t lo, std::uint64_t hi) {
            Tally tally(np, std::vector<std::uint64_t>(static_cast<size_t>(pairs) + 1, 0));
            TinyUnionFind uf;
            std::array<int, 16> deg{};
            std::array<int, 16> comp_vertices{};
            std::array<int, 16> comp_edges{};
            for (std::uint64_t mask = lo; mask < hi; ++mask) {
                int m = __builtin_popcountll(mask);
                uf.reset(n + 1);
                deg.fill(0);
                std::uint64_t rest = mask;
                while (rest) {
                    int b = __builtin_ctzll(rest);
                    rest &= rest - 1;
                    auto [va, vb] = edge_of_bit[static_cast<size_t>(b)];
                    uf.unite(va, vb);
                    deg[static_cast<size_t>(va)]++;
                    deg[static_cast<size_t>(vb)]++;
                }
                comp_vertices.fill(0);
                comp_edges.fill(0);
                int roots = 0;
                for (int v = 1; v <= n; ++v) {
                    int r = uf.find(v);
                    comp_vertices[static_cast<size_t>(r)]++;
                    if (r == v) roots++;
                }
                rest = mask;
                while (rest) {
                    int b = __builtin_ctzll(rest);
                    rest &= rest - 1;
                    comp_edges[static_cast<size_t>(uf.find(edge_of_bit[static_cast<size_t>(b)].first))]++;
                }
                bool connected = roots == 1;
                bool mindeg2 = true;
                for (int v = 1; v <= n; ++v)
                    if (deg[static_cast<size_t>(v)] < 2) mindeg2 = false;
                bool pos_excess = true;
                for (int v = 1; v <= n; ++v)
                    if (uf.find(v) == v &&
                        comp_edges[static_cast<size_t>(v)] <= comp_vertices[static_cast<size_t>(v)])
                        pos_excess = false;
                for (size_t p = 0; p < np; ++p) {
                    bool hit = false;
                    switch (preds[p]) {
                        case GraphPredicate::All: hit = true; break;
                        case GraphPredicate::Connected: hit = connected; break;
                        case GraphPredicate::MinDegree2: hit = mindeg2; break;
                        case GraphPredicate::PositiveExcessComponents: hit = pos_excess; break;
                        case GraphPredicate::Unicyclic: hit = connected && m == n; break;
                    }
                    if (hit) tally[p][static_cast<size_t>(m)]++;
                }
            }
            return tally;
        };

    table.counts.assign(np, std::vector<Int>(static_cast<size_t>(pairs) + 1, Int(0)));
    std::function<void(Tally&&)> merge = [&](Tally&& t) {
        for (size_t p = 0; p < np; ++p)
            for (size_t m = 0; m <= static_cast<size_t>(pairs); ++m)
                table.counts[p][m] += static_cast<unsigned long>(t[p][m]);
    };
    chunked_scan<Tally>(0, std::uint64_t(1) << pairs, threads, work, merge);
    return table;
}

void for_each_multigraph(int n, int m, const std::function<void(const SmallMultigraph&)>& fn) {
    if (n < 1) throw std::invalid_argument("for_each_multigraph: n must be >= 1");
    // edge codes: 0..n-1 are loops at v = code+1, then ordered pairs
    int loop_codes = n;
    int pair_codes = n * (n - 1);
    int codes = loop_codes + pair_codes;
    std::vector<std::pair<int, int>> decode(static_cast<size_t>(codes));
    for (int v = 0; v < n; ++v) decode[static_cast<size_t>(v)] = {v + 1, v + 1};
    int c = loop_codes;
    for (int a = 1; a <= n; ++a)
        for (int b = 1; b <= n; ++b)
            if (a != b) decode[static_cast<size_t>(c++)] = {a, b};

    SmallMultigraph g;
    g.n = n;
    g.edges.assign(static_cast<size_t>(m), MultigraphEdge{});
    std::vector<int> code(static_cast<size_t>(m), 0);
    // odometer over code sequences
    for (;;) {
        for (int e = 0; e < m; ++e) {
            auto [t, h] = decode[static_cast<size_t>(code[static_cast<size_t>(e)])];
            g.edges[static_cast<size_t>(e)] = MultigraphEdge{t, h};
        }
        fn(g);
        int pos = m - 1;
        while (pos >= 0 && code[static_cast<size_t>(pos)] == codes - 1) {
            code[static_cast<size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
        code[static_cast<size_t>(pos)]++;
    }
}

MultigraphTally enum_multigraphs(int n, int m) {
    if (n < 1 || n > 4 || m < 0 || m > 5)
        throw std::invalid_argument("enum_multigraphs: bounds exceeded (n <= 4, m <= 5)");
    MultigraphTally tally;
    tally.n = n;
    tally.m = m;
    Int all(0), loopless(0), loopless_conn(0), mindeg2(0), connected(0), posex(0);
    for_each_multigraph(n, m, [&](const SmallMultigraph& g) {
        all += 1;
        bool simple = !has_loop(g) && !has_double_edge(g);
        bool conn = is_connected(g);
        if (simple) loopless += 1;
        if (simple && conn) loopless_conn += 1;
        if (min_degree(g) >= 2) mindeg2 += 1;
        if (conn) connected += 1;
        if (all_components_positive_excess(g)) posex += 1;
    });
    Rational weight(1);
    weight /= Rational(pow_int(Int(2), static_cast<unsigned long>(m)) *
                       factorial(static_cast<unsigned long>(m)) *
                       factorial(static_cast<unsigned long>(n)));
    tally.all = Rational(all) * weight;
    tally.loopless_simple = Rational(loopless) * weight;
    tally.loopless_simple_connected = Rational(loopless_conn) * weight;
    tally.min_degree2 = Rational(mindeg2) * weight;
    tally.connected = Rational(connected) * weight;
    tally.positive_excess_components = Rational(posex) * weight;
    return tally;
}

}  // namespace excess
